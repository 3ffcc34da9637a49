// oracle.cpp — Closed-form pure-dephasing model and its comparison against the resonance theory.

#include "spinbath/oracle.hpp"

#include <cmath>

#include "spinbath/dynamics.hpp"
#include "spinbath/rates.hpp"
#include "spinbath/spectral.hpp"

namespace spinbath {

namespace {

// Branch-free integer power by binary exponentiation (the value of z^n does not
// depend on any choice of logarithm branch).
cplx cpow_int(cplx z, int n) {
    cplx acc(1.0, 0.0);
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

// The two-species ensemble realizing the oracle configuration inside the resonance
// theory: the tagged spin plus N-1 background spins with diagonal state (p, 1-p).
EnsembleConfig oracle_ensemble(const OracleConfig& cfg) {
    EnsembleConfig ens;
    ens.beta = cfg.beta;
    ens.f_c = cfg.f_c;

    SpinParams tagged;
    tagged.omega = cfg.omega;
    tagged.varkappa = cfg.varkappa_c;
    tagged.nu = cfg.nu_l;
    tagged.f_loc = cfg.f_l;
    tagged.rho0 = cfg.rho0_j;
    ens.species.push_back(Species{"tagged", 1, tagged});

    if (cfg.N > 1) {
        SpinParams background = tagged;
        background.rho0 = density_from_bloch(0.0, 0.0, 2.0 * cfg.p - 1.0);
        ens.species.push_back(Species{"background", cfg.N - 1, background});
    }
    return ens;
}

} // namespace

void validate_oracle(const OracleConfig& cfg) {
    if (!(cfg.beta > 0.0)) throw std::invalid_argument("oracle: beta must be > 0");
    if (cfg.N < 1) throw std::invalid_argument("oracle: N must be >= 1");
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw std::invalid_argument("oracle: p must lie in [0, 1]");
    if (!(cfg.omega > 0.0)) throw std::invalid_argument("oracle: omega must be > 0");
    validate(cfg.f_c);
    validate(cfg.f_l);
    validate_density(cfg.rho0_j, "oracle rho0_j");
}

cplx exact_offdiagonal(const OracleConfig& cfg, double t) {
    validate_oracle(cfg);
    const double k2 = cfg.varkappa_c * cfg.varkappa_c;
    const double n2 = cfg.nu_l * cfg.nu_l;
    double damping = 0.0;
    if (n2 != 0.0) damping += n2 * decoherence_gamma(cfg.f_l, cfg.beta, t);
    if (k2 != 0.0) damping += k2 * decoherence_gamma(cfg.f_c, cfg.beta, t);
    cplx product(1.0, 0.0);
    if (cfg.N > 1) {
        const double phi = (k2 != 0.0) ? k2 * lamb_shift_s(cfg.f_c, t) : 0.0;
        const cplx base = cfg.p * std::exp(cplx(0.0, -phi)) + (1.0 - cfg.p) * std::exp(cplx(0.0, phi));
        product = cpow_int(base, cfg.N - 1);
    }
    return cfg.rho0_j.m21 * std::exp(cplx(-damping, -cfg.omega * t)) * product;
}

cplx exact_offdiagonal_enumerated(const OracleConfig& cfg, double t) {
    validate_oracle(cfg);
    if (cfg.N > 12)
        throw std::invalid_argument("exact_offdiagonal_enumerated: N must be <= 12");
    const double k2 = cfg.varkappa_c * cfg.varkappa_c;
    const double n2 = cfg.nu_l * cfg.nu_l;
    double damping = 0.0;
    if (n2 != 0.0) damping += n2 * decoherence_gamma(cfg.f_l, cfg.beta, t);
    if (k2 != 0.0) damping += k2 * decoherence_gamma(cfg.f_c, cfg.beta, t);
    const double phi = (k2 != 0.0 && cfg.N > 1) ? k2 * lamb_shift_s(cfg.f_c, t) : 0.0;

    // Sum over the 2^{N-1} sharp configurations of the background spins.
    cplx sum(0.0, 0.0);
    const int n_bg = cfg.N - 1;
    const std::size_t count = std::size_t{1} << n_bg;
    for (std::size_t mask = 0; mask < count; ++mask) {
        double weight = 1.0;
        int ups = 0;
        for (int l = 0; l < n_bg; ++l) {
            if ((mask >> l) & 1u) {
                weight *= cfg.p;
                ++ups;
            } else {
                weight *= 1.0 - cfg.p;
            }
        }
        // each up spin contributes e^{-i phi}, each down spin e^{+i phi}
        sum += weight * std::exp(cplx(0.0, phi * (n_bg - 2 * ups)));
    }
    return cfg.rho0_j.m21 * std::exp(cplx(-damping, -cfg.omega * t)) * sum;
}

cplx asymptotic_product_factor(const OracleConfig& cfg, double t) {
    validate_oracle(cfg);
    if (cfg.N == 1) return cplx(1.0, 0.0);
    const double a = -0.5 * cfg.varkappa_c * cfg.varkappa_c * bath_coulomb_integral(cfg.f_c);
    const cplx base = cfg.p * std::exp(cplx(0.0, -a * t)) + (1.0 - cfg.p) * std::exp(cplx(0.0, a * t));
    const double ab = std::abs(base);
    if (ab == 0.0) return cplx(0.0, 0.0);
    return std::polar(std::exp((cfg.N - 1) * std::log(ab)), (cfg.N - 1) * std::arg(base));
}

cplx substituted_exact_offdiagonal(const OracleConfig& cfg, double t) {
    validate_oracle(cfg);
    const double k2 = cfg.varkappa_c * cfg.varkappa_c;
    const double n2 = cfg.nu_l * cfg.nu_l;
    const double rate =
        0.5 * (n2 * spectral_density_slope_zero(cfg.f_l) + k2 * spectral_density_slope_zero(cfg.f_c)) / cfg.beta;
    return cfg.rho0_j.m21 * std::exp(cplx(-rate * t, -cfg.omega * t)) * asymptotic_product_factor(cfg, t);
}

cplx resonance_offdiagonal(const OracleConfig& cfg, double t) {
    validate_oracle(cfg);
    const EnsembleConfig ens = oracle_ensemble(cfg);
    std::vector<RateSet> rates;
    rates.reserve(ens.species.size());
    for (const auto& sp : ens.species) rates.push_back(compute_rateset(sp.spin, ens));
    Mat2 selector;
    selector.m12 = cplx(1.0, 0.0); // picks out the 21 entry with the negative-frequency phase
    return evolve_observable(selector, 0, ens, rates, t);
}

OracleComparison compare_resonance_vs_exact(const OracleConfig& cfg, const std::vector<double>& times) {
    validate_oracle(cfg);
    const EnsembleConfig ens = oracle_ensemble(cfg);
    std::vector<RateSet> rates;
    rates.reserve(ens.species.size());
    for (const auto& sp : ens.species) rates.push_back(compute_rateset(sp.spin, ens));
    Mat2 selector;
    selector.m12 = cplx(1.0, 0.0);

    OracleComparison cmp;
    cmp.times = times;
    cmp.exact.reserve(times.size());
    cmp.resonance.reserve(times.size());
    cmp.deviation.reserve(times.size());
    for (double t : times) {
        const cplx ex = exact_offdiagonal(cfg, t);
        const cplx res = evolve_observable(selector, 0, ens, rates, t);
        const cplx sub = substituted_exact_offdiagonal(cfg, t);
        cmp.exact.push_back(ex);
        cmp.resonance.push_back(res);
        cmp.deviation.push_back(std::abs(ex - res));
        cmp.max_substituted_deviation = std::max(cmp.max_substituted_deviation, std::abs(sub - res));
        cmp.max_unsubstituted_deviation = std::max(cmp.max_unsubstituted_deviation, cmp.deviation.back());
    }
    return cmp;
}

} // namespace spinbath
