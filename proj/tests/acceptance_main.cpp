// acceptance_main.cpp — Module-level acceptance gate: one pass/fail line per criterion.
//
// Each criterion is self-contained, uses fixed seeds, and pins its tolerance inline.
// The process exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spinbath/dynamics.hpp"
#include "spinbath/lso.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/rates.hpp"
#include "spinbath/scenario.hpp"
#include "spinbath/spectral.hpp"
#include "test_helpers.hpp"

using namespace spinbath;
using testutil::Couplings;
using testutil::make_ensemble;
using testutil::make_spin;
using testutil::rates_per_species;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& why) { throw std::runtime_error(why); }

void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
}

double rel(const cplx& got, const cplx& want) {
    const double scale = std::abs(want) > 0.0 ? std::abs(want) : 1.0;
    return std::abs(got - want) / scale;
}

double rel(double got, double want) { return rel(cplx(got, 0.0), cplx(want, 0.0)); }

cplx pairing(const cplx (&xi)[2], const cplx (&xi_tilde)[2]) {
    return std::conj(xi[0]) * xi_tilde[0] + std::conj(xi[1]) * xi_tilde[1];
}

double dual_basis_residual(const BlockEigensystem& sys) {
    double worst = std::abs(pairing(sys.xi_plus, sys.xi_tilde_plus) - 1.0);
    worst = std::max(worst, std::abs(pairing(sys.xi_minus, sys.xi_tilde_minus) - 1.0));
    worst = std::max(worst, std::abs(pairing(sys.xi_plus, sys.xi_tilde_minus)));
    worst = std::max(worst, std::abs(pairing(sys.xi_minus, sys.xi_tilde_plus)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const cplx m = sys.xi_plus[i] * std::conj(sys.xi_tilde_plus[j]) +
                           sys.xi_minus[i] * std::conj(sys.xi_tilde_minus[j]);
            worst = std::max(worst, std::abs(m - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

EnergyLabel one_flip(int n, int where, int delta) {
    EnergyLabel lab;
    lab.deltas.assign(static_cast<std::size_t>(n), 0);
    if (where >= 0) lab.deltas[static_cast<std::size_t>(where)] = delta;
    return lab;
}

Mat2 selector_minus() {
    Mat2 a;
    a.m12 = cplx(1.0, 0.0);
    return a;
}

// Random spin draw shared by criteria 1 and 2.
struct Draw {
    SpinParams spin;
    EnsembleConfig ens;
};

Draw random_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coupling(1e-3, 1e-1);
    std::uniform_real_distribution<double> freq(0.5, 2.0);
    std::uniform_real_distribution<double> inv_temp(0.1, 10.0);
    Couplings cp{coupling(rng), coupling(rng), coupling(rng), coupling(rng)};
    const SpinParams spin = make_spin(freq(rng), cp);
    return Draw{spin, make_ensemble(2, spin, inv_temp(rng))};
}

// Tagged spin plus an equally-populated background, conserving couplings only.
EnsembleConfig dephasing_ensemble(int n, double p, double vk) {
    SpinParams tagged = make_spin(1.0, Couplings{0.0, vk, 0.0, 0.05}, density_from_bloch(0.6, 0.0, 0.0));
    tagged.f_loc = FormFactor{0, 1, 1.0};
    EnsembleConfig ens = make_ensemble(1, tagged, 1.0);
    ens.f_c = FormFactor{0, 1, 1.0};
    SpinParams bg = make_spin(1.0, Couplings{0.0, vk, 0.0, 0.0}, density_from_bloch(0.0, 0.0, 2.0 * p - 1.0));
    bg.f_loc = FormFactor{0, 1, 1.0};
    ens.species.push_back(Species{"B", n - 1, bg});
    return ens;
}

OracleConfig dephasing_oracle(int n, double p, double vk) {
    OracleConfig cfg;
    cfg.beta = 1.0;
    cfg.N = n;
    cfg.p = p;
    cfg.varkappa_c = vk;
    cfg.nu_l = 0.05;
    cfg.f_c = FormFactor{0, 1, 1.0};
    cfg.f_l = FormFactor{0, 1, 1.0};
    cfg.rho0_j = density_from_bloch(0.6, 0.0, 0.0);
    cfg.omega = 1.0;
    return cfg;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        num += (x[k] - mx) * (y[k] - my);
        den += (x[k] - mx) * (x[k] - mx);
    }
    return num / den;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    require(in.good(), "cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const Couplings kRefCouplings{0.07, 0.05, 0.03, 0.02};
const Couplings kAltCouplings{0.04, 0.08, 0.01, 0.06};

// ---------------------------------------------------------------------------
// Criterion bodies. Each returns a detail string or throws with a reason.
// ---------------------------------------------------------------------------

std::string criterion_rate_identities() {
    std::mt19937_64 rng(0xacce97edULL);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Draw d = random_draw(rng);
        const RateSet rs = compute_rateset(d.spin, d.ens);
        const double big_b = rs.b * (1.0 + rs.c);

        worst = std::max(worst, rel(rs.gamma_relax, big_b));
        worst = std::max(worst, rel(rs.alpha_plus * rs.alpha_minus, cplx(-1.0 / rs.c, 0.0)));
        // Weight-coefficient relation in cross-multiplied form: the quotient form
        // 1 - (1 + c*am)/(1 + c*am^2) loses ~|log10 zeta| digits once c is tiny and
        // zeta ~ |c*am|; the factors below stay O(1) in every draw regime.
        const cplx am = rs.alpha_minus;
        const cplx zeta_lhs = (1.0 - zeta_coefficient(rs)) * (1.0 + rs.c * am * am);
        worst = std::max(worst, rel(zeta_lhs, 1.0 + rs.c * am));
        worst = std::max(worst, rel(rs.z_plus + rs.z_minus, cplx(0.0, big_b)));
        const cplx product(-rs.a * rs.a, rs.a * rs.b * (1.0 - rs.c));
        worst = std::max(worst, rel(rs.z_plus * rs.z_minus, product));
    }
    require(worst <= 1e-10, "max relative identity residual " + fmt(worst) + " exceeds 1e-10");
    return "max relative residual " + fmt(worst) + " over 1000 draws x 5 identities";
}

std::string criterion_root_stability() {
    std::mt19937_64 rng(0xdecade5ULL);
    double min_im = 1e300;
    for (int k = 0; k < 1000; ++k) {
        const Draw d = random_draw(rng);
        const RateSet rs = compute_rateset(d.spin, d.ens);
        min_im = std::min({min_im, rs.z_plus.imag(), rs.z_minus.imag()});
    }
    require(min_im > 0.0, "a generic draw produced a non-positive decay component");

    std::uniform_real_distribution<double> coupling(1e-3, 1e-1);
    std::uniform_real_distribution<double> freq(0.5, 2.0);
    for (int k = 0; k < 50; ++k) {
        // conserving-only spin: both roots must sit exactly on the real axis
        const SpinParams spin =
            make_spin(freq(rng), Couplings{0.0, coupling(rng), 0.0, 0.0});
        const EnsembleConfig ens = make_ensemble(2, spin, 1.7);
        const RateSet rs = compute_rateset(spin, ens);
        require(rs.z_plus == cplx(-rs.a, 0.0) && rs.z_minus == cplx(rs.a, 0.0),
                "conserving-only roots moved off +/-|shift|");
    }
    for (int k = 0; k < 50; ++k) {
        // exchange-only spin: the slow root must sit exactly at the origin
        const SpinParams spin =
            make_spin(freq(rng), Couplings{coupling(rng), 0.0, coupling(rng), 0.0});
        const EnsembleConfig ens = make_ensemble(2, spin, 1.7);
        const RateSet rs = compute_rateset(spin, ens);
        require(rs.z_minus == cplx(0.0, 0.0), "exchange-only slow root moved off the origin");
        require(rs.z_plus.imag() > 0.0, "exchange-only fast root lost its decay component");
    }
    return "min decay component " + fmt(min_im) + " across 1000 draws; boundary cases exactly on axis";
}

std::string criterion_level_shift_blocks() {
    const EnsembleConfig ens = make_ensemble(4, make_spin(1.3, kRefCouplings), 2.0);
    const RateSet rs = compute_rateset(ens.species[0].spin, ens);
    const double big_b = rs.b * (1.0 + rs.c);
    double worst = 0.0, worst_basis = 0.0;

    const LevelShiftOperator down = build_level_shift(one_flip(4, 0, 2), ens);
    require(down.blocks.size() == 3, "downward one-flip label must leave 3 unflipped blocks");
    worst = std::max(worst, rel(down.scalar_part.real(), rs.x));
    worst = std::max(worst, rel(down.scalar_part.imag(), rs.y));
    for (const auto& blk : down.blocks) {
        const BlockEigensystem sys = block_eigensystem(blk.matrix, blk.c);
        worst = std::max(worst, rel(sys.z_plus, rs.z_plus));
        worst = std::max(worst, rel(sys.z_minus, rs.z_minus));
        worst = std::max(worst, rel(sys.xi_plus[1], rs.alpha_plus));
        worst = std::max(worst, rel(sys.xi_minus[1], rs.alpha_minus));
        worst_basis = std::max(worst_basis, dual_basis_residual(sys));
    }

    // upward flip: the reflected operator, negated-conjugate roots, conjugate slopes
    const LevelShiftOperator up = build_level_shift(one_flip(4, 0, -2), ens);
    worst = std::max(worst, rel(up.scalar_part.real(), -rs.x));
    worst = std::max(worst, rel(up.scalar_part.imag(), rs.y));
    for (const auto& blk : up.blocks) {
        const BlockEigensystem sys = block_eigensystem(blk.matrix, blk.c);
        worst = std::max(worst, rel(sys.z_plus, -std::conj(rs.z_plus)));
        worst = std::max(worst, rel(sys.z_minus, -std::conj(rs.z_minus)));
        worst = std::max(worst, rel(sys.xi_plus[1], std::conj(rs.alpha_plus)));
        worst = std::max(worst, rel(sys.xi_minus[1], std::conj(rs.alpha_minus)));
        worst_basis = std::max(worst_basis, dual_basis_residual(sys));
    }

    // zero label: conserving weight cancels, closed projector forms take over
    const LevelShiftOperator zero = build_level_shift(one_flip(4, -1, 0), ens);
    require(zero.e0 == 0.0 && zero.scalar_part == cplx(0.0, 0.0),
            "zero label must have no scalar part");
    require(zero.blocks.size() == 4, "zero label must keep every spin unflipped");
    for (const auto& blk : zero.blocks) {
        require(blk.r == 0.0, "zero label blocks must have no conserving off-balance");
        const BlockEigensystem sys = block_eigensystem(blk.matrix, blk.c);
        require(std::abs(sys.z_plus) <= 1e-12 * big_b, "zero-label fast root must vanish");
        worst = std::max(worst, rel(sys.z_minus, cplx(0.0, big_b)));
        worst = std::max(worst, rel(sys.xi_plus[1], cplx(1.0, 0.0)));
        worst = std::max(worst, rel(sys.xi_minus[1], cplx(-1.0 / rs.c, 0.0)));
        worst_basis = std::max(worst_basis, dual_basis_residual(sys));
    }

    require(worst <= 1e-10, "closed-form residual " + fmt(worst) + " exceeds 1e-10");
    require(worst_basis <= 1e-12, "dual-basis residual " + fmt(worst_basis) + " exceeds 1e-12");
    return "closed-form residual " + fmt(worst) + ", dual-basis residual " + fmt(worst_basis);
}

std::string criterion_inert_collective_factor() {
    double worst = 0.0;
    for (int n : {2, 16, 64}) {
        const EnsembleConfig ens = make_ensemble(n, make_spin(1.3, Couplings{0.07, 0.0, 0.03, 0.02}), 2.0);
        const std::vector<RateSet> rates = rates_per_species(ens);
        for (double t : linear_grid(100.0, 21)) {
            const ComplexLog c = collective_factor(0, ens, rates, t);
            worst = std::max(worst, std::abs(c.value() - cplx(1.0, 0.0)));
        }
    }
    require(worst <= 1e-10, "max |C - 1| = " + fmt(worst) + " exceeds 1e-10");
    return "max |C - 1| = " + fmt(worst) + " for N in {2, 16, 64}";
}

std::string criterion_solvable_model() {
    const OracleConfig ref = dephasing_oracle(5, 0.3, 0.08);
    const OracleComparison cmp = compare_resonance_vs_exact(ref, linear_grid(100.0, 51));
    require(cmp.max_substituted_deviation < 1e-8,
            "substituted deviation " + fmt(cmp.max_substituted_deviation) + " exceeds 1e-8");

    // recurrence structure through both routes: closed-form power and dynamics product
    double worst_beat = 0.0;
    for (int n : {2, 11})
        for (double p : {0.3, 0.5}) {
            const double vk = 0.08;
            const OracleConfig cfg = dephasing_oracle(n, p, vk);
            const EnsembleConfig ens = dephasing_ensemble(n, p, vk);
            const std::vector<RateSet> rates = rates_per_species(ens);
            const double mod_a = 0.5 * vk * vk * bath_coulomb_integral(cfg.f_c);
            const double t_beat = 3.14159265358979323846 / mod_a;
            const double collapsed = std::pow(std::abs(1.0 - 2.0 * p), n - 1);

            const double apf_beat = std::abs(asymptotic_product_factor(cfg, t_beat));
            const double c_beat = std::exp(collective_factor(0, ens, rates, t_beat).log_abs);
            worst_beat = std::max(worst_beat, std::abs(apf_beat - 1.0));
            worst_beat = std::max(worst_beat, std::abs(c_beat - 1.0));

            const double apf_half = std::abs(asymptotic_product_factor(cfg, 0.5 * t_beat));
            const double c_half = std::exp(collective_factor(0, ens, rates, 0.5 * t_beat).log_abs);
            worst_beat = std::max(worst_beat, std::abs(apf_half - collapsed));
            worst_beat = std::max(worst_beat, std::abs(c_half - collapsed));
        }
    require(worst_beat <= 1e-8, "revival residual " + fmt(worst_beat) + " exceeds 1e-8");
    return "substituted deviation " + fmt(cmp.max_substituted_deviation) + ", revival residual " +
           fmt(worst_beat);
}

std::string criterion_long_time_slopes() {
    const double beta = 2.0, t = 1e3, vk = 0.1;
    double worst = 0.0;
    for (const FormFactor& h : {FormFactor{0, 1, 1.0}, FormFactor{0, 2, 1.2}}) {
        const double gamma_slope = decoherence_gamma(h, beta, t) / t;
        const double gamma_want = spectral_density_slope_zero(h) / (2.0 * beta);
        worst = std::max(worst, rel(gamma_slope, gamma_want));

        const double drift_slope = vk * vk * lamb_shift_s(h, t) / t;
        const double drift_want = -0.5 * vk * vk * bath_coulomb_integral(h);
        worst = std::max(worst, rel(drift_slope, drift_want));
    }
    require(worst <= 0.01, "relative slope margin " + fmt(worst) + " exceeds 1%");
    return "worst relative slope margin " + fmt(worst) + " at t = 1e3";
}

std::string criterion_bloch_consistency() {
    const EnsembleConfig ens = make_ensemble(4, make_spin(1.3, kRefCouplings), 2.0);
    const std::vector<RateSet> rates = rates_per_species(ens);
    const RateSet& rs = rates[0];
    const double sz_eq_total = 4.0 * 0.5 * std::tanh(0.5 * ens.beta * 1.3);
    const double h = 1e-3;
    double worst = 0.0;

    for (double t0 : {0.5, 2.0, 10.0}) {
        const std::vector<double> pts{t0 - h, t0, t0 + h};
        const Trajectory traj = magnetization_trajectory(ens, rates, pts);
        const BlochCoefficients bloch = bloch_coefficients(ens, rates, pts);
        require(bloch.per_species[0].defined[1] == 1, "Bloch coefficients undefined at a probe point");

        const cplx sm_lo = traj.per_species[0].sminus[0];
        const cplx sm_hi = traj.per_species[0].sminus[2];
        const cplx ld_fd = std::log(sm_hi / sm_lo) / (2.0 * h);
        const cplx ld_model(-bloch.per_species[0].gamma_t[1], bloch.per_species[0].b_t[1]);
        worst = std::max(worst, std::abs(ld_fd - ld_model) / std::abs(ld_model));

        const double dz_fd = (traj.sz[2] - traj.sz[0]) / (2.0 * h);
        const double dz_model = -rs.gamma_relax * (traj.sz[1] - sz_eq_total);
        worst = std::max(worst, std::abs(dz_fd - dz_model) / std::abs(dz_model));
    }
    require(worst <= 1e-6, "derivative mismatch " + fmt(worst) + " exceeds 1e-6");
    return "worst relative derivative mismatch " + fmt(worst) + " (centered differences, h = 1e-3)";
}

std::string criterion_dephasing_envelope() {
    double worst = -1e300;
    for (int n : {4, 16}) {
        const EnsembleConfig ens = make_ensemble(n, make_spin(1.3, kRefCouplings), 2.0);
        const std::vector<RateSet> rates = rates_per_species(ens);
        const DephasingSummary sum = dephasing_summary(rates, {ens.species[0].spin.rho0}, n);
        const std::vector<double> times = linear_grid(100.0, 101);
        const std::vector<ComplexLog> c = collective_factor_grid(0, ens, rates, times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double bound = (n - 1) * (sum.c_prime - sum.gamma * times[k]);
            worst = std::max(worst, c[k].log_abs - bound);
        }
    }
    require(worst <= 1e-9, "envelope violated by " + fmt(worst) + " in log magnitude");
    return "max log-magnitude excess over the envelope " + fmt(worst) + " (<= 0 means strictly inside)";
}

std::string criterion_settled_rates() {
    // single species: the log-derivative limit and the settled transverse rate
    const EnsembleConfig ens = make_ensemble(4, make_spin(1.3, kRefCouplings), 2.0);
    const std::vector<RateSet> rates = rates_per_species(ens);
    const RateSet& rs = rates[0];
    const DFactor d = make_d_factor(rs, ens.species[0].spin.rho0);
    const double gap = rs.z_plus.imag() - rs.z_minus.imag();
    const double t_star = std::log(1e8) / gap;
    const double ld_res = std::abs(d_log_derivative(d, t_star) - cplx(0.0, 1.0) * rs.z_minus);
    require(ld_res < 1e-6, "log-derivative residual " + fmt(ld_res) + " exceeds 1e-6");

    double worst = 0.0;
    {
        const std::vector<double> gdi = asymptotic_dephasing_multispecies({{4, rs}});
        const double t_late = std::log(1e10) / gap;
        const BlochCoefficients bloch = bloch_coefficients(ens, rates, {0.5 * t_late, t_late});
        require(bloch.per_species[0].defined[1] == 1, "single-species settled point undefined");
        worst = std::max(worst, std::abs(bloch.per_species[0].gamma_t[1] - gdi[0]));
    }
    {
        EnsembleConfig duo = make_ensemble(3, make_spin(1.3, kRefCouplings), 2.0);
        duo.species.push_back(Species{"B", 5, make_spin(0.9, kAltCouplings)});
        const std::vector<RateSet> duo_rates = rates_per_species(duo);
        const std::vector<double> gdi =
            asymptotic_dephasing_multispecies({{3, duo_rates[0]}, {5, duo_rates[1]}});
        const double min_gap = std::min(duo_rates[0].z_plus.imag() - duo_rates[0].z_minus.imag(),
                                        duo_rates[1].z_plus.imag() - duo_rates[1].z_minus.imag());
        const double t_late = std::log(1e10) / min_gap;
        const BlochCoefficients bloch = bloch_coefficients(duo, duo_rates, {0.5 * t_late, t_late});
        for (std::size_t s = 0; s < 2; ++s) {
            require(bloch.per_species[s].defined[1] == 1, "two-species settled point undefined");
            worst = std::max(worst, std::abs(bloch.per_species[s].gamma_t[1] - gdi[s]));
        }
    }
    require(worst <= 1e-8, "settled-rate residual " + fmt(worst) + " exceeds 1e-8");
    return "log-derivative residual " + fmt(ld_res) + ", settled-rate residual " + fmt(worst);
}

std::string criterion_slow_root_order() {
    const double beta = 2.0, omega = 1.0;
    const FormFactor f_c{0, 2, 1.2};
    const EnsembleConfig probe = make_ensemble(2, make_spin(omega, Couplings{0.1, 0.0, 0.0, 0.0}), beta);
    const double b0 = compute_rateset(probe.species[0].spin, probe).b;

    std::vector<double> log_a, log_res_derived, log_res_plain;
    for (double frac : {1e-3, 1e-4, 1e-5}) {
        const double target = frac * b0;
        const double vk = std::sqrt(2.0 * target / bath_coulomb_integral(f_c));
        const SpinParams spin = make_spin(omega, Couplings{0.1, vk, 0.0, 0.0});
        const EnsembleConfig ens = make_ensemble(2, spin, beta);
        const RateSet rs = compute_rateset(spin, ens);
        const double th = std::tanh(0.5 * beta * omega);
        const double big_b = rs.b * (1.0 + rs.c);
        const cplx derived(rs.a * th, rs.a * rs.a * (1.0 - th * th) / big_b);
        const cplx plain(rs.a * th, rs.a * rs.a / big_b);
        log_a.push_back(std::log(std::abs(rs.a)));
        log_res_derived.push_back(std::log(std::abs(rs.z_minus - derived)));
        log_res_plain.push_back(std::log(std::abs(rs.z_minus - plain)));
    }
    const double slope_derived = least_squares_slope(log_a, log_res_derived);
    const double slope_plain = least_squares_slope(log_a, log_res_plain);
    require(slope_derived >= 2.9, "derived-series residual order " + fmt(slope_derived) +
                                      " falls short of cubic (need >= 2.9)");
    return "derived-series residual order " + fmt(slope_derived) +
           " (plain-series order " + fmt(slope_plain) + ", reported for contrast)";
}

std::string criterion_deterministic_outputs() {
    const char* config = R"({
      "ensemble": {
        "beta": 2.0,
        "collective_exchange_form_factor": {"n": 0, "m": 1, "angular_norm_sq": 1.0},
        "collective_conserving_form_factor": {"n": 0, "m": 2, "angular_norm_sq": 1.2},
        "species": [
          {"label": "A", "count": 3, "omega": 1.3, "lambda": 0.07, "varkappa": 0.05,
           "mu": 0.03, "nu": 0.02,
           "local_exchange_form_factor": {"n": 1, "m": 1, "angular_norm_sq": 0.8},
           "local_conserving_form_factor": {"n": 0, "m": 1, "angular_norm_sq": 0.6},
           "initial_bloch": [0.3, -0.2, 0.4]},
          {"label": "B", "count": 5, "omega": 0.9, "lambda": 0.04, "varkappa": 0.08,
           "mu": 0.01, "nu": 0.06,
           "local_exchange_form_factor": {"n": 1, "m": 1, "angular_norm_sq": 0.8},
           "local_conserving_form_factor": {"n": 0, "m": 1, "angular_norm_sq": 0.6},
           "initial_bloch": [0.3, -0.2, 0.4]}
        ]
      },
      "grid": {"t_max": 120.0, "num_points": 257}
    })";
    const ScenarioConfig cfg = parse_scenario_text(config);

    namespace fs = std::filesystem;
    const fs::path dir_a = fs::temp_directory_path() / "spinbath_acceptance_a";
    const fs::path dir_b = fs::temp_directory_path() / "spinbath_acceptance_b";
    for (const fs::path& d : {dir_a, dir_b}) {
        fs::remove_all(d);
        RunOptions opts;
        opts.out_dir = d.string();
        const RunResult res = run_scenario(cfg, opts);
        require(res.exit_code == 0, "scenario run failed: " + res.message);
    }
    for (const char* name : {"trajectory.csv", "bloch.csv", "rates.json"}) {
        const std::string a = slurp(dir_a / name), b = slurp(dir_b / name);
        require(!a.empty(), std::string(name) + " is empty");
        require(a == b, std::string(name) + " differs between identical runs");
    }
    return "trajectory.csv, bloch.csv, rates.json byte-identical across repeated runs (257-point grid)";
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<std::string()> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "closed-form rate identities hold on random parameter draws", criterion_rate_identities},
        {2, "complex roots never acquire a negative decay component", criterion_root_stability},
        {3, "level-shift blocks reproduce the closed-form eigensystem", criterion_level_shift_blocks},
        {4, "collective factor is inert without conserving couplings", criterion_inert_collective_factor},
        {5, "resonance theory matches the solvable dephasing model", criterion_solvable_model},
        {6, "long-time spectral slopes settle on their asymptotic rates", criterion_long_time_slopes},
        {7, "trajectory derivatives match the modified-Bloch coefficients", criterion_bloch_consistency},
        {8, "collective dephasing envelope bounds the factor magnitude", criterion_dephasing_envelope},
        {9, "late-time coefficients settle to the asymptotic dephasing rates", criterion_settled_rates},
        {10, "slow-root expansion converges at the predicted cubic order", criterion_slow_root_order},
        {11, "scenario outputs are bit-for-bit deterministic", criterion_deterministic_outputs},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string verdict, detail;
        try {
            detail = c.body();
            verdict = "PASS";
        } catch (const std::exception& e) {
            detail = e.what();
            verdict = "FAIL";
            ++failures;
        }
        std::printf("criterion %2d: %s  %s (%s)\n", c.id, verdict.c_str(), c.title, detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
