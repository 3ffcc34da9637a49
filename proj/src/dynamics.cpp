// dynamics.cpp — Transverse factors, collective products, trajectories, modified-Bloch coefficients.

#include "spinbath/dynamics.hpp"

#include <cmath>
#include <limits>

namespace spinbath {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLogClamp = -690.775527898213705; // ln(1e-300)
constexpr double kBlochFloor = 1e-12;              // |D| below this marks Gamma/B undefined

int species_index_of(const EnsembleConfig& ens, int j) {
    if (j < 0) throw std::invalid_argument("spin index must be >= 0");
    int base = 0;
    for (std::size_t s = 0; s < ens.species.size(); ++s) {
        base += ens.species[s].count;
        if (j < base) return static_cast<int>(s);
    }
    throw std::invalid_argument("spin index exceeds ensemble size");
}

void check_rates_parallel(const EnsembleConfig& ens, const std::vector<RateSet>& rates) {
    if (rates.size() != ens.species.size())
        throw std::invalid_argument("rates must carry one entry per species, in species order");
}

// Nearest-branch phase increment of D between two times, bisecting while the
// argument moves by more than pi/2 in one step (bounded depth keeps genuine
// near-zeros of D, where the phase really does jump, from recursing forever).
double unwrap_step(const DFactor& d, double t0, cplx d0, double t1, cplx d1, int depth) {
    const double delta = std::remainder(std::arg(d1) - std::arg(d0), 2.0 * kPi);
    if (std::abs(delta) <= 0.5 * kPi || depth <= 0) return delta;
    const double tm = 0.5 * (t0 + t1);
    const cplx dm = d_factor_value(d, tm);
    return unwrap_step(d, t0, d0, tm, dm, depth - 1) + unwrap_step(d, tm, dm, t1, d1, depth - 1);
}

// One species' D(t) sampled on the grid: complex values, log-magnitudes, and the
// phase unwrapped continuously from the exact anchor D(0) = 1.
struct SpeciesDGrid {
    std::vector<cplx> value;
    std::vector<double> log_abs;
    std::vector<double> phase;
};

SpeciesDGrid species_d_grid(const DFactor& d, const std::vector<double>& times) {
    SpeciesDGrid g;
    const std::size_t n = times.size();
    g.value.resize(n);
    g.log_abs.resize(n);
    g.phase.resize(n);
    double prev_t = 0.0;
    cplx prev_v(1.0, 0.0);
    double phi = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx v = d_factor_value(d, times[k]);
        phi += unwrap_step(d, prev_t, prev_v, times[k], v, 40);
        g.value[k] = v;
        const double ab = std::abs(v);
        g.log_abs[k] = (ab < 1e-300) ? kLogClamp : std::log(ab);
        g.phase[k] = phi;
        prev_t = times[k];
        prev_v = v;
    }
    return g;
}

void check_times(const std::vector<double>& times) {
    if (times.empty()) throw std::invalid_argument("time grid must not be empty");
    if (times.front() < 0.0) throw std::invalid_argument("time grid must start at t >= 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1])) throw std::invalid_argument("time grid must be strictly increasing");
}

} // namespace

DFactor make_d_factor(const RateSet& rs, const Mat2& rho0) {
    DFactor d;
    d.kappa = kappa_coefficient(rs, rho0);
    d.z_plus = rs.z_plus;
    d.z_minus = rs.z_minus;
    return d;
}

cplx d_factor_value(const DFactor& d, double t) {
    const cplx it(0.0, t);
    return d.kappa * std::exp(it * d.z_plus) + (1.0 - d.kappa) * std::exp(it * d.z_minus);
}

cplx d_factor(const RateSet& rs, const Mat2& rho0, double t) {
    return d_factor_value(make_d_factor(rs, rho0), t);
}

cplx d_log_derivative(const DFactor& d, double t) {
    const cplx i(0.0, 1.0);
    const cplx w = std::exp(i * t * (d.z_plus - d.z_minus)); // decaying: Im(z+ - z-) >= 0
    const cplx num = i * d.z_plus * d.kappa * w + i * d.z_minus * (1.0 - d.kappa);
    const cplx den = d.kappa * w + (1.0 - d.kappa);
    return num / den;
}

cplx ComplexLog::value() const { return std::polar(std::exp(log_abs), phase); }

ComplexLog collective_factor(int j, const EnsembleConfig& ens, const std::vector<RateSet>& rates, double t,
                             bool* clamped) {
    check_rates_parallel(ens, rates);
    const int s_j = species_index_of(ens, j);
    if (clamped) *clamped = false;
    ComplexLog out;
    for (std::size_t u = 0; u < ens.species.size(); ++u) {
        const int mult = ens.species[u].count - (static_cast<int>(u) == s_j ? 1 : 0);
        if (mult == 0) continue;
        const cplx v = d_factor(rates[u], ens.species[u].spin.rho0, t);
        const double ab = std::abs(v);
        if (ab < 1e-300) {
            out.log_abs += mult * kLogClamp;
            if (clamped) *clamped = true;
        } else {
            out.log_abs += mult * std::log(ab);
        }
        out.phase += mult * std::arg(v);
    }
    return out;
}

std::vector<ComplexLog> collective_factor_grid(int j, const EnsembleConfig& ens,
                                               const std::vector<RateSet>& rates,
                                               const std::vector<double>& times) {
    check_rates_parallel(ens, rates);
    check_times(times);
    const int s_j = species_index_of(ens, j);
    std::vector<ComplexLog> out(times.size());
    for (std::size_t u = 0; u < ens.species.size(); ++u) {
        const int mult = ens.species[u].count - (static_cast<int>(u) == s_j ? 1 : 0);
        if (mult == 0) continue;
        const SpeciesDGrid g = species_d_grid(make_d_factor(rates[u], ens.species[u].spin.rho0), times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            out[k].log_abs += mult * g.log_abs[k];
            out[k].phase += mult * g.phase[k];
        }
    }
    return out;
}

cplx evolve_observable(const Mat2& a_matrix, int j, const EnsembleConfig& ens,
                       const std::vector<RateSet>& rates, double t) {
    check_rates_parallel(ens, rates);
    const int s = species_index_of(ens, j);
    const RateSet& rs = rates[s];
    const SpinParams& spin = ens.species[s].spin;
    const Mat2& rho = spin.rho0;
    const double bw = ens.beta * spin.omega;

    const cplx eq = (std::exp(0.5 * bw) * a_matrix.m11 + std::exp(-0.5 * bw) * a_matrix.m22) / rs.z_beta;
    const cplx pop = std::exp(-t * rs.gamma_relax) * (rho.m11.real() - 1.0 / (1.0 + rs.c)) *
                     (a_matrix.m11 - a_matrix.m22);

    const cplx c_j = collective_factor(j, ens, rates, t).value();
    const double phase = t * (-spin.omega + rs.x);
    const cplx term_m = std::exp(cplx(-t * rs.y, phase)) * c_j * rho.m21 * a_matrix.m12;
    const cplx term_p = std::exp(cplx(-t * rs.y, -phase)) * std::conj(c_j) * rho.m12 * a_matrix.m21;
    return eq + pop + term_m + term_p;
}

std::vector<double> linear_grid(double t_max, int num_points) {
    if (!(t_max > 0.0)) throw std::invalid_argument("linear_grid: t_max must be > 0");
    if (num_points < 2) throw std::invalid_argument("linear_grid: at least two points required");
    std::vector<double> t(num_points);
    for (int k = 0; k < num_points; ++k) t[k] = t_max * static_cast<double>(k) / (num_points - 1);
    return t;
}

std::vector<double> log_grid(double t_min, double t_max, int num_points) {
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw std::invalid_argument("log_grid: need 0 < t_min < t_max");
    if (num_points < 2) throw std::invalid_argument("log_grid: at least two points required");
    std::vector<double> t(num_points);
    const double ratio = t_max / t_min;
    for (int k = 0; k < num_points; ++k)
        t[k] = t_min * std::pow(ratio, static_cast<double>(k) / (num_points - 1));
    t.back() = t_max;
    return t;
}

Trajectory magnetization_trajectory(const EnsembleConfig& ens, const std::vector<RateSet>& rates,
                                    const std::vector<double>& times) {
    check_rates_parallel(ens, rates);
    check_times(times);
    const std::size_t nt = times.size();
    const std::size_t ns = ens.species.size();

    std::vector<SpeciesDGrid> grids(ns);
    std::vector<DFactor> dfs(ns);
    for (std::size_t u = 0; u < ns; ++u) {
        dfs[u] = make_d_factor(rates[u], ens.species[u].spin.rho0);
        grids[u] = species_d_grid(dfs[u], times);
    }

    Trajectory traj;
    traj.times = times;
    traj.sz.assign(nt, 0.0);
    traj.sminus.assign(nt, cplx(0.0, 0.0));
    traj.per_species.resize(ns);

    for (std::size_t s = 0; s < ns; ++s) {
        const Species& sp = ens.species[s];
        const RateSet& rs = rates[s];
        auto& track = traj.per_species[s];
        track.label = sp.label;
        track.sz.resize(nt);
        track.sminus.resize(nt);
        track.gamma_t.resize(nt);
        track.b_t.resize(nt);
        track.log_c_magnitude.resize(nt);
        track.c_phase.resize(nt);
        track.bloch_defined.resize(nt);

        const double p11 = sp.spin.rho0.m11.real();
        const cplx rho21 = sp.spin.rho0.m21;
        const double sz_eq = 0.5 * std::tanh(0.5 * ens.beta * sp.spin.omega);

        for (std::size_t k = 0; k < nt; ++k) {
            const double t = times[k];
            const double decay = std::exp(-t * rs.gamma_relax);
            const double sz_spin = sz_eq * (1.0 - decay) + decay * (p11 - 0.5);
            track.sz[k] = sp.count * sz_spin;
            traj.sz[k] += track.sz[k];

            // C for a representative spin of this species: multiplicity count-1 on s, count on others.
            double log_c = 0.0, phase_c = 0.0;
            bool defined = true;
            double re_ld = 0.0, im_ld = 0.0;
            for (std::size_t u = 0; u < ns; ++u) {
                const int mult = ens.species[u].count - (u == s ? 1 : 0);
                if (mult == 0) continue;
                log_c += mult * grids[u].log_abs[k];
                phase_c += mult * grids[u].phase[k];
                if (grids[u].log_abs[k] < std::log(kBlochFloor)) {
                    defined = false;
                } else {
                    const cplx ld = d_log_derivative(dfs[u], t);
                    re_ld += mult * ld.real();
                    im_ld += mult * ld.imag();
                }
            }
            track.log_c_magnitude[k] = log_c;
            track.c_phase[k] = phase_c;
            track.bloch_defined[k] = defined ? 1 : 0;
            track.gamma_t[k] = defined ? 0.5 * rs.gamma_relax + rs.gamma_cons - re_ld : kNaN;
            track.b_t[k] = defined ? -sp.spin.omega + rs.x + im_ld : kNaN;

            const cplx c_val = std::polar(std::exp(log_c), phase_c);
            const cplx sm = static_cast<double>(sp.count) *
                            std::exp(cplx(-t * rs.y, t * (-sp.spin.omega + rs.x))) * c_val * rho21;
            track.sminus[k] = sm;
            traj.sminus[k] += sm;
        }
    }
    return traj;
}

BlochCoefficients bloch_coefficients(const EnsembleConfig& ens, const std::vector<RateSet>& rates,
                                     const std::vector<double>& times) {
    check_rates_parallel(ens, rates);
    check_times(times);
    const std::size_t nt = times.size();
    const std::size_t ns = ens.species.size();

    std::vector<DFactor> dfs(ns);
    for (std::size_t u = 0; u < ns; ++u) dfs[u] = make_d_factor(rates[u], ens.species[u].spin.rho0);

    BlochCoefficients out;
    out.times = times;
    out.per_species.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        auto& track = out.per_species[s];
        track.label = ens.species[s].label;
        track.gamma_t.resize(nt);
        track.b_t.resize(nt);
        track.defined.resize(nt);
    }

    for (std::size_t k = 0; k < nt; ++k) {
        const double t = times[k];
        std::vector<cplx> ld(ns);
        std::vector<bool> alive(ns);
        for (std::size_t u = 0; u < ns; ++u) {
            const cplx v = d_factor_value(dfs[u], t);
            alive[u] = std::abs(v) >= kBlochFloor;
            ld[u] = alive[u] ? d_log_derivative(dfs[u], t) : cplx(kNaN, kNaN);
        }
        for (std::size_t s = 0; s < ns; ++s) {
            const RateSet& rs = rates[s];
            double re_sum = 0.0, im_sum = 0.0;
            bool defined = true;
            for (std::size_t u = 0; u < ns; ++u) {
                const int mult = ens.species[u].count - (u == s ? 1 : 0);
                if (mult == 0) continue;
                if (!alive[u]) {
                    defined = false;
                    break;
                }
                re_sum += mult * ld[u].real();
                im_sum += mult * ld[u].imag();
            }
            auto& track = out.per_species[s];
            track.defined[k] = defined ? 1 : 0;
            track.gamma_t[k] = defined ? 0.5 * rs.gamma_relax + rs.gamma_cons - re_sum : kNaN;
            track.b_t[k] = defined ? -ens.species[s].spin.omega + rs.x + im_sum : kNaN;
        }
    }
    return out;
}

} // namespace spinbath
