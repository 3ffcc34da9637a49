// form_factor.hpp — Parametric reservoir form factors and their closed-form spectral quantities.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinbath {

// Radial-times-angular reservoir coupling function
//   h(r, Sigma) = r^p e^{-r^m} h'(Sigma),  p = -1/2 + n,
// reduced to the three numbers that every integral below depends on.
struct FormFactor {
    int n{0};                    // radial exponent offset, p = -1/2 + n, n >= 0
    int m{1};                    // cutoff exponent in e^{-r^m}, 1 (exponential) or 2 (Gaussian)
    double angular_norm_sq{1.0}; // \int_{S^2} |h'(Sigma)|^2 dSigma, > 0
};

inline void validate(const FormFactor& h) {
    if (h.n < 0)
        throw std::invalid_argument("FormFactor: radial exponent n must be >= 0, got " + std::to_string(h.n));
    if (h.m != 1 && h.m != 2)
        throw std::invalid_argument("FormFactor: cutoff exponent m must be 1 or 2, got " + std::to_string(h.m));
    if (!(h.angular_norm_sq > 0.0))
        throw std::invalid_argument("FormFactor: angular_norm_sq must be > 0");
}

// Radial-angular density G_h(u) = u^{2p} e^{-2u^m} * angular_norm_sq, u > 0.
inline double angular_density(const FormFactor& h, double u) {
    if (!(u > 0.0))
        throw std::invalid_argument("angular_density: u must be > 0");
    const double p2 = 2.0 * h.n - 1.0; // 2p
    return std::pow(u, p2) * std::exp(-2.0 * std::pow(u, h.m)) * h.angular_norm_sq;
}

// gamma_+(h) = lim_{u->0+} u * G_h(u): the zero-frequency weight surviving for n = 0.
inline double gamma_plus(const FormFactor& h) {
    return h.n == 0 ? h.angular_norm_sq : 0.0;
}

// Spectral density J_h(omega) = pi omega^2 G_h(omega) = pi omega^{1+2n} e^{-2 omega^m} * norm.
inline double spectral_density(const FormFactor& h, double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("spectral_density: omega must be > 0");
    constexpr double pi = 3.14159265358979323846;
    return pi * std::pow(omega, 1.0 + 2.0 * h.n) * std::exp(-2.0 * std::pow(omega, h.m)) * h.angular_norm_sq;
}

// Zero-frequency slope Jtilde_h(0) = lim_{omega->0+} J_h(omega)/omega; nonzero only for n = 0.
inline double spectral_density_slope_zero(const FormFactor& h) {
    constexpr double pi = 3.14159265358979323846;
    return h.n == 0 ? pi * h.angular_norm_sq : 0.0;
}

// \int_0^infty r^{1+2p} e^{-2r^m} dr * norm = norm * (1/m) Gamma((2n+1)/m) / 2^{(2n+1)/m}.
// Positive and finite for every valid form factor; no singular handling needed.
inline double bath_coulomb_integral(const FormFactor& h) {
    const double q = (2.0 * h.n + 1.0) / h.m;
    return h.angular_norm_sq * std::tgamma(q) / (h.m * std::pow(2.0, q));
}

// Radius beyond which u^{power} e^{-2u^m} has dropped below `rel` times its peak.
// Used to truncate all radial integrals; found by bisection on the monotone tail.
inline double radial_cutoff(const FormFactor& h, double power, double rel = 1e-18) {
    const double q = power;
    const double peak_r = q > 0.0 ? std::pow(q / (2.0 * h.m), 1.0 / h.m) : 0.0;
    auto log_env = [&](double r) { return q * std::log(r) - 2.0 * std::pow(r, h.m); };
    const double log_peak = peak_r > 0.0 ? log_env(peak_r) : 0.0;
    const double target = log_peak + std::log(rel);
    double lo = peak_r > 0.0 ? peak_r : 1e-8, hi = lo + 1.0;
    while (log_env(hi) > target) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (log_env(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

} // namespace spinbath
