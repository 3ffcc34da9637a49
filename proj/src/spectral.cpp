// spectral.cpp — Dispersion and decoherence integrals built on the adaptive Gauss–Kronrod core.

#include "spinbath/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spinbath {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Domain truncation radius: e^{-2 U^m} = 1e-16 per design, i.e. U = (8 ln 10)^{1/m}.
double truncation_radius(int m) { return std::pow(8.0 * std::log(10.0), 1.0 / m); }

// The even numerator F(u) = [l^2 J_gc(|u|) + m^2 J_gl(|u|)] coth(beta|u|/2).
// Regular at u = 0: J(|u|) coth(beta|u|/2) ~ |u|^{2n}.
struct DispersionNumerator {
    const FormFactor* gc;
    const FormFactor* gl;
    double l2, m2, beta;

    double operator()(double u) const {
        const double au = std::abs(u);
        if (au == 0.0) return limit_at_zero();
        double j = 0.0;
        if (l2 != 0.0) j += l2 * spectral_density(*gc, au);
        if (m2 != 0.0) j += m2 * spectral_density(*gl, au);
        return j * coth_stable(0.5 * beta * au);
    }

    double limit_at_zero() const {
        double v = 0.0;
        if (l2 != 0.0 && gc->n == 0) v += l2 * kPi * gc->angular_norm_sq;
        if (m2 != 0.0 && gl->n == 0) v += m2 * kPi * gl->angular_norm_sq;
        return 2.0 * v / beta;
    }
};

} // namespace

SpectralResult pv_dispersion_integral(const FormFactor& gc, const FormFactor& gloc, double lambda, double mu,
                                      double omega, double beta) {
    validate(gc);
    validate(gloc);
    if (!(omega > 0.0)) throw std::invalid_argument("pv_dispersion_integral: omega must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("pv_dispersion_integral: beta must be > 0");
    const double l2 = lambda * lambda, m2 = mu * mu;
    if (l2 == 0.0 && m2 == 0.0) return {0.0, 0.0};

    double U = 0.0;
    if (l2 != 0.0) U = std::max(U, truncation_radius(gc.m));
    if (m2 != 0.0) U = std::max(U, truncation_radius(gloc.m));

    const DispersionNumerator F{&gc, &gloc, l2, m2, beta};
    const double abs_tol = 1e-10, rel_tol = 1e-8;
    SpectralResult total;

    if (omega < U) {
        // Singularity u = -omega sits inside the domain: symmetric exclusion window
        // plus odd-part subtraction, then the regular remainder split at the |u| kink.
        const double half_window = std::min(0.5 * omega, 1.0);
        auto odd_part = [&](double v) { return (F(-omega + v) - F(-omega - v)) / v; };
        const SpectralResult win = integrate_adaptive(odd_part, 0.0, half_window, abs_tol, rel_tol);
        total.value += win.value;
        total.abs_error_estimate += win.abs_error_estimate;

        auto f = [&](double u) { return F(u) / (u + omega); };
        if (-U < -omega - half_window) {
            const SpectralResult left = integrate_adaptive(f, -U, -omega - half_window, abs_tol, rel_tol);
            total.value += left.value;
            total.abs_error_estimate += left.abs_error_estimate;
        }
        const SpectralResult right = integrate_segments(f, {-omega + half_window, 0.0, U}, abs_tol, rel_tol);
        total.value += right.value;
        total.abs_error_estimate += right.abs_error_estimate;
    } else {
        // Large omega: the denominator never vanishes on the truncated domain.
        auto f = [&](double u) { return F(u) / (u + omega); };
        const SpectralResult whole = integrate_segments(f, {-U, 0.0, U}, abs_tol, rel_tol);
        total.value += whole.value;
        total.abs_error_estimate += whole.abs_error_estimate;
    }

    return {total.value / (8.0 * kPi), total.abs_error_estimate / (8.0 * kPi)};
}

namespace {

// Trapezoid over nodes graded logarithmically in distance from the singular point,
// with the |u| kink (v = omega in shifted coordinates) inserted as an explicit node.
double brute_side(const DispersionNumerator& F, double omega, double v_lo, double v_hi, int points) {
    if (!(v_hi > v_lo)) return 0.0;
    std::vector<double> vs;
    vs.reserve(static_cast<std::size_t>(points) + 2);
    const double ratio = v_hi / v_lo;
    for (int k = 0; k <= points; ++k)
        vs.push_back(v_lo * std::pow(ratio, static_cast<double>(k) / points));
    if (omega > v_lo && omega < v_hi) vs.push_back(omega); // kink of F(v - omega) at u = 0
    std::sort(vs.begin(), vs.end());
    double sum = 0.0;
    double prev_v = vs[0], prev_g = F(prev_v - omega) / prev_v;
    for (std::size_t i = 1; i < vs.size(); ++i) {
        const double v = vs[i];
        const double g = F(v - omega) / v;
        sum += 0.5 * (g + prev_g) * (v - prev_v);
        prev_v = v;
        prev_g = g;
    }
    return sum;
}

} // namespace

double pv_dispersion_brute_force(const FormFactor& gc, const FormFactor& gloc, double lambda, double mu,
                                 double omega, double beta) {
    validate(gc);
    validate(gloc);
    const double l2 = lambda * lambda, m2 = mu * mu;
    if (l2 == 0.0 && m2 == 0.0) return 0.0;
    double U = 0.0;
    if (l2 != 0.0) U = std::max(U, truncation_radius(gc.m));
    if (m2 != 0.0) U = std::max(U, truncation_radius(gloc.m));
    const DispersionNumerator F{&gc, &gloc, l2, m2, beta};
    constexpr int kPointsPerSide = 6000;

    if (omega >= U) {
        // No singularity inside the domain; a single graded pass suffices.
        return brute_side(F, omega, omega - U, omega + U, 2 * kPointsPerSide) / (8.0 * kPi);
    }

    // In shifted coordinates v = u + omega the integral is
    //   int_{v in [omega-U, -d]} g + int_{v in [d, omega+U]} g,  g(v) = F(v - omega)/v,
    // evaluated for shrinking windows d and extrapolated to d -> 0.
    const double deltas[3] = {1e-2, 1e-3, 1e-4};
    double vals[3];
    for (int i = 0; i < 3; ++i) {
        const double d = deltas[i];
        double s = brute_side(F, omega, d, omega + U, kPointsPerSide);
        // Negative-v side: substitute w = -v, g(-w) = F(-w - omega)/(-w).
        const double w_hi = U - omega;
        if (w_hi > d) {
            std::vector<double> ws;
            ws.reserve(kPointsPerSide + 1);
            for (int k = 0; k <= kPointsPerSide; ++k)
                ws.push_back(d * std::pow(w_hi / d, static_cast<double>(k) / kPointsPerSide));
            double prev_w = ws[0], prev_g = -F(-ws[0] - omega) / ws[0];
            for (std::size_t k = 1; k < ws.size(); ++k) {
                const double g = -F(-ws[k] - omega) / ws[k];
                s += 0.5 * (g + prev_g) * (ws[k] - prev_w);
                prev_w = ws[k];
                prev_g = g;
            }
        }
        vals[i] = s / (8.0 * kPi);
    }

    // Quadratic fit value(d) = X + c1 d + c2 d^2 through the three window values;
    // the window bias is odd in d (linear + cubic), so the fit's X is O(d_max^3) exact.
    const double d0 = deltas[0], d1 = deltas[1], d2 = deltas[2];
    const double det = (d1 - d0) * (d2 - d0) * (d2 - d1);
    const double x = (vals[0] * d1 * d2 * (d2 - d1) - vals[1] * d0 * d2 * (d2 - d0) +
                      vals[2] * d0 * d1 * (d1 - d0)) /
                     det;
    return x;
}

double decoherence_gamma(const FormFactor& h, double beta, double t) {
    validate(h);
    if (!(beta > 0.0)) throw std::invalid_argument("decoherence_gamma: beta must be > 0");
    if (t < 0.0) throw std::invalid_argument("decoherence_gamma: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double R = radial_cutoff(h, 2.0 * h.n);
    auto f = [&](double r) {
        return angular_density(h, r) * coth_stable(0.5 * beta * r) * std::pow(std::sin(0.5 * r * t), 2);
    };
    const auto pts = period_breakpoints(0.0, R, kPi / t);
    return integrate_segments(f, pts, 1e-10, 1e-8).value;
}

double lamb_shift_s(const FormFactor& h, double t) {
    validate(h);
    if (t < 0.0) throw std::invalid_argument("lamb_shift_s: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double R = radial_cutoff(h, 2.0 * h.n + 1.0);
    auto f = [&](double r) { return angular_density(h, r) * x_minus_sin(r * t); };
    const auto pts = period_breakpoints(0.0, R, kPi / t);
    return -0.5 * integrate_segments(f, pts, 1e-10, 1e-8).value;
}

} // namespace spinbath
