// quadrature.hpp — Deterministic adaptive Gauss–Kronrod integration used by every reservoir integral.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinbath {

// Value plus an absolute error estimate, as produced by the quadrature scheme.
struct SpectralResult {
    double value{0.0};
    double abs_error_estimate{0.0};
};

// Raised when adaptive bisection hits its depth limit without meeting tolerance.
// Carries the offending subinterval so callers can report exactly where.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " on subinterval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          lo_(lo), hi_(hi) {}
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_, hi_;
};

// One 15-point Kronrod panel (with embedded 7-point Gauss rule for the error estimate).
SpectralResult gk15_panel(const std::function<double(double)>& f, double a, double b);

// Adaptive bisection until each panel's error estimate meets
// max(abs_tol_share, rel_tol * |panel value|); deterministic, no randomness.
// Throws QuadratureError past `max_depth` levels of bisection.
SpectralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-10, double rel_tol = 1e-8, int max_depth = 52);

// Integrate over consecutive segments [pts[0], pts[1]], ..., sharing abs_tol across them.
// Intended for splitting at kinks and at oscillation period boundaries.
SpectralResult integrate_segments(const std::function<double(double)>& f, const std::vector<double>& pts,
                                  double abs_tol = 1e-10, double rel_tol = 1e-8);

// Monotone grid of oscillation-period boundaries: a, a+step, ..., capped at b.
// Throws std::invalid_argument when more than `max_segments` would be needed.
std::vector<double> period_breakpoints(double a, double b, double step, std::size_t max_segments = 200000);

// coth(x) for x > 0, switching to the two-term Laurent series 1/x + x/3 below 1e-4
// where the direct form loses accuracy to cancellation.
double coth_stable(double x);

// x - sin(x) without cancellation for small |x| (Taylor series below 0.1).
double x_minus_sin(double x);

} // namespace spinbath
