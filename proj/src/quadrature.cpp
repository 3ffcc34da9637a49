// quadrature.cpp — Gauss–Kronrod 15(7) panels with deterministic adaptive bisection.

#include "spinbath/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace spinbath {

namespace {

// Kronrod abscissae on [0,1] side of [-1,1] (symmetric), with Kronrod weights and
// the embedded 7-point Gauss weights. Standard published constants.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct AdaptiveState {
    const std::function<double(double)>* f;
    double rel_tol;
    int max_depth;
};

SpectralResult adapt(const AdaptiveState& st, double a, double b, const SpectralResult& whole, double abs_tol,
                     int depth) {
    if (whole.abs_error_estimate <= std::max(abs_tol, st.rel_tol * std::abs(whole.value)))
        return whole;
    if (depth >= st.max_depth)
        throw QuadratureError("adaptive quadrature failed to converge", a, b);
    const double mid = 0.5 * (a + b);
    const SpectralResult left = gk15_panel(*st.f, a, mid);
    const SpectralResult right = gk15_panel(*st.f, mid, b);
    const SpectralResult lr = adapt(st, a, mid, left, 0.5 * abs_tol, depth + 1);
    const SpectralResult rr = adapt(st, mid, b, right, 0.5 * abs_tol, depth + 1);
    return {lr.value + rr.value, lr.abs_error_estimate + rr.abs_error_estimate};
}

} // namespace

SpectralResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        kron += kWgk[i] * (f1 + f2);
        resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
    }
    kron *= h;
    gauss *= h;
    resabs *= std::abs(h);
    // QUADPACK-style sharpened error estimate, floored at machine noise of |I|.
    double err = std::abs(kron - gauss);
    if (resabs > 0.0 && err > 0.0)
        err = resabs * std::min(1.0, std::pow(200.0 * err / resabs, 1.5));
    err = std::max(err, 5e-17 * resabs);
    return {kron, err};
}

SpectralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                  double rel_tol, int max_depth) {
    if (a == b) return {0.0, 0.0};
    const AdaptiveState st{&f, rel_tol, max_depth};
    return adapt(st, a, b, gk15_panel(f, a, b), abs_tol, 0);
}

SpectralResult integrate_segments(const std::function<double(double)>& f, const std::vector<double>& pts,
                                  double abs_tol, double rel_tol) {
    if (pts.size() < 2)
        throw std::invalid_argument("integrate_segments: need at least one segment");
    const double share = abs_tol / static_cast<double>(pts.size() - 1);
    SpectralResult total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const SpectralResult seg = integrate_adaptive(f, pts[i], pts[i + 1], share, rel_tol);
        total.value += seg.value;
        total.abs_error_estimate += seg.abs_error_estimate;
    }
    return total;
}

std::vector<double> period_breakpoints(double a, double b, double step, std::size_t max_segments) {
    if (!(b > a)) return {a, b};
    if (!(step > 0.0)) return {a, b};
    const double nseg = std::ceil((b - a) / step);
    if (nseg > static_cast<double>(max_segments))
        throw std::invalid_argument("period_breakpoints: oscillation splitting would need " +
                                    std::to_string(static_cast<long long>(nseg)) + " segments (cap " +
                                    std::to_string(max_segments) + "); time or cutoff too large");
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(nseg) + 1);
    pts.push_back(a);
    for (double x = a + step; x < b; x += step) pts.push_back(x);
    pts.push_back(b);
    return pts;
}

double coth_stable(double x) {
    if (std::abs(x) < 1e-4) return 1.0 / x + x / 3.0;
    return 1.0 / std::tanh(x);
}

double x_minus_sin(double x) {
    const double ax = std::abs(x);
    if (ax < 0.1) {
        const double x2 = x * x;
        // x - sin x = x^3/6 (1 - x^2/20 (1 - x^2/42 (1 - x^2/72)))
        return x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
    }
    return x - std::sin(x);
}

} // namespace spinbath
