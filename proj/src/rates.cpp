// rates.cpp — Thermal rates, the complex roots z±, and ensemble decay summaries.

#include "spinbath/rates.hpp"

#include <cmath>
#include <limits>

#include "spinbath/quadrature.hpp"
#include "spinbath/spectral.hpp"

namespace spinbath {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Roots of z^2 - iB z + (a^2 - i a b(1-c)) = 0 with B = b(1+c), computed without
// cancellation: the principal square root of R = (4a^2 - B^2) - 4iab(1-c) lands in
// the closed first quadrant for the physical sign a <= 0, so z+ = (iB + sqrt(R))/2
// only ever adds same-sign quantities, and z- follows from the Vieta quotient.
void stable_roots(double a, double b, double c, cplx& z_plus, cplx& z_minus) {
    const double B = b * (1.0 + c);
    if (a == 0.0) {
        z_plus = cplx(0.0, B);
        z_minus = cplx(0.0, 0.0);
        return;
    }
    if (b == 0.0) {
        z_plus = cplx(std::abs(a), 0.0);
        z_minus = cplx(-std::abs(a), 0.0);
        return;
    }
    double re_r = 4.0 * a * a - B * B;
    double im_r = -4.0 * a * b * (1.0 - c);
    if (im_r == 0.0) im_r = 0.0; // normalize -0.0: the principal branch must stay on the upper lip
    const cplx sqrt_r = std::sqrt(cplx(re_r, im_r));
    z_plus = cplx(0.5 * sqrt_r.real(), 0.5 * (B + sqrt_r.imag()));
    const cplx product(-a * a, a * b * (1.0 - c));
    z_minus = product / z_plus;
    // Im z- >= 0 analytically; allow only a rounding-sized negative excursion to be clamped.
    if (z_minus.imag() < 0.0) {
        const double mod2 = std::norm(z_plus);
        const double bound = 8.0 * std::numeric_limits<double>::epsilon() *
                             (a * a * std::abs(z_plus.imag()) + std::abs(a * b * (1.0 - c)) * z_plus.real()) / mod2;
        if (-z_minus.imag() <= bound) z_minus = cplx(z_minus.real(), 0.0);
    }
    if (z_minus.imag() == 0.0) z_minus = cplx(z_minus.real(), 0.0);
}

} // namespace

RateSet compute_rateset(const SpinParams& spin, const EnsembleConfig& ens) {
    if (!(spin.omega > 0.0)) throw std::invalid_argument("compute_rateset: omega must be > 0");
    if (!(ens.beta > 0.0)) throw std::invalid_argument("compute_rateset: beta must be > 0");
    validate(ens.g_c);
    validate(ens.f_c);
    validate(spin.g_loc);
    validate(spin.f_loc);

    const double omega = spin.omega, beta = ens.beta;
    const double l2 = spin.lambda * spin.lambda;
    const double m2 = spin.mu * spin.mu;
    const double k2 = spin.varkappa * spin.varkappa;
    const double n2 = spin.nu * spin.nu;

    RateSet rs;
    rs.c = std::exp(-beta * omega);
    rs.z_beta = 2.0 * std::cosh(0.5 * beta * omega);

    double j_total = 0.0;
    if (l2 != 0.0) j_total += l2 * spectral_density(ens.g_c, omega);
    if (m2 != 0.0) j_total += m2 * spectral_density(spin.g_loc, omega);
    rs.b = 0.25 * j_total / (-std::expm1(-beta * omega));

    rs.a = -0.5 * k2 * bath_coulomb_integral(ens.f_c);
    if (rs.a == 0.0) rs.a = 0.0; // normalize -0.0 away for clean comparisons and output

    rs.x = (l2 != 0.0 || m2 != 0.0)
               ? pv_dispersion_integral(ens.g_c, spin.g_loc, spin.lambda, spin.mu, omega, beta).value
               : 0.0;

    rs.gamma_cons = 0.5 * (k2 * spectral_density_slope_zero(ens.f_c) + n2 * spectral_density_slope_zero(spin.f_loc)) / beta;
    // gamma_relax from its defining coth form (the b(1+c) identity is checked, not assumed),
    // and y as gamma_relax/2 + gamma_cons, exact in floating point (factor-of-two scaling).
    const double q = j_total * coth_stable(0.5 * beta * omega);
    rs.gamma_relax = 0.25 * q;
    rs.y = 0.125 * q + rs.gamma_cons;

    stable_roots(rs.a, rs.b, rs.c, rs.z_plus, rs.z_minus);

    if (rs.b > 0.0) {
        rs.has_alpha = true;
        rs.has_r = true;
        rs.r = std::abs(rs.a) / rs.b;
        if (rs.a == 0.0) {
            rs.alpha_plus = cplx(-1.0 / rs.c, 0.0);
            rs.alpha_minus = cplx(1.0, 0.0);
        } else {
            // The direct slope formula is cancellation-free only for the plus root
            // (Re z_plus and -a never cancel); applied to the minus root it loses
            // ~(|a|/b)^2 digits because z_minus collapses onto a. The minus slope
            // therefore comes from the exact product identity alpha+ * alpha- = -1/c.
            const double bc = rs.b * rs.c;
            rs.alpha_plus = cplx(1.0, 0.0) + cplx(0.0, 1.0) * (rs.z_plus - rs.a) / bc;
            rs.alpha_minus = -1.0 / (rs.c * rs.alpha_plus);
        }
    } else {
        rs.r = kNaN;
        rs.alpha_plus = cplx(kNaN, kNaN);
        rs.alpha_minus = cplx(kNaN, kNaN);
    }
    return rs;
}

cplx zeta_coefficient(const RateSet& rs) {
    if (!rs.has_alpha) throw std::invalid_argument("zeta_coefficient: undefined for b = 0");
    const cplx ap = rs.alpha_plus;
    return (1.0 + rs.c * ap) / (1.0 + rs.c * ap * ap);
}

cplx kappa_coefficient(const RateSet& rs, const Mat2& rho0) {
    if (rs.a == 0.0) return cplx(0.0, 0.0);
    const double p = rho0.m11.real();
    if (rs.b == 0.0) return cplx(p, 0.0);
    const cplx ap = rs.alpha_plus;
    return zeta_coefficient(rs) * (ap + p * (1.0 - ap));
}

DephasingSummary dephasing_summary(const std::vector<RateSet>& ratesets, const std::vector<Mat2>& rho0s, int N) {
    if (ratesets.empty()) throw std::invalid_argument("dephasing_summary: no ratesets given");
    if (ratesets.size() != rho0s.size())
        throw std::invalid_argument("dephasing_summary: ratesets and rho0s must be parallel");
    DephasingSummary out;
    double gamma = std::numeric_limits<double>::infinity();
    double c_prime = 0.0;
    for (std::size_t j = 0; j < ratesets.size(); ++j) {
        gamma = std::min(gamma, std::min(ratesets[j].z_plus.imag(), ratesets[j].z_minus.imag()));
        const cplx kappa = kappa_coefficient(ratesets[j], rho0s[j]);
        c_prime = std::max(c_prime, std::log1p(2.0 * std::abs(kappa)));
    }
    out.gamma = gamma;
    out.c_prime = c_prime;
    out.gamma_prime = (N < 2) ? 0.0 : gamma / (std::log(2.0) / (N - 1) + c_prime);
    out.gamma_deph = 0.5 * ratesets.front().gamma_relax + ratesets.front().gamma_cons + out.gamma_prime;
    return out;
}

std::vector<double> asymptotic_dephasing_multispecies(const std::vector<std::pair<int, RateSet>>& species) {
    std::vector<double> out;
    out.reserve(species.size());
    for (std::size_t s = 0; s < species.size(); ++s) {
        const auto& [n_s, rs_s] = species[s];
        double g = 0.5 * rs_s.gamma_relax + rs_s.gamma_cons + (n_s - 1) * rs_s.z_minus.imag();
        for (std::size_t k = 0; k < species.size(); ++k) {
            if (k == s) continue;
            g += species[k].first * species[k].second.z_minus.imag();
        }
        out.push_back(g);
    }
    return out;
}

} // namespace spinbath
