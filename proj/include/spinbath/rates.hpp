// rates.hpp — Per-spin resonance data: thermal rates, complex roots z±, and decay summaries.
#pragma once

#include <utility>
#include <vector>

#include "spinbath/ensemble.hpp"

namespace spinbath {

// Everything derived from one spin's couplings at inverse temperature beta.
// alpha_plus/alpha_minus (and r) are meaningful only when b > 0; when b = 0 they
// are NaN and has_alpha/has_r are false — consumers must take the degenerate
// pure-dephasing path instead.
struct RateSet {
    double b{0.0};            // thermally weighted exchange rate, >= 0
    double c{0.0};            // detailed-balance factor e^{-beta omega}, in (0,1)
    double z_beta{0.0};       // single-spin partition function, 2 cosh(beta omega / 2)
    double a{0.0};            // collective conserving shift, -(1/2) varkappa^2 * Coulomb integral, <= 0
    double x{0.0};            // dispersion (principal-value) energy shift
    double y{0.0};            // total transverse decay rate, >= 0
    cplx z_plus{0.0, 0.0};    // fast complex root (larger Im)
    cplx z_minus{0.0, 0.0};   // slow complex root
    cplx alpha_plus{0.0, 0.0};  // eigenvector slope for z_plus (NaN when b = 0)
    cplx alpha_minus{0.0, 0.0}; // eigenvector slope for z_minus (NaN when b = 0)
    double gamma_relax{0.0};  // longitudinal relaxation rate, equals b(1+c)
    double gamma_cons{0.0};   // energy-conserving dephasing rate
    double r{0.0};            // coupling ratio |a|/b (NaN when b = 0)
    bool has_alpha{false};
    bool has_r{false};
};

// Ensemble-level transverse decay summary.
struct DephasingSummary {
    double gamma{0.0};       // slowest collective decay rate, min_j min(Im z_j^+, Im z_j^-)
    double c_prime{0.0};     // envelope offset ln(2|kappa| + 1), > 0
    double gamma_prime{0.0}; // collective dephasing rate gamma / (ln2/(N-1) + c')
    double gamma_deph{0.0};  // gamma_relax/2 + gamma_cons + gamma_prime
};

// All leading-order resonance quantities for one spin. X comes from the dispersion integral;
// everything else is closed-form. Throws on invalid input; quadrature failures propagate.
RateSet compute_rateset(const SpinParams& spin, const EnsembleConfig& ens);

// The complex amplitude kappa weighting e^{i t z+} in the per-spin factor D(t):
// kappa = (1+c a+)/(1+c a+^2) * (a+ + rho11 (1 - a+)) for b > 0, evaluated at a+ = alpha_plus;
// the degenerate b = 0 path pairs rho11 with e^{+i|a|t}, i.e. kappa = rho11;
// a = 0 (no collective conserving coupling) forces kappa = 0 exactly.
cplx kappa_coefficient(const RateSet& rs, const Mat2& rho0);

// zeta = (1 + c alpha+)/(1 + c alpha+^2); requires b > 0.
cplx zeta_coefficient(const RateSet& rs);

// Ensemble decay summary; rho0s must parallel ratesets. For inhomogeneous input the
// envelope offset c' is the maximum over spins (preserves the upper-bound character).
// N < 2 gives gamma_prime = 0 (no other spins).
DephasingSummary dephasing_summary(const std::vector<RateSet>& ratesets, const std::vector<Mat2>& rho0s, int N);

// Long-time per-species dephasing rates:
//   gamma_deph_j(inf) = gamma_relax_j/2 + gamma_cons_j + (N_j - 1) Im z_j^- + sum_{k != j} N_k Im z_k^-.
std::vector<double> asymptotic_dephasing_multispecies(const std::vector<std::pair<int, RateSet>>& species);

} // namespace spinbath
