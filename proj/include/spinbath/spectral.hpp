// spectral.hpp — Reservoir integrals: dispersion (principal value), decoherence and phase-drift time integrals.
#pragma once

#include "spinbath/form_factor.hpp"
#include "spinbath/quadrature.hpp"

namespace spinbath {

// Dispersion integral
//   X = (1/8pi) P.V. \int_R [lambda^2 J_gc(|u|) + mu^2 J_gloc(|u|)] coth(beta|u|/2) / (u + omega) du.
// The principal value at u = -omega is handled by a symmetric exclusion window with
// odd-part subtraction; the integrand's |u| kink at u = 0 gets its own segment split;
// the domain is truncated where e^{-2|u|^m} < 1e-16.
SpectralResult pv_dispersion_integral(const FormFactor& gc, const FormFactor& gloc, double lambda, double mu,
                                      double omega, double beta);

// Independent cross-check for pv_dispersion_integral: plain trapezoid sums over
// log-graded grids outside shrinking exclusion windows delta in {1e-2, 1e-3, 1e-4},
// extrapolated to delta -> 0 by a quadratic fit in delta. Slow and simple on purpose.
double pv_dispersion_brute_force(const FormFactor& gc, const FormFactor& gloc, double lambda, double mu,
                                 double omega, double beta);

// Decoherence function Gamma(t) = \int_0^infty G_h(r) coth(beta r / 2) sin^2(rt/2) dr.
// Oscillatory tail handled by splitting at half-period boundaries pi/t.
double decoherence_gamma(const FormFactor& h, double beta, double t);

// Phase drift S(t) = -(1/2) \int_0^infty G_h(r) (rt - sin(rt)) dr; S(t) <= 0.
double lamb_shift_s(const FormFactor& h, double t);

} // namespace spinbath
