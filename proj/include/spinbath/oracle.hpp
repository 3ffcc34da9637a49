// oracle.hpp — Exactly solvable pure-dephasing model and the comparison harness against the resonance theory.
#pragma once

#include <vector>

#include "spinbath/ensemble.hpp"

namespace spinbath {

// Pure-dephasing ensemble: spin j with initial state rho0_j, all other N-1 spins
// holding population p in the sigma = +1/2 state; only energy-conserving couplings.
struct OracleConfig {
    double beta{1.0};
    int N{2};
    double p{0.5};           // population of the +1/2 state on the other spins
    double varkappa_c{0.0};  // collective conserving coupling (homogeneous)
    double nu_l{0.0};        // local conserving coupling
    FormFactor f_c{};        // collective conserving form factor
    FormFactor f_l{};        // local conserving form factor
    Mat2 rho0_j{0.5, 0.0, 0.0, 0.5};
    double omega{1.0};       // spin frequency; enters only through the trivial phase
};

void validate_oracle(const OracleConfig& cfg);

// Closed-form off-diagonal evolution
//   [rho_t]_21 = [rho0]_21 e^{-i omega t} e^{-nu^2 G_l(t) - vk^2 G_c(t)}
//                * (p e^{-i vk^2 S_c(t)} + (1-p) e^{+i vk^2 S_c(t)})^{N-1},
// with the decoherence and phase integrals from the spectral module.
cplx exact_offdiagonal(const OracleConfig& cfg, double t);

// Same quantity via explicit enumeration of the 2^{N-1} spin configurations;
// test oracle only, N <= 12.
cplx exact_offdiagonal_enumerated(const OracleConfig& cfg, double t);

// Long-time product factor [p e^{-iat} + (1-p) e^{iat}]^{N-1} with
// a = -(1/2) varkappa_c^2 * Coulomb integral of f_c; log-polar evaluation.
cplx asymptotic_product_factor(const OracleConfig& cfg, double t);

// The exact formula with its time integrals replaced by their linear asymptotics
// (Gamma -> t Jtilde(0)/(2 beta), vk^2 S -> t a); coincides with the resonance-theory
// off-diagonal for pure-dephasing configurations.
cplx substituted_exact_offdiagonal(const OracleConfig& cfg, double t);

// The resonance-theory (main-term) off-diagonal for the same configuration.
cplx resonance_offdiagonal(const OracleConfig& cfg, double t);

// Grid comparison: the gating number is the maximum |substituted exact - resonance|;
// the un-substituted deviation |exact - resonance| is reported per point (it shrinks
// as the asymptotic regime is reached). Values are kept for CSV export.
struct OracleComparison {
    std::vector<double> times;
    std::vector<cplx> exact;            // un-substituted exact values
    std::vector<cplx> resonance;        // resonance-theory values
    std::vector<double> deviation;      // |exact - resonance| per point
    double max_substituted_deviation{0.0};
    double max_unsubstituted_deviation{0.0};
};

OracleComparison compare_resonance_vs_exact(const OracleConfig& cfg, const std::vector<double>& times);

} // namespace spinbath
