// dynamics.hpp — Observable evolution, collective factors, trajectories and modified-Bloch coefficients.
#pragma once

#include <cstdint>
#include <vector>

#include "spinbath/ensemble.hpp"
#include "spinbath/rates.hpp"

namespace spinbath {

// Every `rates` argument below is parallel to ens.species (one RateSet per species,
// in species order); spin indices j refer to the expanded spin list.

// Per-spin transverse factor D(t) = kappa e^{i t z+} + (1 - kappa) e^{i t z-}; D(0) = 1.
struct DFactor {
    cplx kappa{0.0, 0.0};
    cplx z_plus{0.0, 0.0};
    cplx z_minus{0.0, 0.0};
};

// Builds the factor for one spin; takes the degenerate pure-dephasing path when b = 0
// (kappa = rho11, z± = ±|a| — the pairing that matches the exactly solvable model).
DFactor make_d_factor(const RateSet& rs, const Mat2& rho0);

cplx d_factor_value(const DFactor& d, double t);

// Single-spin convenience mirroring the module contract.
cplx d_factor(const RateSet& rs, const Mat2& rho0, double t);

// Analytic logarithmic derivative Ddot/D, evaluated in the rescaled form
// (i z+ kappa e^{it(z+-z-)} + i z- (1-kappa)) / (kappa e^{it(z+-z-)} + 1 - kappa).
// Converges to i z- when Im z+ > Im z-.
cplx d_log_derivative(const DFactor& d, double t);

// A complex number carried as log-magnitude plus phase, so huge powers of D never
// overflow and the phase can be reported as a continuous function of time.
struct ComplexLog {
    double log_abs{0.0};
    double phase{0.0};
    cplx value() const;
};

// Collective factor C_j(N,t) = prod_{l != j} D_l(t) at a single time; the phase is
// the principal argument accumulated factor by factor (integer powers make the
// complex value branch-free). |D_l| below 1e-300 is clamped in log domain and flagged.
ComplexLog collective_factor(int j, const EnsembleConfig& ens, const std::vector<RateSet>& rates, double t,
                             bool* clamped = nullptr);

// Grid version with the continuity-tracked phase: each factor's argument is unwrapped
// sequentially along the grid by nearest-branch selection, subdividing internally when
// the argument moves more than pi/2 between consecutive samples.
std::vector<ComplexLog> collective_factor_grid(int j, const EnsembleConfig& ens,
                                               const std::vector<RateSet>& rates,
                                               const std::vector<double>& times);

// Leading-order expectation value of a single-spin observable `a_matrix` on spin j:
// equilibrium term + decaying population term + the two off-diagonal resonance terms
// (the positive-frequency term is the documented conjugate of the negative one).
// Main term only; the perturbative remainder is dropped by design.
cplx evolve_observable(const Mat2& a_matrix, int j, const EnsembleConfig& ens,
                       const std::vector<RateSet>& rates, double t);

// Sampled ensemble dynamics. Totals are over all spins; per-species tracks carry the
// block-resolved transverse data used by the modified-Bloch outputs.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> sz;            // total <S^z>_t, in [-N/2, N/2]
    std::vector<cplx> sminus;          // total <S^->_t
    struct SpeciesTrack {
        std::string label;
        std::vector<double> sz;
        std::vector<cplx> sminus;
        std::vector<double> gamma_t;          // modified-Bloch decay rate (NaN where undefined)
        std::vector<double> b_t;              // modified-Bloch effective field (NaN where undefined)
        std::vector<double> log_c_magnitude;  // ln|C_j(N,t)|
        std::vector<double> c_phase;          // unwrapped phase of C_j(N,t)
        std::vector<std::uint8_t> bloch_defined;
    };
    std::vector<SpeciesTrack> per_species;
};

// Time grid helpers used by the command-line runner and tests.
std::vector<double> linear_grid(double t_max, int num_points);
std::vector<double> log_grid(double t_min, double t_max, int num_points);

// <S^z>, <S^->, ln|C| per species and in total on the given grid.
Trajectory magnetization_trajectory(const EnsembleConfig& ens, const std::vector<RateSet>& rates,
                                    const std::vector<double>& times);

// Modified-Bloch coefficients per species:
//   Gamma_s(t) = gamma_relax_s/2 + gamma_cons_s - (N_s - 1) Re LD_s - sum_{k != s} N_k Re LD_k,
//   B_s(t)     = -omega_s + x_s + (N_s - 1) Im LD_s + sum_{k != s} N_k Im LD_k,
// with LD = Ddot/D. Points where any required |D| < 1e-12 are marked undefined (NaN).
struct BlochCoefficients {
    std::vector<double> times;
    struct SpeciesTrack {
        std::string label;
        std::vector<double> gamma_t;
        std::vector<double> b_t;
        std::vector<std::uint8_t> defined;
    };
    std::vector<SpeciesTrack> per_species;
};

BlochCoefficients bloch_coefficients(const EnsembleConfig& ens, const std::vector<RateSet>& rates,
                                     const std::vector<double>& times);

} // namespace spinbath
