// ensemble.hpp — Spin and ensemble descriptions shared by every module.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinbath/form_factor.hpp"

namespace spinbath {

using cplx = std::complex<double>;

// Tiny dense 2x2 complex matrix; all observables and density matrices live here.
struct Mat2 {
    cplx m11{0.0}, m12{0.0};
    cplx m21{0.0}, m22{0.0};
};

inline Mat2 identity2() { return Mat2{1.0, 0.0, 0.0, 1.0}; }

// rho0 = (1 + v . sigma)/2 from a Bloch vector (vx, vy, vz), |v| <= 1.
// Convention: row/column 1 is the sigma = +1/2 eigenstate, and the transverse
// expectation used throughout is <S^-> = rho_21 = (vx + i vy)/2.
Mat2 density_from_bloch(double vx, double vy, double vz);

// Checks Hermiticity, unit trace and eigenvalues in [0, 1]; throws std::invalid_argument.
void validate_density(const Mat2& rho, const std::string& where);

// One spin's frequency, its four coupling constants, local form factors and initial state.
struct SpinParams {
    double omega{1.0};       // spin frequency (dimensionless units)
    double lambda{0.0};      // energy-exchange collective coupling
    double varkappa{0.0};    // energy-conserving collective coupling
    double mu{0.0};          // energy-exchange local coupling
    double nu{0.0};          // energy-conserving local coupling
    FormFactor g_loc{};      // local exchange form factor
    FormFactor f_loc{};      // local conserving form factor
    Mat2 rho0{0.5, 0.0, 0.0, 0.5}; // initial reduced density matrix
};

// A block of `count` identical spins.
struct Species {
    std::string label{"A"};
    int count{1};
    SpinParams spin{};
};

// Inverse temperature, collective form factors, and the spins — stored uniformly
// as species blocks (an explicit per-spin list becomes count-1 blocks).
struct EnsembleConfig {
    double beta{1.0};            // inverse temperature
    FormFactor g_c{};            // collective exchange form factor
    FormFactor f_c{};            // collective conserving form factor
    std::vector<Species> species{};
    bool listed_per_spin{false}; // true when the input enumerated spins one by one

    int n_total() const {
        int n = 0;
        for (const auto& s : species) n += s.count;
        return n;
    }
};

// Throws std::invalid_argument if counts, beta, omegas or densities are invalid.
void validate_ensemble(const EnsembleConfig& ens);

// Flat view: the SpinParams of each of the N spins in order (species expanded).
std::vector<const SpinParams*> expand_spins(const EnsembleConfig& ens);

// True when every spin frequency (and species template) is identical.
bool is_homogeneous(const EnsembleConfig& ens);

} // namespace spinbath
