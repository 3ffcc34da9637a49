// ensemble.cpp — Validation and expansion helpers for spin ensembles.

#include "spinbath/ensemble.hpp"

#include <cmath>

namespace spinbath {

Mat2 density_from_bloch(double vx, double vy, double vz) {
    const double norm2 = vx * vx + vy * vy + vz * vz;
    if (norm2 > 1.0 + 1e-12)
        throw std::invalid_argument("density_from_bloch: Bloch vector length exceeds 1");
    Mat2 rho;
    rho.m11 = 0.5 * (1.0 + vz);
    rho.m22 = 0.5 * (1.0 - vz);
    rho.m12 = cplx(0.5 * vx, -0.5 * vy);
    rho.m21 = cplx(0.5 * vx, 0.5 * vy);
    return rho;
}

void validate_density(const Mat2& rho, const std::string& where) {
    constexpr double tol = 1e-10;
    if (std::abs(rho.m11.imag()) > tol || std::abs(rho.m22.imag()) > tol)
        throw std::invalid_argument(where + ": density matrix diagonal must be real");
    if (std::abs(rho.m12 - std::conj(rho.m21)) > tol)
        throw std::invalid_argument(where + ": density matrix must be Hermitian");
    const double tr = rho.m11.real() + rho.m22.real();
    if (std::abs(tr - 1.0) > tol)
        throw std::invalid_argument(where + ": density matrix trace must be 1");
    // Eigenvalues of a Hermitian 2x2 with trace 1: 1/2 +- sqrt((p - 1/2)^2 + |r|^2).
    const double p = rho.m11.real();
    const double half_gap = std::sqrt((p - 0.5) * (p - 0.5) + std::norm(rho.m21));
    if (0.5 - half_gap < -tol || 0.5 + half_gap > 1.0 + tol)
        throw std::invalid_argument(where + ": density matrix must be positive semidefinite");
}

void validate_ensemble(const EnsembleConfig& ens) {
    if (!(ens.beta > 0.0)) throw std::invalid_argument("ensemble: beta must be > 0");
    validate(ens.g_c);
    validate(ens.f_c);
    if (ens.species.empty()) throw std::invalid_argument("ensemble: at least one species is required");
    for (std::size_t s = 0; s < ens.species.size(); ++s) {
        const Species& sp = ens.species[s];
        const std::string where = "ensemble species '" + sp.label + "'";
        if (sp.count < 1) throw std::invalid_argument(where + ": count must be >= 1");
        if (!(sp.spin.omega > 0.0)) throw std::invalid_argument(where + ": omega must be > 0");
        if (!std::isfinite(sp.spin.lambda) || !std::isfinite(sp.spin.varkappa) ||
            !std::isfinite(sp.spin.mu) || !std::isfinite(sp.spin.nu))
            throw std::invalid_argument(where + ": couplings must be finite");
        validate(sp.spin.g_loc);
        validate(sp.spin.f_loc);
        validate_density(sp.spin.rho0, where);
    }
}

std::vector<const SpinParams*> expand_spins(const EnsembleConfig& ens) {
    std::vector<const SpinParams*> out;
    out.reserve(static_cast<std::size_t>(ens.n_total()));
    for (const auto& sp : ens.species)
        for (int k = 0; k < sp.count; ++k) out.push_back(&sp.spin);
    return out;
}

bool is_homogeneous(const EnsembleConfig& ens) {
    if (ens.species.empty()) return true;
    const double w0 = ens.species.front().spin.omega;
    for (const auto& sp : ens.species)
        if (sp.spin.omega != w0) return false;
    return true;
}

} // namespace spinbath
