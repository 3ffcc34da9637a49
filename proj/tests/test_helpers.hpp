// test_helpers.hpp — Shared builders for the unit suites: quick spins, ensembles, matrices.
#pragma once

#include <complex>
#include <vector>

#include "spinbath/ensemble.hpp"
#include "spinbath/rates.hpp"

namespace testutil {

using spinbath::cplx;
using spinbath::EnsembleConfig;
using spinbath::FormFactor;
using spinbath::Mat2;
using spinbath::RateSet;
using spinbath::Species;
using spinbath::SpinParams;

struct Couplings {
    double lambda{0.0};
    double varkappa{0.0};
    double mu{0.0};
    double nu{0.0};
};

inline SpinParams make_spin(double omega, const Couplings& cp,
                            const Mat2& rho0 = spinbath::density_from_bloch(0.3, -0.2, 0.4)) {
    SpinParams sp;
    sp.omega = omega;
    sp.lambda = cp.lambda;
    sp.varkappa = cp.varkappa;
    sp.mu = cp.mu;
    sp.nu = cp.nu;
    sp.g_loc = FormFactor{1, 1, 0.8};
    sp.f_loc = FormFactor{0, 1, 0.6};
    sp.rho0 = rho0;
    return sp;
}

// One species of `count` identical spins with characteristic form factors.
inline EnsembleConfig make_ensemble(int count, const SpinParams& spin, double beta) {
    EnsembleConfig ens;
    ens.beta = beta;
    ens.g_c = FormFactor{0, 1, 1.0};
    ens.f_c = FormFactor{0, 2, 1.2};
    ens.species.push_back(Species{"A", count, spin});
    return ens;
}

inline std::vector<RateSet> rates_per_species(const EnsembleConfig& ens) {
    std::vector<RateSet> out;
    out.reserve(ens.species.size());
    for (const auto& sp : ens.species) out.push_back(spinbath::compute_rateset(sp.spin, ens));
    return out;
}

inline double rel_diff(double got, double want) {
    const double scale = std::abs(want) > 0.0 ? std::abs(want) : 1.0;
    return std::abs(got - want) / scale;
}

inline double rel_diff(const cplx& got, const cplx& want) {
    const double scale = std::abs(want) > 0.0 ? std::abs(want) : 1.0;
    return std::abs(got - want) / scale;
}

} // namespace testutil
