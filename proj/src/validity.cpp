// validity.cpp — Applicability margins for the perturbative resonance theory.

#include "spinbath/validity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace spinbath {

namespace {

// Half the smallest nonzero |sum_j omega_j d_j| over d_j in {-4,-2,0,2,4},
// enumerated with an incremental base-5 odometer. Sums that cancel down to
// rounding noise (relative to the largest gross magnitude 4 sum_j omega_j)
// count as zero and are excluded.
double exhaustive_half_gap(const std::vector<double>& omegas) {
    static const int kSteps[5] = {-4, -2, 0, 2, 4};
    const std::size_t n = omegas.size();
    std::vector<int> digit(n, 0);
    double gross = 0.0;
    for (std::size_t j = 0; j < n; ++j) gross += 4.0 * omegas[j];
    const double zero_floor = 1e-12 * gross;
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        // Each sum is recomputed from its digits: every term is an exact power-of-two
        // scaling of omega_j, so the per-sum rounding stays ~n ulps — far below the
        // zero floor. (An incremental running sum drifts past the floor by the end of
        // the enumeration and misclassifies exact cancellations as tiny gaps.)
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += kSteps[digit[j]] * omegas[j];
        if (std::abs(sum) > zero_floor) best = std::min(best, std::abs(sum));
        std::size_t pos = 0;
        while (pos < n && digit[pos] == 4) digit[pos++] = 0;
        if (pos == n) break;
        ++digit[pos];
    }
    return 0.5 * best;
}

} // namespace

ValidityReport check_validity(const EnsembleConfig& ens, double threshold) {
    validate_ensemble(ens);
    if (!(threshold > 0.0)) throw std::invalid_argument("check_validity: threshold must be > 0");
    const auto spins = expand_spins(ens);
    const int n_spins = static_cast<int>(spins.size());

    double alpha_max = 0.0, lambda_max = 0.0, alpha_c = 0.0, alpha_l = 0.0;
    double omega_min = std::numeric_limits<double>::infinity();
    for (const SpinParams* sp : spins) {
        const double al = std::abs(sp->lambda), ak = std::abs(sp->varkappa);
        const double am = std::abs(sp->mu), an = std::abs(sp->nu);
        alpha_max = std::max({alpha_max, al, ak, am, an});
        lambda_max = std::max(lambda_max, al);
        alpha_c = std::max({alpha_c, al, ak});
        alpha_l = std::max({alpha_l, am, an});
        omega_min = std::min(omega_min, sp->omega);
    }

    ValidityReport rep;
    rep.threshold = threshold;
    rep.alpha_max = alpha_max;

    if (n_spins <= 10) {
        std::vector<double> omegas;
        omegas.reserve(spins.size());
        for (const SpinParams* sp : spins) omegas.push_back(sp->omega);
        rep.delta = exhaustive_half_gap(omegas);
        rep.delta_exhaustive = true;
    } else {
        // Documented large-N surrogate: the smallest frequency and half the smallest
        // nonzero pairwise frequency difference are the generic near-cancellations.
        double half_pair = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ens.species.size(); ++i)
            for (std::size_t k = i + 1; k < ens.species.size(); ++k) {
                const double d = std::abs(ens.species[i].spin.omega - ens.species[k].spin.omega);
                if (d > 0.0) half_pair = std::min(half_pair, 0.5 * d);
            }
        rep.delta = std::min(omega_min, half_pair);
        rep.delta_exhaustive = false;
    }

    const double n2 = static_cast<double>(n_spins) * n_spins;
    rep.condition_gap.margin = n2 * alpha_max * alpha_max / rep.delta;
    rep.condition_gap.passed = rep.condition_gap.margin < threshold;
    rep.margin_lambda_only = n2 * lambda_max * lambda_max / rep.delta;
    rep.condition_collective.margin = alpha_c * alpha_c * n_spins / omega_min;
    rep.condition_collective.passed = rep.condition_collective.margin < threshold;
    rep.condition_local.margin = alpha_l / omega_min;
    rep.condition_local.passed = rep.condition_local.margin < threshold;

    // Frequencies must be either all equal or all mutually distinct.
    bool any_equal_pair = false;
    for (const auto& sp : ens.species)
        if (sp.count >= 2) any_equal_pair = true;
    for (std::size_t i = 0; i < ens.species.size() && !any_equal_pair; ++i)
        for (std::size_t k = i + 1; k < ens.species.size(); ++k)
            if (ens.species[i].spin.omega == ens.species[k].spin.omega) {
                any_equal_pair = true;
                break;
            }
    rep.assumption_a_ok = is_homogeneous(ens) || !any_equal_pair;
    return rep;
}

} // namespace spinbath
