// validity.hpp — Perturbation-theory applicability checks, reported (never enforced) per ensemble.
#pragma once

#include "spinbath/ensemble.hpp"

namespace spinbath {

// One inequality "quantity << scale", operationalized as margin < threshold.
struct ValidityCondition {
    bool passed{true};
    double margin{0.0}; // the dimensionless ratio being compared against the threshold
};

// Applicability report. Margins are >= 0; pass iff margin < threshold.
struct ValidityReport {
    double alpha_max{0.0};             // largest of all coupling constants
    double delta{0.0};                 // half the smallest nonzero transition-energy gap
    bool delta_exhaustive{true};       // false when the documented N > 10 approximation was used
    ValidityCondition condition_gap;   // N^2 alpha_max^2 / delta (gate), strongest form
    double margin_lambda_only{0.0};    // N^2 lambda_max^2 / delta, reported alongside
    ValidityCondition condition_collective; // alpha_c^2 N / omega_min
    ValidityCondition condition_local;      // alpha_l / omega_min
    bool assumption_a_ok{true};        // false when two spin frequencies coincide outside the homogeneous case
    double threshold{0.1};
};

// Computes the report; never throws for valid ensembles and never blocks a run —
// the command-line layer decides what to do with failures.
// delta: exhaustive enumeration of (1/2) min nonzero |sum_j omega_j d_j| over
// d_j in {-4,-2,0,2,4} for N <= 10; for larger N the documented approximation
// min(min_j omega_j, (1/2) min nonzero pairwise |omega_i - omega_j|) is used
// (for homogeneous frequencies both give delta = omega).
ValidityReport check_validity(const EnsembleConfig& ens, double threshold = 0.1);

} // namespace spinbath
