// lso.hpp — Level shift operators: scalar part, per-spin 2x2 blocks, eigensystems, resonance energies.
#pragma once

#include <vector>

#include "spinbath/ensemble.hpp"

namespace spinbath {

// A transition label: per-spin population change delta_n in {-2, 0, +2}.
// The induced transition energy is e = -(1/2) sum_n omega_n delta_n.
struct EnergyLabel {
    std::vector<int> deltas;
};

double label_energy(const EnergyLabel& label, const EnsembleConfig& ens);

// Number of unflipped spins (delta_n = 0), i.e. the count of 2x2 blocks.
int label_zero_count(const EnergyLabel& label);

// The second-order effective operator for one transition energy: a complex scalar
// x_e + i y_e plus one 2x2 block per unflipped spin,
//   block_n = i b_n [[c_n, -c_n], [-1, 1]] - r_n [[1, 0], [0, -1]].
struct LevelShiftOperator {
    cplx scalar_part{0.0, 0.0};
    struct Block {
        int spin_index{0};  // position in the expanded spin list
        Mat2 matrix{};
        double b{0.0};      // thermal exchange rate of this spin
        double c{0.0};      // detailed-balance factor of this spin
        double r{0.0};      // conserving off-balance (1/4) varkappa_n e0 * Coulomb integral
    };
    std::vector<Block> blocks;
    double e0{0.0};         // conserving weight of the flipped spins, sum_{delta_n != 0} varkappa_n delta_n
};

// Assembles the operator for a label. Throws std::invalid_argument on a malformed label.
LevelShiftOperator build_level_shift(const EnergyLabel& label, const EnsembleConfig& ens);

// Eigensystem of one block, computed by a numeric eigensolver (independent of the
// closed-form root path in the rates module — the two are cross-checked in tests).
// Right vectors are scaled to first component 1 (xi = [1, alpha]); tilde vectors are
// [1, c conj(alpha)] / (1 + c conj(alpha)^2), making <xi^p, xi~^q> = delta_pq.
// Label order: descending Im (descending Re on ties), except r = 0 blocks, where the
// closed forms pin z_plus = 0 (the eigenvalue of smaller |Im|) and z_minus = i b(1+c).
struct BlockEigensystem {
    cplx z_plus, z_minus;
    cplx xi_plus[2], xi_minus[2];
    cplx xi_tilde_plus[2], xi_tilde_minus[2];
};

// Throws std::runtime_error when the eigenvalues coincide (the simple-eigenvalue
// hypothesis fails) and std::invalid_argument when an eigenvector has a vanishing
// first component (the [1, alpha] normalization requires b > 0 blocks).
BlockEigensystem block_eigensystem(const Mat2& block, double c);

// Resonance energies bifurcating from a label: for each sign pattern over the
// unflipped spins, e + x_e + i y_e + sum_k z_k^{pattern_k}. Returns all 2^{N0}
// values ordered by pattern bits (bit k set = minus branch for block k).
// Guards: N0 <= 20 (use resonance_energy for an explicit pattern beyond that);
// pairwise-coincident results raise std::runtime_error (simplicity hypothesis).
std::vector<cplx> resonance_energies(const EnergyLabel& label, const EnsembleConfig& ens);

// Single resonance energy for one explicit sign pattern (true = plus branch),
// `pattern` parallel to the blocks of the label's operator.
cplx resonance_energy(const EnergyLabel& label, const EnsembleConfig& ens, const std::vector<bool>& pattern);

} // namespace spinbath
