// lso.cpp — Level shift operators, block eigensystems (via Eigen), resonance enumeration.

#include "spinbath/lso.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "spinbath/quadrature.hpp"
#include "spinbath/spectral.hpp"

namespace spinbath {

namespace {

void check_label(const EnergyLabel& label, const EnsembleConfig& ens) {
    if (static_cast<int>(label.deltas.size()) != ens.n_total())
        throw std::invalid_argument("energy label: one delta per spin is required");
    for (int d : label.deltas)
        if (d != -2 && d != 0 && d != 2)
            throw std::invalid_argument("energy label: deltas must lie in {-2, 0, +2}");
}

} // namespace

double label_energy(const EnergyLabel& label, const EnsembleConfig& ens) {
    check_label(label, ens);
    const auto spins = expand_spins(ens);
    double e = 0.0;
    for (std::size_t n = 0; n < spins.size(); ++n) e -= 0.5 * spins[n]->omega * label.deltas[n];
    return e;
}

int label_zero_count(const EnergyLabel& label) {
    int n0 = 0;
    for (int d : label.deltas)
        if (d == 0) ++n0;
    return n0;
}

LevelShiftOperator build_level_shift(const EnergyLabel& label, const EnsembleConfig& ens) {
    check_label(label, ens);
    validate_ensemble(ens);
    const auto spins = expand_spins(ens);
    const double beta = ens.beta;
    const double ci_c = bath_coulomb_integral(ens.f_c);

    LevelShiftOperator op;
    for (std::size_t n = 0; n < spins.size(); ++n)
        if (label.deltas[n] != 0) op.e0 += spins[n]->varkappa * label.deltas[n];

    double x_e = 0.0, y_e = 0.0;
    for (std::size_t n = 0; n < spins.size(); ++n) {
        const SpinParams& sp = *spins[n];
        if (label.deltas[n] != 0) {
            const double sigma = 0.5 * label.deltas[n];
            const double l2 = sp.lambda * sp.lambda, m2 = sp.mu * sp.mu;
            if (l2 != 0.0 || m2 != 0.0) {
                x_e += sigma * pv_dispersion_integral(ens.g_c, sp.g_loc, sp.lambda, sp.mu, sp.omega, beta).value;
                double j_total = 0.0;
                if (l2 != 0.0) j_total += l2 * spectral_density(ens.g_c, sp.omega);
                if (m2 != 0.0) j_total += m2 * spectral_density(sp.g_loc, sp.omega);
                y_e += 0.125 * j_total * coth_stable(0.5 * beta * sp.omega);
            }
            y_e += 0.5 * sp.nu * sp.nu * spectral_density_slope_zero(sp.f_loc) / beta;
        } else {
            LevelShiftOperator::Block blk;
            blk.spin_index = static_cast<int>(n);
            blk.c = std::exp(-beta * sp.omega);
            double j_total = 0.0;
            if (sp.lambda != 0.0) j_total += sp.lambda * sp.lambda * spectral_density(ens.g_c, sp.omega);
            if (sp.mu != 0.0) j_total += sp.mu * sp.mu * spectral_density(sp.g_loc, sp.omega);
            blk.b = 0.25 * j_total / (-std::expm1(-beta * sp.omega));
            blk.r = 0.25 * sp.varkappa * op.e0 * ci_c;
            if (blk.r == 0.0) blk.r = 0.0; // normalize -0.0 so the r = 0 label rule triggers cleanly
            const cplx ib(0.0, blk.b);
            blk.matrix.m11 = ib * blk.c - blk.r;
            blk.matrix.m12 = -ib * blk.c;
            blk.matrix.m21 = -ib;
            blk.matrix.m22 = ib + blk.r;
            op.blocks.push_back(blk);
        }
    }
    y_e += 0.125 * op.e0 * op.e0 * spectral_density_slope_zero(ens.f_c) / beta;
    op.scalar_part = cplx(x_e, y_e);
    return op;
}

BlockEigensystem block_eigensystem(const Mat2& block, double c) {
    if (!(c > 0.0) || !(c < 1.0))
        throw std::invalid_argument("block_eigensystem: c must lie in (0, 1)");
    Eigen::Matrix2cd a;
    a << block.m11, block.m12, block.m21, block.m22;
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(a, true);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("block_eigensystem: eigensolver failed to converge");
    const cplx l0 = solver.eigenvalues()(0), l1 = solver.eigenvalues()(1);
    const double scale = std::max(1.0, std::max(std::abs(l0), std::abs(l1)));
    if (std::abs(l0 - l1) <= 1e-14 * scale)
        throw std::runtime_error("block_eigensystem: coincident eigenvalues (simple-eigenvalue hypothesis fails)");

    // Label the pair. The r = 0 closed forms pin z_plus = 0 (smaller |Im|); otherwise
    // the fast root z_plus carries the larger imaginary part (real part breaks ties).
    const double r_detected = -block.m11.real();
    int idx_plus;
    if (r_detected == 0.0) {
        idx_plus = (std::abs(l0.imag()) <= std::abs(l1.imag())) ? 0 : 1;
    } else if (l0.imag() != l1.imag()) {
        idx_plus = (l0.imag() > l1.imag()) ? 0 : 1;
    } else {
        idx_plus = (l0.real() >= l1.real()) ? 0 : 1;
    }
    const int idx_minus = 1 - idx_plus;

    BlockEigensystem sys;
    sys.z_plus = solver.eigenvalues()(idx_plus);
    sys.z_minus = solver.eigenvalues()(idx_minus);

    cplx alpha_vals[2];
    const int order[2] = {idx_plus, idx_minus};
    for (int k = 0; k < 2; ++k) {
        const Eigen::Vector2cd v = solver.eigenvectors().col(order[k]);
        if (std::abs(v(0)) <= 1e-14 * v.norm())
            throw std::invalid_argument(
                "block_eigensystem: eigenvector has vanishing first component (requires b > 0)");
        alpha_vals[k] = v(1) / v(0);
    }

    auto fill = [c](cplx alpha, cplx* xi, cplx* xi_tilde) {
        xi[0] = cplx(1.0, 0.0);
        xi[1] = alpha;
        const cplx ca = c * std::conj(alpha);
        const cplx denom = 1.0 + ca * std::conj(alpha);
        if (std::abs(denom) < 1e-300)
            throw std::runtime_error("block_eigensystem: dual-vector normalization vanished");
        xi_tilde[0] = 1.0 / denom;
        xi_tilde[1] = ca / denom;
    };
    fill(alpha_vals[0], sys.xi_plus, sys.xi_tilde_plus);
    fill(alpha_vals[1], sys.xi_minus, sys.xi_tilde_minus);
    return sys;
}

std::vector<cplx> resonance_energies(const EnergyLabel& label, const EnsembleConfig& ens) {
    const LevelShiftOperator op = build_level_shift(label, ens);
    const int n0 = static_cast<int>(op.blocks.size());
    if (n0 > 20)
        throw std::invalid_argument(
            "resonance_energies: more than 20 unflipped spins; use resonance_energy with explicit patterns");
    const double e = label_energy(label, ens);

    std::vector<cplx> z_pm(2 * static_cast<std::size_t>(n0));
    for (int k = 0; k < n0; ++k) {
        const BlockEigensystem sys = block_eigensystem(op.blocks[k].matrix, op.blocks[k].c);
        z_pm[2 * k] = sys.z_plus;
        z_pm[2 * k + 1] = sys.z_minus;
    }

    const std::size_t count = std::size_t{1} << n0;
    std::vector<cplx> out(count);
    for (std::size_t bits = 0; bits < count; ++bits) {
        cplx eps = e + op.scalar_part;
        for (int k = 0; k < n0; ++k) eps += z_pm[2 * k + ((bits >> k) & 1u)];
        out[bits] = eps;
    }

    // Simplicity hypothesis: all resonance energies must be pairwise distinct.
    double max_abs = 1.0;
    for (const cplx& v : out) max_abs = std::max(max_abs, std::abs(v));
    const double tol = 1e-12 * max_abs;
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (out[i].real() != out[j].real()) return out[i].real() < out[j].real();
        return out[i].imag() < out[j].imag();
    });
    for (std::size_t i = 0; i + 1 < count; ++i) {
        for (std::size_t j = i + 1; j < count && out[idx[j]].real() - out[idx[i]].real() <= tol; ++j) {
            if (std::abs(out[idx[i]] - out[idx[j]]) <= tol)
                throw std::runtime_error("resonance_energies: coincident resonance energies detected");
        }
    }
    return out;
}

cplx resonance_energy(const EnergyLabel& label, const EnsembleConfig& ens, const std::vector<bool>& pattern) {
    const LevelShiftOperator op = build_level_shift(label, ens);
    if (pattern.size() != op.blocks.size())
        throw std::invalid_argument("resonance_energy: pattern must have one entry per unflipped spin");
    cplx eps = label_energy(label, ens) + op.scalar_part;
    for (std::size_t k = 0; k < op.blocks.size(); ++k) {
        const BlockEigensystem sys = block_eigensystem(op.blocks[k].matrix, op.blocks[k].c);
        eps += pattern[k] ? sys.z_plus : sys.z_minus;
    }
    return eps;
}

} // namespace spinbath
