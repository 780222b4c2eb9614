#pragma once

#include "pairent/measure.hpp"

namespace pairent::convexroof {

/// Weighted pure-state ensemble reconstructing a target mixed state.
struct EnsembleDecomposition {
    std::vector<double> weights;
    std::vector<StateVector> members;

    DensityMatrix reconstruct() const;
    double reconstruction_residual(const DensityMatrix& target) const;
};

struct RoofOptions {
    int restarts = 64;
    int member_cap = 0;  // 0 means rank + 2
    std::uint64_t seed = 1;
    double tolerance = 1e-6;
};

struct RoofResult {
    double value = 0.0;  // upper bound on the convex-roof minimum
    EnsembleDecomposition decomposition;
    int restarts_used = 0;
    bool converged = false;
    std::vector<double> restart_trace;  // best-so-far after each restart
};

/// Spectral decomposition with zero-weight members dropped.
EnsembleDecomposition eigen_ensemble(const DensityMatrix& rho);

/// New members |φ_j⟩ ∝ Σ_i V_{ji} √p_i |e_i⟩ for an m×r isometry V
/// (V†V = I); all size-m decompositions of ρ arise this way.
EnsembleDecomposition steer_ensemble(const EnsembleDecomposition& base, const Matrix& isometry);

/// Multi-start minimization of the ensemble-averaged measure over
/// isometry-parameterized decompositions. The value is an upper bound.
RoofResult convex_roof(const DensityMatrix& rho, ProbeKind kind, const RoofOptions& options = {});

struct PairwiseConditionReport {
    double direct_value = 0.0;
    double roof_value = 0.0;
    bool satisfied = false;
};

/// Checks P(ρ) ≥ min Σ p_i P(pure members) on a two-qubit state.
PairwiseConditionReport pairwise_condition_check(const DensityMatrix& rho, ProbeKind kind,
                                                 const RoofOptions& options = {});

}  // namespace pairent::convexroof
