#pragma once

#include "pairent/measure.hpp"

namespace pairent::locc {

/// Single-site instrument: Kraus operators with Σ K†K = I.
struct LocalInstrument {
    int site = 0;
    std::vector<Matrix> kraus;
};

struct LoccBranch {
    double probability = 0.0;
    StateVector state;
};

/// Validates completeness within 1e-10.
LocalInstrument make_instrument(int site, std::vector<Matrix> kraus);

/// k Ginibre matrices A_i normalized by (Σ A†A)^{-1/2}. Site is left at 0.
LocalInstrument random_instrument(int local_dim, int outcomes, std::uint64_t seed);

/// Branches with probability ‖K_i ψ‖² and normalized post-states;
/// branches below probability 1e-14 are dropped.
std::vector<LoccBranch> apply_instrument(const StateVector& psi, const LocalInstrument& inst);

struct LoccTrialReport {
    double initial_m = 0.0;
    std::vector<double> round_averages;  // Σ p·M(branch) after each round
    double worst_margin = 0.0;           // min over rounds of M_before − M_after
    bool violation = false;              // worst margin below −1e-8
};

/// L rounds of random 2-outcome single-site instruments; site choice and
/// instrument draws are conditioned on prior outcomes via per-branch seeds.
LoccTrialReport locc_monotonicity_trial(const StateVector& psi, ProbeKind kind, int rounds,
                                        std::uint64_t seed);

}  // namespace pairent::locc
