#pragma once

#include <cstdint>

#include "pairent/probes.hpp"

namespace pairent {

enum class StateClass { Separable, Homogeneous, Heterogeneous };

const char* state_class_name(StateClass c);

namespace measure {

/// Probe values over all C(N,2) unordered site pairs, (i<j) lexicographic.
struct PairProfile {
    ProbeKind kind = ProbeKind::QuasiConcurrence;
    int num_sites = 0;
    int local_dim = 2;
    std::vector<double> values;

    static int pair_count(int n) { return n * (n - 1) / 2; }
    static int pair_index(int n, int i, int j);
    double value(int i, int j) const { return values[pair_index(num_sites, i, j)]; }
};

struct MeasureResult {
    PairProfile profile;
    double m_value = 0.0;        // factor · mean of profile
    double mt_value = 0.0;       // plain sum of profile
    double factor = 1.0;
    StateClass classification = StateClass::Separable;
    bool genuine_global = false;
};

PairProfile pair_profile(const StateVector& psi, ProbeKind kind);
PairProfile pair_profile(const DensityMatrix& rho, ProbeKind kind);

/// Probe-dependent normalization: 1 for the quasi-concurrence,
/// 2 − δ_{N,2} for the mutual-information probe.
double normalization_factor(ProbeKind kind, int num_sites);

/// Direct (pure-state) evaluation of the averaged measure. Mixed inputs
/// are evaluated probe-on-mixed; the convex-roof value lives in convexroof.
MeasureResult measure_m(const StateVector& psi, ProbeKind kind);
MeasureResult measure_m(const DensityMatrix& rho, ProbeKind kind);

StateClass classify(const PairProfile& profile, double tol = 1e-9);
bool genuine_global(const PairProfile& profile, double tol = 1e-9);

/// Tensors |0…0⟩ blanks into the complementary sites: the state's sites
/// land at `placement` (increasing) inside a `total_sites` register.
StateVector embed_with_blank(const StateVector& psi, int total_sites,
                             const SiteSubset& placement);

struct AdditivityReport {
    double m_lhs, m_rhs, m_gap;     // padded form: M(σ⊗η) vs M(σ⊗0)+M(0⊗η)
    double mt_lhs, mt_rhs, mt_gap;  // traditional form on M^T
};

AdditivityReport additivity_check(const StateVector& sigma, const StateVector& eta,
                                  ProbeKind kind);

struct SsaOptions {
    int restarts = 16;
    std::uint64_t seed = 1;
    double tolerance = 1e-6;
};

/// Strong-super-additivity probe: lhs = M of the full pure state,
/// rhs is a sum of convex-roof upper bounds for the padded reductions.
/// A negative margin only flags a candidate for deeper optimization.
struct SsaReport {
    double lhs = 0.0;
    double rhs_upper_bound = 0.0;
    double margin = 0.0;
    bool falsification_candidate = false;
};

SsaReport ssa_falsify(const StateVector& psi, const SiteSubset& a, const SiteSubset& ap,
                      const SiteSubset& b, const SiteSubset& bp, ProbeKind kind,
                      const SsaOptions& options = {});

}  // namespace measure
}  // namespace pairent
