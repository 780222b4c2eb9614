#include "pairent/measure.hpp"

#include <algorithm>
#include <numeric>

namespace pairent {

const char* state_class_name(StateClass c) {
    switch (c) {
        case StateClass::Separable: return "Separable";
        case StateClass::Homogeneous: return "Homogeneous";
        default: return "Heterogeneous";
    }
}

namespace measure {

int PairProfile::pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n || i == j) throw UsageError("PairProfile: bad pair index");
    // pairs (0,1)..(0,n-1),(1,2)..: offset of row i is i*n - i(i+3)/2 - 1 + j
    return i * n - i * (i + 3) / 2 + j - 1;
}

namespace {

template <typename S>
PairProfile profile_impl(const S& state, ProbeKind kind,
                         DensityMatrix (*reduce)(const S&, const SiteSubset&)) {
    if (state.num_sites < 2) throw UsageError("pair_profile: need at least two sites");
    if (kind == ProbeKind::QuasiConcurrence && state.local_dim != 2)
        throw UsageError("pair_profile: quasi-concurrence requires qubits");
    PairProfile profile{kind, state.num_sites, state.local_dim, {}};
    profile.values.reserve(PairProfile::pair_count(state.num_sites));
    for (int i = 0; i < state.num_sites; ++i)
        for (int j = i + 1; j < state.num_sites; ++j)
            profile.values.push_back(probes::probe_eval(kind, reduce(state, {i, j})));
    return profile;
}

MeasureResult result_from_profile(PairProfile profile) {
    MeasureResult r;
    r.factor = normalization_factor(profile.kind, profile.num_sites);
    r.mt_value = std::accumulate(profile.values.begin(), profile.values.end(), 0.0);
    r.m_value = r.factor * r.mt_value / static_cast<double>(profile.values.size());
    r.classification = classify(profile);
    r.genuine_global = genuine_global(profile);
    r.profile = std::move(profile);
    return r;
}

}  // namespace

PairProfile pair_profile(const StateVector& psi, ProbeKind kind) {
    return profile_impl<StateVector>(psi, kind, &qstate::reduced);
}

PairProfile pair_profile(const DensityMatrix& rho, ProbeKind kind) {
    return profile_impl<DensityMatrix>(rho, kind, &qstate::partial_trace);
}

double normalization_factor(ProbeKind kind, int num_sites) {
    if (num_sites < 2) throw UsageError("normalization_factor: need at least two sites");
    if (kind == ProbeKind::QuasiConcurrence) return 1.0;
    return num_sites == 2 ? 1.0 : 2.0;
}

MeasureResult measure_m(const StateVector& psi, ProbeKind kind) {
    return result_from_profile(pair_profile(psi, kind));
}

MeasureResult measure_m(const DensityMatrix& rho, ProbeKind kind) {
    return result_from_profile(pair_profile(rho, kind));
}

StateClass classify(const PairProfile& profile, double tol) {
    const auto [lo, hi] = std::minmax_element(profile.values.begin(), profile.values.end());
    if (*hi <= tol) return StateClass::Separable;
    if (*hi - *lo <= tol) return StateClass::Homogeneous;
    return StateClass::Heterogeneous;
}

bool genuine_global(const PairProfile& profile, double tol) {
    return std::all_of(profile.values.begin(), profile.values.end(),
                       [tol](double v) { return v > tol; });
}

StateVector embed_with_blank(const StateVector& psi, int total_sites,
                             const SiteSubset& placement) {
    qstate::check_subset(placement, total_sites);
    if (static_cast<int>(placement.size()) != psi.num_sites)
        throw UsageError("embed_with_blank: placement size does not match the state");
    const int d = psi.local_dim;
    StateVector out{total_sites, d, Vector::Zero(qstate::pow_int(d, total_sites))};
    std::vector<std::int64_t> in_stride(placement.size()), out_stride(placement.size());
    for (std::size_t k = 0; k < placement.size(); ++k) {
        in_stride[k] = qstate::pow_int(d, psi.num_sites - 1 - static_cast<int>(k));
        out_stride[k] = qstate::pow_int(d, total_sites - 1 - placement[k]);
    }
    for (Eigen::Index idx = 0; idx < psi.dim(); ++idx) {
        std::int64_t rem = idx, target = 0;
        for (std::size_t k = 0; k < placement.size(); ++k) {
            target += (rem / in_stride[k]) * out_stride[k];
            rem %= in_stride[k];
        }
        out.amps[target] = psi.amps[idx];
    }
    return out;
}

AdditivityReport additivity_check(const StateVector& sigma, const StateVector& eta,
                                  ProbeKind kind) {
    const StateVector joint = qstate::tensor(sigma, eta);
    const int n = joint.num_sites;
    SiteSubset left(sigma.num_sites), right(eta.num_sites);
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), sigma.num_sites);

    AdditivityReport rep{};
    const MeasureResult whole = measure_m(joint, kind);
    rep.m_lhs = whole.m_value;
    rep.m_rhs = measure_m(embed_with_blank(sigma, n, left), kind).m_value +
                measure_m(embed_with_blank(eta, n, right), kind).m_value;
    rep.m_gap = rep.m_lhs - rep.m_rhs;

    rep.mt_lhs = whole.mt_value;
    rep.mt_rhs = measure_m(sigma, kind).mt_value + measure_m(eta, kind).mt_value;
    rep.mt_gap = rep.mt_lhs - rep.mt_rhs;
    return rep;
}

}  // namespace measure
}  // namespace pairent
