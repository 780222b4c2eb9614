#include <algorithm>

#include "pairent/convexroof.hpp"

namespace pairent::measure {

namespace {

SiteSubset merge_sorted(const SiteSubset& x, const SiteSubset& y) {
    SiteSubset out;
    std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

// Convex-roof upper bound for the plain pair sum Σ P over the reduced
// register, i.e. the M^T objective.
double roof_pair_sum(const DensityMatrix& rho, ProbeKind kind,
                     const convexroof::RoofOptions& opts) {
    const double roof_m = convexroof::convex_roof(rho, kind, opts).value;
    const double pairs = PairProfile::pair_count(rho.num_sites);
    return roof_m * pairs / normalization_factor(kind, rho.num_sites);
}

}  // namespace

SsaReport ssa_falsify(const StateVector& psi, const SiteSubset& a, const SiteSubset& ap,
                      const SiteSubset& b, const SiteSubset& bp, ProbeKind kind,
                      const SsaOptions& options) {
    const SiteSubset ab = merge_sorted(a, b);
    const SiteSubset apbp = merge_sorted(ap, bp);
    qstate::check_subset(ab, psi.num_sites);
    qstate::check_subset(apbp, psi.num_sites);
    SiteSubset all = merge_sorted(ab, apbp);
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw UsageError("ssa_falsify: partition subsets overlap");
    if (static_cast<int>(all.size()) != psi.num_sites)
        throw UsageError("ssa_falsify: partition does not cover the register");

    convexroof::RoofOptions roof_opts;
    roof_opts.restarts = options.restarts;
    roof_opts.seed = options.seed;
    roof_opts.tolerance = options.tolerance;

    SsaReport rep;
    rep.lhs = measure_m(psi, kind).m_value;
    const double scale =
        normalization_factor(kind, psi.num_sites) / PairProfile::pair_count(psi.num_sites);
    rep.rhs_upper_bound =
        scale * (roof_pair_sum(qstate::reduced(psi, ab), kind, roof_opts) +
                 roof_pair_sum(qstate::reduced(psi, apbp), kind, roof_opts));
    rep.margin = rep.lhs - rep.rhs_upper_bound;
    rep.falsification_candidate = rep.margin < -1e-8;
    return rep;
}

}  // namespace pairent::measure
