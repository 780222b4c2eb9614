#include "pairent/locc.hpp"

#include <random>

namespace pairent::locc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void check_completeness(const std::vector<Matrix>& kraus) {
    if (kraus.empty()) throw UsageError("instrument needs at least one Kraus operator");
    const auto d = kraus.front().rows();
    Matrix acc = Matrix::Zero(d, d);
    for (const Matrix& k : kraus) {
        if (k.rows() != d || k.cols() != d)
            throw UsageError("instrument Kraus operators must be square and equally sized");
        acc += k.adjoint() * k;
    }
    if (numerics::max_abs(acc - Matrix::Identity(d, d)) > 1e-10)
        throw UsageError("instrument is not complete: sum K†K deviates from identity");
}

}  // namespace

LocalInstrument make_instrument(int site, std::vector<Matrix> kraus) {
    check_completeness(kraus);
    return LocalInstrument{site, std::move(kraus)};
}

LocalInstrument random_instrument(int local_dim, int outcomes, std::uint64_t seed) {
    if (outcomes < 1) throw UsageError("random_instrument: need at least one outcome");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Matrix> a(outcomes);
    Matrix s = Matrix::Zero(local_dim, local_dim);
    for (Matrix& m : a) {
        m.resize(local_dim, local_dim);
        for (int i = 0; i < local_dim; ++i)
            for (int j = 0; j < local_dim; ++j) m(i, j) = cplx(g(rng), g(rng));
        s += m.adjoint() * m;
    }
    s += 1e-14 * Matrix::Identity(local_dim, local_dim);
    const Matrix root = numerics::psd_sqrt(s);
    const Matrix inv_root = root.inverse();
    std::vector<Matrix> kraus;
    kraus.reserve(outcomes);
    for (const Matrix& m : a) kraus.push_back(m * inv_root);
    return make_instrument(0, std::move(kraus));
}

std::vector<LoccBranch> apply_instrument(const StateVector& psi, const LocalInstrument& inst) {
    if (inst.site < 0 || inst.site >= psi.num_sites)
        throw UsageError("apply_instrument: site out of range");
    const int d = psi.local_dim;
    if (inst.kraus.front().rows() != d)
        throw UsageError("apply_instrument: Kraus dimension does not match the local dimension");
    const std::int64_t stride = qstate::pow_int(d, psi.num_sites - 1 - inst.site);
    const std::int64_t dim = psi.dim();

    std::vector<LoccBranch> branches;
    for (const Matrix& k : inst.kraus) {
        Vector out = Vector::Zero(dim);
        for (std::int64_t base = 0; base < dim; ++base) {
            const int digit = static_cast<int>((base / stride) % d);
            const std::int64_t origin = base - digit * stride;
            cplx acc = 0;
            for (int col = 0; col < d; ++col) acc += k(digit, col) * psi.amps[origin + col * stride];
            out[base] = acc;
        }
        const double p = out.squaredNorm();
        if (p < 1e-14) continue;
        out /= std::sqrt(p);
        branches.push_back(LoccBranch{p, StateVector{psi.num_sites, psi.local_dim, std::move(out)}});
    }
    return branches;
}

LoccTrialReport locc_monotonicity_trial(const StateVector& psi, ProbeKind kind, int rounds,
                                        std::uint64_t seed) {
    if (psi.num_sites > 6) throw UsageError("locc_monotonicity_trial: N > 6 not supported");
    struct SeededBranch {
        double probability;
        StateVector state;
        std::uint64_t seed;
    };

    LoccTrialReport report;
    report.initial_m = measure::measure_m(psi, kind).m_value;
    report.worst_margin = std::numeric_limits<double>::infinity();

    std::vector<SeededBranch> branches{{1.0, psi, splitmix64(seed)}};
    double previous = report.initial_m;
    for (int round = 0; round < rounds; ++round) {
        std::vector<SeededBranch> next;
        for (const SeededBranch& br : branches) {
            std::mt19937_64 rng(br.seed);
            const int site =
                static_cast<int>(rng() % static_cast<std::uint64_t>(br.state.num_sites));
            LocalInstrument inst = random_instrument(br.state.local_dim, 2, rng());
            inst.site = site;
            auto children = apply_instrument(br.state, inst);
            for (std::size_t c = 0; c < children.size(); ++c) {
                next.push_back(SeededBranch{br.probability * children[c].probability,
                                            std::move(children[c].state),
                                            splitmix64(br.seed + 0x1000 * (c + 1))});
            }
        }
        branches = std::move(next);
        double avg = 0.0;
        for (const SeededBranch& br : branches)
            avg += br.probability * measure::measure_m(br.state, kind).m_value;
        report.round_averages.push_back(avg);
        report.worst_margin = std::min(report.worst_margin, previous - avg);
        previous = avg;
    }
    if (rounds == 0) report.worst_margin = 0.0;
    report.violation = report.worst_margin < -1e-8;
    return report;
}

}  // namespace pairent::locc
