// Acceptance gate: twelve numbered criteria, one PASS/FAIL line each.
// Heavy sweeps fan out over a thread pool; every trial is seeded so any
// reported failure is reproducible from the printed seed.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "pairent/convexroof.hpp"
#include "pairent/locc.hpp"

using namespace pairent;
using qstate::named_state;
using qstate::random_mixed;
using qstate::random_product;
using qstate::random_pure;
using qstate::random_unitary;

namespace {

StateVector get_pure(const State& s) { return std::get<StateVector>(s); }

template <typename Fn>
void parallel_for(int count, const Fn& fn) {
    const int jobs = std::max(1u, std::min(std::thread::hardware_concurrency(),
                                           static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            for (int t = w; t < count; t += jobs) fn(t);
        });
    for (auto& th : pool) th.join();
}

// Accumulates the worst (largest) violation over parallel trials plus a
// description of where it happened.
struct WorstTracker {
    std::mutex mutex;
    double worst = -std::numeric_limits<double>::infinity();
    std::string where;

    void offer(double value, const std::string& label) {
        std::lock_guard lock(mutex);
        if (value > worst) {
            worst = value;
            where = label;
        }
    }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

StateVector apply_site_unitary(const StateVector& psi, int site, const Matrix& u) {
    const int d = psi.local_dim;
    const auto block = qstate::pow_int(d, psi.num_sites - 1 - site);
    Vector next = Vector::Zero(psi.dim());
    for (Eigen::Index idx = 0; idx < psi.dim(); ++idx) {
        const auto digit = (idx / block) % d;
        for (int to = 0; to < d; ++to) next[idx + (to - digit) * block] += u(to, digit) * psi.amps[idx];
    }
    return StateVector{psi.num_sites, d, std::move(next)};
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome criterion_table() {
    struct Row {
        const char* name;
        double qc_special, fr_special, m_qc, m_fr;
    };
    const Row rows[] = {{"psi4", 1.0, 1.0, 1.0 / 3, 2.0 / 3},
                        {"chi4", 1.0, 0.5, 1.0 / 3, 1.0 / 3},
                        {"cluster4", 1.0, 0.5, 1.0 / 3, 1.0 / 3}};
    double worst = 0.0;
    for (const Row& row : rows) {
        const auto psi = get_pure(named_state(row.name));
        for (ProbeKind kind : {ProbeKind::QuasiConcurrence, ProbeKind::MutualInformation}) {
            const auto res = measure::measure_m(psi, kind);
            const double special = kind == ProbeKind::QuasiConcurrence ? row.qc_special : row.fr_special;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    const bool hot = (i == 0 && j == 3) || (i == 1 && j == 2);
                    worst = std::max(worst, std::abs(res.profile.value(i, j) - (hot ? special : 0.0)));
                }
            const double expect = kind == ProbeKind::QuasiConcurrence ? row.m_qc : row.m_fr;
            worst = std::max(worst, std::abs(res.m_value - expect));
        }
    }
    return {worst <= 1e-9, "worst gap " + sci(worst)};
}

Outcome criterion_ghz() {
    double worst = 0.0;
    for (int n = 3; n <= 8; ++n) {
        const auto ghz = get_pure(named_state("ghz:" + std::to_string(n)));
        for (ProbeKind kind : {ProbeKind::QuasiConcurrence, ProbeKind::MutualInformation}) {
            const auto res = measure::measure_m(ghz, kind);
            const double pair_expect = kind == ProbeKind::QuasiConcurrence ? 1.0 : 0.5;
            for (double v : res.profile.values) worst = std::max(worst, std::abs(v - pair_expect));
            worst = std::max(worst, std::abs(res.m_value - 1.0));
        }
    }
    return {worst <= 1e-9, "N = 3..8, worst gap " + sci(worst)};
}

Outcome criterion_w3() {
    const auto w3 = get_pure(named_state("w:3"));
    const auto qc = measure::measure_m(w3, ProbeKind::QuasiConcurrence);
    const auto fr = measure::measure_m(w3, ProbeKind::MutualInformation);
    const double pair_expect = 0.45915;
    double worst_pair = 0.0;
    for (double v : fr.profile.values) worst_pair = std::max(worst_pair, std::abs(v - pair_expect));
    const bool pass = std::abs(qc.m_value - 2.0 / 3) <= 1e-9 && worst_pair <= 1e-4 &&
                      std::abs(fr.m_value - 0.91830) <= 1e-4;
    std::ostringstream detail;
    detail << "m_qc gap " << sci(std::abs(qc.m_value - 2.0 / 3)) << ", pair Fr gap "
           << sci(worst_pair) << ", m_fr gap " << sci(std::abs(fr.m_value - 0.91830));
    return {pass, detail.str()};
}

Outcome criterion_normalization_sweep() {
    WorstTracker tracker;
    for (int n : {3, 4, 5}) {
        parallel_for(1000, [&](int t) {
            const std::uint64_t seed = 100000 + 1000 * n + t;
            const double m = measure::measure_m(random_pure(n, 2, seed),
                                                ProbeKind::MutualInformation)
                                 .m_value;
            tracker.offer(m - 1.0, "qubit seed " + std::to_string(seed));
        });
    }
    parallel_for(200, [&](int t) {
        const std::uint64_t seed = 200000 + t;
        const double m =
            measure::measure_m(random_pure(3, 3, seed), ProbeKind::MutualInformation).m_value;
        tracker.offer(m - std::log2(3.0), "qutrit seed " + std::to_string(seed));
    });
    const bool pass = tracker.worst <= 1e-9;
    return {pass, "max excess over bound " + sci(tracker.worst) +
                      (pass ? "" : " at " + tracker.where)};
}

Outcome criterion_qc_dominates() {
    WorstTracker tracker;
    parallel_for(1000, [&](int t) {
        const std::uint64_t seed = 300000 + t;
        const auto rho = random_mixed(2, 2, 2 + t % 3, seed);
        tracker.offer(probes::concurrence(rho) - probes::quasi_concurrence(rho),
                      "seed " + std::to_string(seed));
    });
    const bool pass = tracker.worst <= 1e-9;
    return {pass, "max C − Q_C = " + sci(tracker.worst) + (pass ? "" : " at " + tracker.where)};
}

Outcome criterion_product_zeros() {
    WorstTracker tracker;
    parallel_for(500, [&](int t) {
        const int n = 2 + t % 4;
        const std::uint64_t seed = 400000 + t;
        const auto psi = random_product(n, 2, seed);
        for (ProbeKind kind : {ProbeKind::QuasiConcurrence, ProbeKind::MutualInformation})
            for (double v : measure::pair_profile(psi, kind).values)
                tracker.offer(std::abs(v), "seed " + std::to_string(seed));
    });
    const bool pass = tracker.worst <= 1e-9;
    return {pass, "max pair value " + sci(tracker.worst) + (pass ? "" : " at " + tracker.where)};
}

Outcome criterion_lu_invariance() {
    WorstTracker tracker;
    parallel_for(500, [&](int t) {
        const int n = 2 + t % 4;
        const std::uint64_t seed = 500000 + 4 * t;
        const auto psi = random_pure(n, 2, seed);
        StateVector rotated = psi;
        for (int site = 0; site < n; ++site)
            rotated = apply_site_unitary(rotated, site, random_unitary(2, seed + 1 + site));
        for (ProbeKind kind : {ProbeKind::QuasiConcurrence, ProbeKind::MutualInformation})
            tracker.offer(std::abs(measure::measure_m(psi, kind).m_value -
                                   measure::measure_m(rotated, kind).m_value),
                          "seed " + std::to_string(seed));
    });
    const bool pass = tracker.worst <= 1e-9;
    return {pass, "max |ΔM| " + sci(tracker.worst) + (pass ? "" : " at " + tracker.where)};
}

Outcome criterion_additivity() {
    WorstTracker tracker;
    parallel_for(200, [&](int t) {
        const std::uint64_t seed = 600000 + 2 * t;
        const auto sigma = random_pure(2, 2, seed);
        const auto eta = random_pure(2 + t % 2, 2, seed + 1);
        for (ProbeKind kind : {ProbeKind::QuasiConcurrence, ProbeKind::MutualInformation}) {
            const auto rep = measure::additivity_check(sigma, eta, kind);
            tracker.offer(std::abs(rep.mt_gap), "mt seed " + std::to_string(seed));
            tracker.offer(std::abs(rep.m_gap), "m seed " + std::to_string(seed));
        }
    });
    const bool pass = tracker.worst <= 1e-9;
    return {pass, "max gap " + sci(tracker.worst) + (pass ? "" : " at " + tracker.where)};
}

Outcome criterion_roof_oracle() {
    WorstTracker tracker;
    const auto start = std::chrono::steady_clock::now();
    parallel_for(200, [&](int t) {
        const std::uint64_t seed = 700000 + t;
        const auto rho = random_mixed(2, 2, 2 + t % 3, seed);
        convexroof::RoofOptions opts;
        opts.seed = seed;
        const auto res = convexroof::convex_roof(rho, ProbeKind::QuasiConcurrence, opts);
        const auto s = probes::wootters_spectrum(rho).lambdas;
        const double oracle = std::max(0.0, s[0] - s[1] - s[2] - s[3]);
        tracker.offer(std::abs(res.value - oracle), "seed " + std::to_string(seed));
    });
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = tracker.worst <= 1e-3 && secs < 300.0;
    std::ostringstream detail;
    detail << "max |roof − closed form| " << sci(tracker.worst) << " in " << sci(secs) << " s";
    if (!pass) detail << " (worst at " << tracker.where << ")";
    return {pass, detail.str()};
}

Outcome criterion_locc_campaign() {
    std::atomic<int> violations{0};
    WorstTracker tracker;
    std::mutex archive_mutex;
    std::vector<std::string> archive;
    const auto start = std::chrono::steady_clock::now();
    parallel_for(10000, [&](int t) {
        const int n = 2 + t % 4;
        const std::uint64_t state_seed = 800000 + 2 * static_cast<std::uint64_t>(t);
        const auto psi = random_pure(n, 2, state_seed);
        for (ProbeKind kind : {ProbeKind::QuasiConcurrence, ProbeKind::MutualInformation}) {
            const auto rep = locc::locc_monotonicity_trial(psi, kind, 2, state_seed + 1);
            tracker.offer(-rep.worst_margin, "n=" + std::to_string(n) + " " + probe_name(kind) +
                                                 " state seed " + std::to_string(state_seed));
            if (rep.violation) {
                ++violations;
                std::lock_guard lock(archive_mutex);
                if (archive.size() < 5) {
                    std::ostringstream line;
                    line << "    reproduce: random_pure(" << n << ", 2, " << state_seed
                         << "), probe " << probe_name(kind) << ", 2 rounds, trial seed "
                         << state_seed + 1 << ", margin " << sci(rep.worst_margin);
                    archive.push_back(line.str());
                }
            }
        }
    });
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = violations == 0 && secs < 600.0;
    std::ostringstream detail;
    detail << violations << " violations in 10000 trials, worst margin " << sci(-tracker.worst)
           << " (" << tracker.where << "), " << sci(secs) << " s";
    for (const std::string& line : archive) detail << "\n" << line;
    return {pass, detail.str()};
}

Outcome criterion_mems() {
    std::ostringstream detail;
    bool pass = true;
    // Fr(mems:x) crosses ½ on the way to Fr(mems:1) = 1
    double fr_at_1 = 0.0;
    bool exceeds_near_1 = false;
    for (int i = 0; i <= 10; ++i) {
        const double x = i / 10.0;
        char spec[32];
        std::snprintf(spec, sizeof spec, "mems:%.1f", x);
        const double fr = probes::mutual_information_fr(std::get<DensityMatrix>(named_state(spec)));
        if (x >= 0.9 && fr > 0.5) exceeds_near_1 = true;
        if (i == 10) fr_at_1 = fr;
    }
    pass = pass && exceeds_near_1 && std::abs(fr_at_1 - 1.0) <= 1e-9;
    detail << "Fr(mems:1) = " << sci(fr_at_1);

    const auto pure = get_pure(named_state("puremems:0.9"));
    const auto res = measure::measure_m(pure, ProbeKind::MutualInformation);
    const double f12 = res.profile.value(0, 1), f34 = res.profile.value(2, 3);
    const double cross = std::max({res.profile.value(0, 2), res.profile.value(0, 3),
                                   res.profile.value(1, 2), res.profile.value(1, 3)});
    pass = pass && std::abs(f12 - f34) <= 1e-9 && f12 > cross && res.m_value < 1.0;
    detail << "; puremems:0.9 Fr(1,2) = " << sci(f12) << ", max cross " << sci(cross)
           << ", M_Fr = " << sci(res.m_value);
    return {pass, detail.str()};
}

Outcome criterion_entropy_ssa() {
    WorstTracker tracker;
    parallel_for(500, [&](int t) {
        const int d = t % 2 == 0 ? 2 : 3;
        const std::uint64_t seed = 900000 + t;
        const DensityMatrix rho = t % 3 == 0 ? qstate::density_of(random_pure(3, d, seed))
                                             : random_mixed(3, d, 2 + t % 3, seed);
        const double xyz = probes::von_neumann_entropy(rho);
        const double xy = probes::von_neumann_entropy(qstate::partial_trace(rho, {0, 1}));
        const double yz = probes::von_neumann_entropy(qstate::partial_trace(rho, {1, 2}));
        const double y = probes::von_neumann_entropy(qstate::partial_trace(rho, {1}));
        tracker.offer(xyz - (xy + yz - y), "seed " + std::to_string(seed));
    });
    const bool pass = tracker.worst <= 1e-8;
    return {pass, "max S(XYZ) − S(XY) − S(YZ) + S(Y) = " + sci(tracker.worst) +
                      (pass ? "" : " at " + tracker.where)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"paper table reproduction", criterion_table},
        {"GHZ normalization", criterion_ghz},
        {"W state values", criterion_w3},
        {"normalization sweep", criterion_normalization_sweep},
        {"probe inequality Q_C >= C", criterion_qc_dominates},
        {"product-state zeros", criterion_product_zeros},
        {"local unitary invariance", criterion_lu_invariance},
        {"traditional additivity", criterion_additivity},
        {"convex-roof oracle", criterion_roof_oracle},
        {"LOCC falsification campaign", criterion_locc_campaign},
        {"MEMS behavior", criterion_mems},
        {"entropy strong subadditivity", criterion_entropy_ssa},
    };
    int failed = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        const Outcome out = criteria[i].run();
        if (!out.pass) ++failed;
        std::printf("criterion %zu: %s — %s (%s)\n", i + 1, out.pass ? "PASS" : "FAIL",
                    criteria[i].name, out.detail.c_str());
        std::fflush(stdout);
    }
    if (failed) std::printf("%d of 12 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
