// Command-line driver: measures for named/parsed states, the benchmark
// table, MEMS sweeps, convex-roof runs, LOCC campaigns and random
// property-check suites, with JSON/CSV/text output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "pairent/convexroof.hpp"
#include "pairent/locc.hpp"
#include "pairent/stateio.hpp"

using nlohmann::json;
using namespace pairent;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitViolation = 4;

// All floating output goes through one formatter: 15 significant digits,
// identical across json/csv/text.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

struct Options {
    std::string state_spec;
    std::string state_file;
    std::string probe = "both";
    std::string format = "text";
    std::string grid = "0:1:10";
    std::string suite = "all";
    std::uint64_t seed = 1;
    int trials = 100;
    int restarts = 64;
    int rounds = 2;
    int jobs = 1;
    int n = 3;
    int d = 2;
    double tolerance = -1.0;  // negative → command default
};

std::vector<ProbeKind> probe_list(const std::string& spec) {
    if (spec == "qc") return {ProbeKind::QuasiConcurrence};
    if (spec == "fr") return {ProbeKind::MutualInformation};
    if (spec == "both") return {ProbeKind::QuasiConcurrence, ProbeKind::MutualInformation};
    throw UsageError("unknown probe '" + spec + "' (expected qc, fr or both)");
}

State resolve_state(const Options& opt) {
    if (!opt.state_file.empty()) {
        std::ifstream in(opt.state_file);
        if (!in) throw UsageError("cannot open state file '" + opt.state_file + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw UsageError("state file '" + opt.state_file + "': " + e.what());
        }
        return stateio::state_from_json(j);
    }
    if (opt.state_spec.empty()) throw UsageError("no state given (use --state or --state-file)");
    try {
        return qstate::named_state(opt.state_spec);
    } catch (const UsageError&) {
        return qstate::parse_ket(opt.state_spec).state;
    }
}

json config_echo(const char* command, const Options& opt) {
    json cfg{{"seed", opt.seed}, {"probe", opt.probe}, {"format", opt.format}};
    if (!opt.state_spec.empty()) cfg["state"] = opt.state_spec;
    if (!opt.state_file.empty()) cfg["state_file"] = opt.state_file;
    cfg["trials"] = opt.trials;
    cfg["restarts"] = opt.restarts;
    cfg["jobs"] = opt.jobs;
    if (opt.tolerance >= 0) cfg["tolerance"] = fmt(opt.tolerance);
    return json{{"command", command}, {"config", std::move(cfg)}};
}

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

void emit(const json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    if (format == "csv") {
        const auto field = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string quoted = "\"";
            for (char c : s) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            return quoted += '"';
        };
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) std::cout << field(k) << "," << field(v) << "\n";
        return;
    }
    for (const auto& [k, v] : rows) std::cout << k << " = " << v << "\n";
}

json profile_json(const measure::PairProfile& profile) {
    json pairs = json::array();
    const int n = profile.num_sites;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs.push_back({{"sites", {i, j}},
                             {"label", "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"},
                             {"value", fmt(profile.value(i, j))}});
    return pairs;
}

json measure_json(ProbeKind kind, const State& state) {
    const auto res = std::visit([&](const auto& s) { return measure::measure_m(s, kind); }, state);
    return {{"probe", probe_name(kind)},
            {"pairs", profile_json(res.profile)},
            {"m", fmt(res.m_value)},
            {"mt", fmt(res.mt_value)},
            {"normalization_factor", fmt(res.factor)},
            {"classification", state_class_name(res.classification)},
            {"genuine_global", res.genuine_global}};
}

int cmd_measure(const Options& opt) {
    const State state = resolve_state(opt);
    json report = config_echo("measure", opt);
    report["results"] = json::array();
    for (ProbeKind kind : probe_list(opt.probe)) report["results"].push_back(measure_json(kind, state));
    emit(report, opt.format);
    return 0;
}

int cmd_table(const Options& opt) {
    const double tol = opt.tolerance >= 0 ? opt.tolerance : 1e-9;
    struct Row {
        const char* name;
        double probe_on_special;  // Q_C and Fr on (1,4) and (2,3)
        double fr_on_special;
        double m_qc, m_fr;
    };
    // (1,4)/(2,3) carry all the weight for these three states; every other
    // pair is exactly zero for both probes.
    const Row rows[] = {{"psi4", 1.0, 1.0, 1.0 / 3, 2.0 / 3},
                        {"chi4", 1.0, 0.5, 1.0 / 3, 1.0 / 3},
                        {"cluster4", 1.0, 0.5, 1.0 / 3, 1.0 / 3}};
    json report = config_echo("table", opt);
    report["tolerance"] = fmt(tol);
    report["rows"] = json::array();
    bool all_pass = true;
    for (const Row& row : rows) {
        const auto psi = std::get<StateVector>(qstate::named_state(row.name));
        json entry{{"state", row.name}};
        bool pass = true;
        for (ProbeKind kind : {ProbeKind::QuasiConcurrence, ProbeKind::MutualInformation}) {
            const auto res = measure::measure_m(psi, kind);
            const double special = kind == ProbeKind::QuasiConcurrence ? row.probe_on_special
                                                                       : row.fr_on_special;
            const double expect_m = kind == ProbeKind::QuasiConcurrence ? row.m_qc : row.m_fr;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    const bool hot = (i == 0 && j == 3) || (i == 1 && j == 2);
                    if (std::abs(res.profile.value(i, j) - (hot ? special : 0.0)) > tol) pass = false;
                }
            if (std::abs(res.m_value - expect_m) > tol) pass = false;
            entry[probe_name(kind)] = {{"pairs", profile_json(res.profile)},
                                       {"m", fmt(res.m_value)},
                                       {"m_expected", fmt(expect_m)}};
        }
        entry["pass"] = pass;
        all_pass = all_pass && pass;
        report["rows"].push_back(std::move(entry));
    }
    report["all_pass"] = all_pass;
    emit(report, opt.format);
    return all_pass ? 0 : kExitViolation;
}

std::vector<double> parse_grid(const std::string& spec) {
    double a = 0, b = 0;
    int steps = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &a, &b, &steps) != 3 || steps < 1)
        throw UsageError("bad grid '" + spec + "' (expected a:b:steps)");
    std::vector<double> xs;
    for (int i = 0; i <= steps; ++i) xs.push_back(a + (b - a) * i / steps);
    return xs;
}

int cmd_sweep_mems(const Options& opt) {
    const auto xs = parse_grid(opt.grid);
    for (double x : xs)
        if (x < 0 || x > 1) throw UsageError("mems sweep grid must stay within [0,1]");
    const double ghz_m =
        measure::measure_m(std::get<StateVector>(qstate::named_state("ghz:4")),
                           ProbeKind::MutualInformation)
            .m_value;
    json report = config_echo("sweep-mems", opt);
    report["grid"] = opt.grid;
    report["points"] = json::array();
    for (double x : xs) {
        const auto mems = std::get<DensityMatrix>(qstate::named_state("mems:" + fmt(x)));
        const auto pure = std::get<StateVector>(qstate::named_state("puremems:" + fmt(x)));
        const double fr_pair = probes::mutual_information_fr(mems);
        const auto fr = measure::measure_m(pure, ProbeKind::MutualInformation);
        const auto qc = measure::measure_m(pure, ProbeKind::QuasiConcurrence);
        report["points"].push_back({{"x", fmt(x)},
                                    {"fr_mems", fmt(fr_pair)},
                                    {"pairs_fr", profile_json(fr.profile)},
                                    {"m_fr", fmt(fr.m_value)},
                                    {"m_qc", fmt(qc.m_value)},
                                    {"fr_exceeds_half", fr_pair > 0.5},
                                    {"m_below_ghz", fr.m_value < ghz_m}});
    }
    emit(report, opt.format);
    return 0;
}

int cmd_roof(const Options& opt) {
    const State state = resolve_state(opt);
    const DensityMatrix rho = std::holds_alternative<StateVector>(state)
                                  ? qstate::density_of(std::get<StateVector>(state))
                                  : std::get<DensityMatrix>(state);
    convexroof::RoofOptions ropt;
    ropt.restarts = opt.restarts;
    ropt.seed = opt.seed;
    if (opt.tolerance >= 0) ropt.tolerance = opt.tolerance;
    json report = config_echo("roof", opt);
    report["results"] = json::array();
    for (ProbeKind kind : probe_list(opt.probe)) {
        const auto res = convexroof::convex_roof(rho, kind, ropt);
        json entry{{"probe", probe_name(kind)},
                   {"upper_bound", fmt(res.value)},
                   {"converged", res.converged},
                   {"restarts_used", res.restarts_used},
                   {"members", res.decomposition.members.size()}};
        if (kind == ProbeKind::QuasiConcurrence && rho.num_sites == 2 && rho.local_dim == 2) {
            const auto s = probes::wootters_spectrum(rho).lambdas;
            entry["concurrence_closed_form"] = fmt(std::max(0.0, s[0] - s[1] - s[2] - s[3]));
        }
        report["results"].push_back(std::move(entry));
    }
    emit(report, opt.format);
    return 0;
}

// Deterministic fan-out: worker i handles trials i, i+jobs, …; results land
// in a pre-sized vector so assembly order never depends on scheduling.
template <typename Fn>
void parallel_trials(int trials, int jobs, const Fn& fn) {
    jobs = std::max(1, std::min(jobs, trials));
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            for (int t = w; t < trials; t += jobs) fn(t);
        });
    for (auto& th : pool) th.join();
}

int cmd_locc(const Options& opt) {
    if (opt.n < 2 || opt.n > 6) throw UsageError("locc: --n must be in [2,6]");
    const auto kinds = probe_list(opt.probe);
    struct Trial {
        json entry;
        bool violation = false;
    };
    std::vector<Trial> results(static_cast<std::size_t>(opt.trials) * kinds.size());
    std::exception_ptr error;
    std::mutex error_mutex;
    parallel_trials(opt.trials, opt.jobs, [&](int t) {
        try {
            const std::uint64_t state_seed = opt.seed + 2 * static_cast<std::uint64_t>(t);
            const auto psi = qstate::random_pure(opt.n, 2, state_seed);
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                const auto rep = locc::locc_monotonicity_trial(psi, kinds[k], opt.rounds,
                                                               state_seed + 1);
                Trial& out = results[static_cast<std::size_t>(t) * kinds.size() + k];
                out.violation = rep.violation;
                out.entry = {{"trial", t},
                             {"probe", probe_name(kinds[k])},
                             {"state_seed", state_seed},
                             {"trial_seed", state_seed + 1},
                             {"initial_m", fmt(rep.initial_m)},
                             {"worst_margin", fmt(rep.worst_margin)},
                             {"violation", rep.violation}};
                if (rep.violation) out.entry["state"] = stateio::to_json(psi);
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);

    json report = config_echo("locc", opt);
    report["n"] = opt.n;
    report["rounds"] = opt.rounds;
    int violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    json archived = json::array();
    for (const Trial& tr : results) {
        worst = std::min(worst, std::stod(tr.entry["worst_margin"].get<std::string>()));
        if (tr.violation) {
            ++violations;
            archived.push_back(tr.entry);
        }
    }
    report["trials"] = opt.trials;
    report["violations"] = violations;
    report["worst_margin"] = fmt(results.empty() ? 0.0 : worst);
    report["violating_trials"] = std::move(archived);
    emit(report, opt.format);
    return violations == 0 ? 0 : kExitViolation;
}

struct SuiteOutcome {
    int passed = 0;
    double worst = std::numeric_limits<double>::infinity();  // smallest margin seen
    json failures = json::array();
};

template <typename Fn>
SuiteOutcome run_suite(int trials, int jobs, const Fn& trial_fn) {
    struct Slot {
        double margin = 0.0;
        json failure;
        bool failed = false;
    };
    std::vector<Slot> slots(trials);
    std::exception_ptr error;
    std::mutex error_mutex;
    parallel_trials(trials, jobs, [&](int t) {
        try {
            auto [margin, failure] = trial_fn(t);
            slots[t].margin = margin;
            if (!failure.is_null()) {
                slots[t].failed = true;
                slots[t].failure = std::move(failure);
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    SuiteOutcome out;
    if (slots.empty()) out.worst = 0.0;
    for (const Slot& s : slots) {
        out.worst = std::min(out.worst, s.margin);
        if (s.failed)
            out.failures.push_back(s.failure);
        else
            ++out.passed;
    }
    return out;
}

int cmd_randcheck(const Options& opt) {
    const double tol = opt.tolerance >= 0 ? opt.tolerance : 1e-9;
    json report = config_echo("randcheck", opt);
    report["suite"] = opt.suite;
    report["n"] = opt.n;
    report["d"] = opt.d;
    report["tolerance"] = fmt(tol);
    report["suites"] = json::object();
    bool any_violation = false;

    const auto record = [&](const char* name, const SuiteOutcome& out, int trials) {
        report["suites"][name] = {{"trials", trials},
                                  {"passed", out.passed},
                                  {"worst_margin", fmt(out.worst)},
                                  {"failures", out.failures}};
        if (out.passed != trials) any_violation = true;
    };
    const auto wants = [&](const char* name) { return opt.suite == "all" || opt.suite == name; };
    bool matched = false;

    if (wants("normalization")) {
        matched = true;
        const double bound = std::log2(static_cast<double>(opt.d));
        const auto out = run_suite(opt.trials, opt.jobs, [&](int t) -> std::pair<double, json> {
            const std::uint64_t seed = opt.seed + t;
            const auto psi = qstate::random_pure(opt.n, opt.d, seed);
            const double m = measure::measure_m(psi, ProbeKind::MutualInformation).m_value;
            const double margin = bound + tol - m;
            if (margin >= 0) return {margin, json()};
            return {margin, json{{"seed", seed}, {"m_fr", fmt(m)}, {"state", stateio::to_json(psi)}}};
        });
        record("normalization", out, opt.trials);
    }
    if (wants("lu")) {
        matched = true;
        const auto out = run_suite(opt.trials, opt.jobs, [&](int t) -> std::pair<double, json> {
            const std::uint64_t seed = opt.seed + t;
            const auto psi = qstate::random_pure(opt.n, opt.d, seed);
            const int site = t % opt.n;
            const Matrix u = qstate::random_unitary(opt.d, seed + 1);
            StateVector rotated = psi;
            const auto d = opt.d;
            const auto block = qstate::pow_int(d, opt.n - 1 - site);
            Vector next = Vector::Zero(psi.dim());
            for (Eigen::Index idx = 0; idx < psi.dim(); ++idx) {
                const auto digit = (idx / block) % d;
                for (int to = 0; to < d; ++to)
                    next[idx + (to - digit) * block] += u(to, digit) * psi.amps[idx];
            }
            rotated.amps = std::move(next);
            double delta = 0.0;
            for (ProbeKind kind : probe_list(opt.d == 2 ? "both" : "fr"))
                delta = std::max(delta, std::abs(measure::measure_m(psi, kind).m_value -
                                                 measure::measure_m(rotated, kind).m_value));
            const double margin = tol - delta;
            if (margin >= 0) return {margin, json()};
            return {margin, json{{"seed", seed}, {"delta", fmt(delta)}, {"state", stateio::to_json(psi)}}};
        });
        record("lu", out, opt.trials);
    }
    if (wants("product-zero")) {
        matched = true;
        const auto out = run_suite(opt.trials, opt.jobs, [&](int t) -> std::pair<double, json> {
            const std::uint64_t seed = opt.seed + t;
            const auto psi = qstate::random_product(opt.n, opt.d, seed);
            double biggest = 0.0;
            for (ProbeKind kind : probe_list(opt.d == 2 ? "both" : "fr"))
                for (double v : measure::pair_profile(psi, kind).values)
                    biggest = std::max(biggest, std::abs(v));
            const double margin = tol - biggest;
            if (margin >= 0) return {margin, json()};
            return {margin,
                    json{{"seed", seed}, {"max_pair", fmt(biggest)}, {"state", stateio::to_json(psi)}}};
        });
        record("product-zero", out, opt.trials);
    }
    if (wants("qc-dominates")) {
        matched = true;
        const auto out = run_suite(opt.trials, opt.jobs, [&](int t) -> std::pair<double, json> {
            const std::uint64_t seed = opt.seed + t;
            const auto rho = qstate::random_mixed(2, 2, 2 + t % 3, seed);
            const double margin =
                probes::quasi_concurrence(rho) - probes::concurrence(rho) + tol;
            if (margin >= 0) return {margin, json()};
            return {margin, json{{"seed", seed}, {"state", stateio::to_json(rho)}}};
        });
        record("qc-dominates", out, opt.trials);
    }
    if (wants("mt-additivity")) {
        matched = true;
        const auto out = run_suite(opt.trials, opt.jobs, [&](int t) -> std::pair<double, json> {
            const std::uint64_t seed = opt.seed + 2 * static_cast<std::uint64_t>(t);
            const auto sigma = qstate::random_pure(2, 2, seed);
            const auto eta = qstate::random_pure(2 + t % 2, 2, seed + 1);
            double gap = 0.0;
            for (ProbeKind kind : {ProbeKind::QuasiConcurrence, ProbeKind::MutualInformation}) {
                const auto rep = measure::additivity_check(sigma, eta, kind);
                gap = std::max({gap, std::abs(rep.mt_gap), std::abs(rep.m_gap)});
            }
            const double margin = tol - gap;
            if (margin >= 0) return {margin, json()};
            return {margin, json{{"seed", seed}, {"gap", fmt(gap)}}};
        });
        record("mt-additivity", out, opt.trials);
    }
    if (!matched)
        throw UsageError("unknown suite '" + opt.suite +
                         "' (normalization, lu, product-zero, qc-dominates, mt-additivity, all)");
    report["all_pass"] = !any_violation;
    emit(report, opt.format);
    return any_violation ? kExitViolation : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairwise entanglement measures for multi-qudit states"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--probe", opt.probe, "probe: qc, fr or both");
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_option("--format", opt.format, "output format: json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        cmd->add_option("--tolerance", opt.tolerance, "tolerance override");
        cmd->add_option("--jobs", opt.jobs, "worker thread cap")->check(CLI::PositiveNumber);
        return cmd;
    };
    const auto add_state = [&](CLI::App* cmd) {
        cmd->add_option("--state", opt.state_spec, "named state or ket expression");
        cmd->add_option("--state-file", opt.state_file, "state JSON file");
        return cmd;
    };

    auto* measure_cmd = add_state(add_common(app.add_subcommand("measure", "pair profile and measures")));
    auto* table_cmd = add_common(app.add_subcommand("table", "benchmark table with expected values"));
    auto* sweep_cmd = add_common(app.add_subcommand("sweep-mems", "MEMS family sweep"));
    sweep_cmd->add_option("--grid", opt.grid, "x grid as a:b:steps");
    auto* roof_cmd = add_state(add_common(app.add_subcommand("roof", "convex-roof upper bound")));
    roof_cmd->add_option("--restarts", opt.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    auto* locc_cmd = add_common(app.add_subcommand("locc", "LOCC monotonicity campaign"));
    locc_cmd->add_option("--n", opt.n, "number of qubits")->check(CLI::Range(2, 6));
    locc_cmd->add_option("--trials", opt.trials, "trial count")->check(CLI::PositiveNumber);
    locc_cmd->add_option("--rounds", opt.rounds, "instrument rounds per trial")
        ->check(CLI::PositiveNumber);
    auto* rand_cmd = add_common(app.add_subcommand("randcheck", "random property suites"));
    rand_cmd->add_option("--suite", opt.suite,
                         "normalization, lu, product-zero, qc-dominates, mt-additivity or all");
    rand_cmd->add_option("--n", opt.n, "number of sites")->check(CLI::Range(2, 6));
    rand_cmd->add_option("--d", opt.d, "local dimension")->check(CLI::Range(2, 4));
    rand_cmd->add_option("--trials", opt.trials, "trials per suite")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(measure_cmd)) return cmd_measure(opt);
        if (app.got_subcommand(table_cmd)) return cmd_table(opt);
        if (app.got_subcommand(sweep_cmd)) return cmd_sweep_mems(opt);
        if (app.got_subcommand(roof_cmd)) return cmd_roof(opt);
        if (app.got_subcommand(locc_cmd)) return cmd_locc(opt);
        if (app.got_subcommand(rand_cmd)) return cmd_randcheck(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
