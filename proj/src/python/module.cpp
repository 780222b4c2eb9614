#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pairent/convexroof.hpp"
#include "pairent/locc.hpp"

namespace py = pybind11;
using namespace pairent;

namespace {

ProbeKind probe_from(const std::string& name) {
    if (name == "qc") return ProbeKind::QuasiConcurrence;
    if (name == "fr") return ProbeKind::MutualInformation;
    throw UsageError("unknown probe '" + name + "' (expected 'qc' or 'fr')");
}

py::object wrap_state(State state) {
    return std::visit([](auto s) { return py::cast(std::move(s)); }, std::move(state));
}

py::dict measure_dict(const measure::MeasureResult& res) {
    py::list pairs;
    const int n = res.profile.num_sites;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs.append(py::make_tuple(i, j, res.profile.value(i, j)));
    py::dict out;
    out["pairs"] = std::move(pairs);
    out["m"] = res.m_value;
    out["mt"] = res.mt_value;
    out["normalization_factor"] = res.factor;
    out["classification"] = state_class_name(res.classification);
    out["genuine_global"] = res.genuine_global;
    return out;
}

}  // namespace

PYBIND11_MODULE(_pairent, m) {
    m.doc() = "pairwise entanglement measures for multi-qudit states";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init([](int n, int d, Vector amps) {
                 StateVector psi{n, d, std::move(amps)};
                 psi.validate();
                 return psi;
             }),
             py::arg("num_sites"), py::arg("local_dim"), py::arg("amplitudes"))
        .def_readonly("num_sites", &StateVector::num_sites)
        .def_readonly("local_dim", &StateVector::local_dim)
        .def_readonly("amplitudes", &StateVector::amps)
        .def("density", &qstate::density_of)
        .def("__repr__", [](const StateVector& s) {
            return "StateVector(num_sites=" + std::to_string(s.num_sites) +
                   ", local_dim=" + std::to_string(s.local_dim) + ")";
        });

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](int n, int d, Matrix mat) {
                 DensityMatrix rho{n, d, std::move(mat)};
                 rho.validate();
                 return rho;
             }),
             py::arg("num_sites"), py::arg("local_dim"), py::arg("matrix"))
        .def_readonly("num_sites", &DensityMatrix::num_sites)
        .def_readonly("local_dim", &DensityMatrix::local_dim)
        .def_readonly("matrix", &DensityMatrix::mat)
        .def("purity", &DensityMatrix::purity)
        .def("__repr__", [](const DensityMatrix& r) {
            return "DensityMatrix(num_sites=" + std::to_string(r.num_sites) +
                   ", local_dim=" + std::to_string(r.local_dim) + ")";
        });

    m.def("named_state", [](const std::string& spec) { return wrap_state(qstate::named_state(spec)); },
          py::arg("spec"));
    m.def("parse_ket", [](const std::string& text) {
              auto parsed = qstate::parse_ket(text);
              return py::make_tuple(std::move(parsed.state), parsed.normalization_warning);
          },
          py::arg("text"), "Returns (state, normalization_warning).");
    m.def("random_pure", &qstate::random_pure, py::arg("n"), py::arg("d"), py::arg("seed"));
    m.def("random_mixed", &qstate::random_mixed, py::arg("n"), py::arg("d"), py::arg("rank"),
          py::arg("seed"));
    m.def("random_product", &qstate::random_product, py::arg("n"), py::arg("d"), py::arg("seed"));
    m.def("reduced", &qstate::reduced, py::arg("psi"), py::arg("sites"));
    m.def("partial_trace", &qstate::partial_trace, py::arg("rho"), py::arg("sites"));

    m.def("quasi_concurrence", &probes::quasi_concurrence, py::arg("rho"));
    m.def("concurrence", &probes::concurrence, py::arg("rho"));
    m.def("mutual_information_fr", &probes::mutual_information_fr, py::arg("rho"));
    m.def("von_neumann_entropy", &probes::von_neumann_entropy, py::arg("rho"));
    m.def("wootters_spectrum", [](const DensityMatrix& rho) {
              const auto s = probes::wootters_spectrum(rho).lambdas;
              return std::vector<double>(s.begin(), s.end());
          },
          py::arg("rho"));

    m.def("measure",
          [](const StateVector& psi, const std::string& probe) {
              return measure_dict(measure::measure_m(psi, probe_from(probe)));
          },
          py::arg("psi"), py::arg("probe"));
    m.def("measure",
          [](const DensityMatrix& rho, const std::string& probe) {
              return measure_dict(measure::measure_m(rho, probe_from(probe)));
          },
          py::arg("rho"), py::arg("probe"));

    m.def("additivity_check",
          [](const StateVector& sigma, const StateVector& eta, const std::string& probe) {
              const auto rep = measure::additivity_check(sigma, eta, probe_from(probe));
              py::dict out;
              out["m_lhs"] = rep.m_lhs;
              out["m_rhs"] = rep.m_rhs;
              out["m_gap"] = rep.m_gap;
              out["mt_lhs"] = rep.mt_lhs;
              out["mt_rhs"] = rep.mt_rhs;
              out["mt_gap"] = rep.mt_gap;
              return out;
          },
          py::arg("sigma"), py::arg("eta"), py::arg("probe"));

    m.def("convex_roof",
          [](const DensityMatrix& rho, const std::string& probe, int restarts, int member_cap,
             std::uint64_t seed, double tolerance) {
              convexroof::RoofOptions opts;
              opts.restarts = restarts;
              opts.member_cap = member_cap;
              opts.seed = seed;
              opts.tolerance = tolerance;
              const auto res = convexroof::convex_roof(rho, probe_from(probe), opts);
              py::list weights, members;
              for (double w : res.decomposition.weights) weights.append(w);
              for (const auto& psi : res.decomposition.members) members.append(psi);
              py::dict out;
              out["upper_bound"] = res.value;
              out["converged"] = res.converged;
              out["restarts_used"] = res.restarts_used;
              out["weights"] = std::move(weights);
              out["members"] = std::move(members);
              return out;
          },
          py::arg("rho"), py::arg("probe"), py::arg("restarts") = 64, py::arg("member_cap") = 0,
          py::arg("seed") = 1, py::arg("tolerance") = 1e-6);

    m.def("locc_trial",
          [](const StateVector& psi, const std::string& probe, int rounds, std::uint64_t seed) {
              const auto rep = locc::locc_monotonicity_trial(psi, probe_from(probe), rounds, seed);
              py::dict out;
              out["initial_m"] = rep.initial_m;
              out["round_averages"] = rep.round_averages;
              out["worst_margin"] = rep.worst_margin;
              out["violation"] = rep.violation;
              return out;
          },
          py::arg("psi"), py::arg("probe"), py::arg("rounds"), py::arg("seed"));

    m.def("ssa_falsify",
          [](const StateVector& psi, const SiteSubset& a, const SiteSubset& ap, const SiteSubset& b,
             const SiteSubset& bp, const std::string& probe, int restarts, std::uint64_t seed) {
              measure::SsaOptions opts;
              opts.restarts = restarts;
              opts.seed = seed;
              const auto rep = measure::ssa_falsify(psi, a, ap, b, bp, probe_from(probe), opts);
              py::dict out;
              out["lhs"] = rep.lhs;
              out["rhs_upper_bound"] = rep.rhs_upper_bound;
              out["margin"] = rep.margin;
              out["falsification_candidate"] = rep.falsification_candidate;
              return out;
          },
          py::arg("psi"), py::arg("a"), py::arg("a_prime"), py::arg("b"), py::arg("b_prime"),
          py::arg("probe"), py::arg("restarts") = 16, py::arg("seed") = 1);
}
