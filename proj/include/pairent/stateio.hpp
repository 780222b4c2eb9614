#pragma once

#include <json.hpp>

#include "pairent/qstate.hpp"

namespace pairent::stateio {

// Pure:  {"n": int, "d": int, "amplitudes": [[re, im], ...]}
// Mixed: {"n": int, "d": int, "matrix": [[[re, im], ...], ...]}

inline nlohmann::json to_json(const StateVector& psi) {
    nlohmann::json amps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < psi.dim(); ++i)
        amps.push_back({psi.amps[i].real(), psi.amps[i].imag()});
    return {{"n", psi.num_sites}, {"d", psi.local_dim}, {"amplitudes", std::move(amps)}};
}

inline nlohmann::json to_json(const DensityMatrix& rho) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < rho.dim(); ++j)
            row.push_back({rho.mat(i, j).real(), rho.mat(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return {{"n", rho.num_sites}, {"d", rho.local_dim}, {"matrix", std::move(rows)}};
}

inline nlohmann::json to_json(const State& state) {
    return std::visit([](const auto& s) { return to_json(s); }, state);
}

inline State state_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("d"))
        throw UsageError("state json: missing 'n' or 'd'");
    const int n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    if (j.contains("amplitudes")) {
        const auto& amps = j.at("amplitudes");
        Vector v(amps.size());
        for (std::size_t i = 0; i < amps.size(); ++i)
            v[static_cast<Eigen::Index>(i)] = cplx(amps[i].at(0).get<double>(),
                                                   amps[i].at(1).get<double>());
        StateVector psi{n, d, std::move(v)};
        psi.validate();
        return psi;
    }
    if (j.contains("matrix")) {
        const auto& rows = j.at("matrix");
        Matrix m(rows.size(), rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t k = 0; k < rows.size(); ++k)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                    cplx(rows[i][k].at(0).get<double>(), rows[i][k].at(1).get<double>());
        DensityMatrix rho{n, d, std::move(m)};
        rho.validate();
        return rho;
    }
    throw UsageError("state json: expected 'amplitudes' or 'matrix'");
}

}  // namespace pairent::stateio
