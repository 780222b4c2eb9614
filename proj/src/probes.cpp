#include "pairent/probes.hpp"

#include <algorithm>
#include <cmath>

namespace pairent {

const char* probe_name(ProbeKind kind) {
    return kind == ProbeKind::QuasiConcurrence ? "qc" : "fr";
}

namespace probes {

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* who) {
    if (rho.num_sites != 2 || rho.local_dim != 2)
        throw UsageError(std::string(who) + ": requires a two-qubit density matrix");
}

const Matrix& sigma_y_pair() {
    static const Matrix yy = [] {
        Matrix m(4, 4);
        const Matrix& sy = numerics::sigma_y();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m.block(i * 2, j * 2, 2, 2) = sy(i, j) * sy;
        return m;
    }();
    return yy;
}

}  // namespace

DensityMatrix spin_flip(const DensityMatrix& rho) {
    require_two_qubits(rho, "spin_flip");
    return DensityMatrix{2, 2, sigma_y_pair() * rho.mat.conjugate() * sigma_y_pair()};
}

WoottersSpectrum wootters_spectrum(const DensityMatrix& rho) {
    require_two_qubits(rho, "wootters_spectrum");
    const Matrix root = numerics::psd_sqrt(rho.mat);
    const Matrix& yy = sigma_y_pair();
    // T T† = √ρ ρ̃ √ρ, so the λ's are the singular values of T; the SVD
    // keeps the small ones far more accurate than square-rooting
    // eigenvalues of the product.
    const Matrix t = root * yy * root.transpose();
    Eigen::JacobiSVD<Matrix> svd(t);
    WoottersSpectrum spec;
    for (int i = 0; i < 4; ++i) spec.lambdas[i] = svd.singularValues()[i];
    return spec;
}

double concurrence(const DensityMatrix& rho) {
    const auto s = wootters_spectrum(rho).lambdas;
    return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

double quasi_concurrence(const DensityMatrix& rho) {
    const auto s = wootters_spectrum(rho).lambdas;
    return s[0] + s[1] - s[2] - s[3];
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.mat, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double mu = solver.eigenvalues()[i];
        if (mu < -numerics::kSolverTol)
            throw NumericError("von_neumann_entropy: eigenvalue " + std::to_string(mu) +
                               " below the PSD floor");
        if (mu > 0) entropy -= mu * std::log2(mu);
    }
    return std::max(0.0, entropy);
}

double mutual_information_fr(const DensityMatrix& rho) {
    if (rho.num_sites != 2) throw UsageError("mutual_information_fr: requires a two-site register");
    const double s_ab = von_neumann_entropy(rho);
    const double s_a = von_neumann_entropy(qstate::partial_trace(rho, {0}));
    const double s_b = von_neumann_entropy(qstate::partial_trace(rho, {1}));
    return 0.5 * (s_a + s_b - s_ab);
}

double probe_eval(ProbeKind kind, const DensityMatrix& rho) {
    if (kind == ProbeKind::QuasiConcurrence) {
        if (rho.local_dim != 2)
            throw UsageError("probe_eval: the quasi-concurrence is defined for qubits only");
        return quasi_concurrence(rho);
    }
    return mutual_information_fr(rho);
}

}  // namespace probes
}  // namespace pairent
