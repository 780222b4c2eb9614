#include "pairent/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <limits>

namespace pairent::numerics {

const Matrix& sigma_y() {
    static const Matrix sy = [] {
        Matrix m(2, 2);
        m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
        return m;
    }();
    return sy;
}

double max_abs(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return max_abs(a - a.adjoint()) <= tol;
}

EigenSystem hermitian_eigensystem(const Matrix& a) {
    if (a.rows() != a.cols()) throw UsageError("hermitian_eigensystem: matrix not square");
    if (!is_hermitian(a, kConstructTol * std::max(1.0, max_abs(a)) * 10))
        throw UsageError("hermitian_eigensystem: matrix not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw NumericError("hermitian_eigensystem: solver did not converge");
    EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};
    const Matrix recon = sys.vectors * sys.values.asDiagonal() * sys.vectors.adjoint();
    const double resid = max_abs(a - recon);
    const double scale = std::max(1.0, max_abs(a));
    if (resid > kSolverTol * scale)
        throw NumericError("hermitian_eigensystem: residual " + std::to_string(resid) +
                           " exceeds tolerance");
    return sys;
}

Matrix psd_sqrt(const Matrix& a) {
    EigenSystem sys = hermitian_eigensystem(a);
    // Eigenvalues at the solver's noise level must be treated as exact
    // zeros: the square root turns an O(eps) residual into an O(sqrt(eps))
    // one, which is far above every downstream tolerance.
    const double floor =
        64.0 * std::numeric_limits<double>::epsilon() * std::max(1e-30, sys.values.maxCoeff());
    RealVector roots(sys.values.size());
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        double v = sys.values[i];
        if (v < -kSolverTol)
            throw NumericError("psd_sqrt: matrix not PSD, eigenvalue " + std::to_string(v));
        roots[i] = v > floor ? std::sqrt(v) : 0.0;
    }
    return sys.vectors * roots.asDiagonal() * sys.vectors.adjoint();
}

std::vector<cplx> general_eigenvalues(const Matrix& a) {
    if (a.rows() != a.cols()) throw UsageError("general_eigenvalues: matrix not square");
    if (a.rows() > 16) throw UsageError("general_eigenvalues: dimension > 16");
    Eigen::ComplexEigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("general_eigenvalues: solver did not converge");
    std::vector<cplx> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
    return out;
}

std::vector<double> real_spectrum(const std::vector<cplx>& eigs, double imag_tol) {
    std::vector<double> out;
    out.reserve(eigs.size());
    for (const cplx& e : eigs) {
        if (std::abs(e.imag()) > imag_tol)
            throw NumericError("real_spectrum: imaginary part " + std::to_string(e.imag()) +
                               " exceeds tolerance");
        out.push_back(e.real());
    }
    return out;
}

}  // namespace pairent::numerics
