#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairent {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Bad arguments or malformed input (CLI exit code 2).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numeric failure: non-convergence, broken positivity, etc. (CLI exit code 3).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace numerics {

// Tolerance ladder: construction 1e-12, solver residuals 1e-10,
// derived comparisons 1e-8/1e-9.
inline constexpr double kConstructTol = 1e-12;
inline constexpr double kSolverTol = 1e-10;
inline constexpr double kDerivedTol = 1e-8;

/// Second Pauli matrix, used by the two-qubit spin flip.
const Matrix& sigma_y();

double max_abs(const Matrix& a);

bool is_hermitian(const Matrix& a, double tol = kConstructTol);

struct EigenSystem {
    RealVector values;  // ascending
    Matrix vectors;     // orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. Checks the residual
/// ‖A − VΛV†‖ and orthonormality at the solver tolerance.
EigenSystem hermitian_eigensystem(const Matrix& a);

/// Hermitian PSD square root. Eigenvalues in [−1e-10, 0) are clamped
/// to zero; anything more negative raises NumericError.
Matrix psd_sqrt(const Matrix& a);

/// Eigenvalues of a general square matrix (dimension ≤ 16).
std::vector<cplx> general_eigenvalues(const Matrix& a);

/// Real parts of a spectrum that is real in exact arithmetic.
/// Imaginary parts below 1e-8 are dropped, larger ones raise.
std::vector<double> real_spectrum(const std::vector<cplx>& eigs,
                                  double imag_tol = kDerivedTol);

}  // namespace numerics
}  // namespace pairent
