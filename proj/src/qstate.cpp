#include "pairent/qstate.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace pairent {

void StateVector::validate() const {
    if (num_sites < 1 || local_dim < 2) throw UsageError("StateVector: need N >= 1, d >= 2");
    if (amps.size() != qstate::pow_int(local_dim, num_sites))
        throw UsageError("StateVector: amplitude count does not match d^N");
    const double norm2 = amps.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-10)
        throw UsageError("StateVector: norm deviates from 1 by " + std::to_string(norm2 - 1.0));
}

void DensityMatrix::validate() const {
    if (num_sites < 1 || local_dim < 2) throw UsageError("DensityMatrix: need N >= 1, d >= 2");
    const auto d = qstate::pow_int(local_dim, num_sites);
    if (mat.rows() != d || mat.cols() != d)
        throw UsageError("DensityMatrix: dimension does not match d^N");
    if (!numerics::is_hermitian(mat, 1e-10)) throw UsageError("DensityMatrix: not Hermitian");
    if (std::abs(mat.trace().real() - 1.0) > 1e-10 || std::abs(mat.trace().imag()) > 1e-10)
        throw UsageError("DensityMatrix: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(mat, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-9)
        throw UsageError("DensityMatrix: negative eigenvalue " +
                         std::to_string(solver.eigenvalues().minCoeff()));
}

double DensityMatrix::purity() const { return (mat * mat).trace().real(); }

namespace qstate {

std::int64_t pow_int(int base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_subset(const SiteSubset& keep, int num_sites) {
    if (keep.empty()) throw UsageError("site subset must be nonempty");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= num_sites)
            throw UsageError("site index out of range: " + std::to_string(keep[i]));
        if (i > 0 && keep[i] <= keep[i - 1])
            throw UsageError("site subset must be strictly increasing");
    }
}

DensityMatrix density_of(const StateVector& psi) {
    psi.validate();
    DensityMatrix rho{psi.num_sites, psi.local_dim, psi.amps * psi.amps.adjoint()};
    return rho;
}

namespace {

// Offsets into the full basis index for every multi-index over `sites`,
// with sites[0] as the most significant digit of the sub-register.
std::vector<std::int64_t> site_offsets(const SiteSubset& sites, int num_sites, int d) {
    const std::int64_t count = pow_int(d, static_cast<int>(sites.size()));
    std::vector<std::int64_t> strides(sites.size());
    for (std::size_t j = 0; j < sites.size(); ++j)
        strides[j] = pow_int(d, num_sites - 1 - sites[j]);
    std::vector<std::int64_t> offs(count, 0);
    for (std::int64_t a = 0; a < count; ++a) {
        std::int64_t rem = a, off = 0;
        for (std::size_t j = sites.size(); j-- > 0;) {
            off += (rem % d) * strides[j];
            rem /= d;
        }
        offs[a] = off;
    }
    return offs;
}

SiteSubset complement(const SiteSubset& keep, int num_sites) {
    SiteSubset env;
    std::size_t k = 0;
    for (int s = 0; s < num_sites; ++s) {
        if (k < keep.size() && keep[k] == s) {
            ++k;
        } else {
            env.push_back(s);
        }
    }
    return env;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSubset& keep) {
    check_subset(keep, rho.num_sites);
    const int d = rho.local_dim;
    const auto keptOff = site_offsets(keep, rho.num_sites, d);
    const auto envOff = site_offsets(complement(keep, rho.num_sites), rho.num_sites, d);
    const auto dim = static_cast<Eigen::Index>(keptOff.size());
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b) {
            cplx sum = 0;
            for (std::int64_t e : envOff) sum += rho.mat(keptOff[a] + e, keptOff[b] + e);
            out(a, b) = sum;
        }
    return DensityMatrix{static_cast<int>(keep.size()), d, std::move(out)};
}

DensityMatrix reduced(const StateVector& psi, const SiteSubset& keep) {
    check_subset(keep, psi.num_sites);
    const int d = psi.local_dim;
    const auto keptOff = site_offsets(keep, psi.num_sites, d);
    const auto envOff = site_offsets(complement(keep, psi.num_sites), psi.num_sites, d);
    const auto dim = static_cast<Eigen::Index>(keptOff.size());
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b <= a; ++b) {
            cplx sum = 0;
            for (std::int64_t e : envOff)
                sum += psi.amps[keptOff[a] + e] * std::conj(psi.amps[keptOff[b] + e]);
            out(a, b) = sum;
            out(b, a) = std::conj(sum);
        }
    return DensityMatrix{static_cast<int>(keep.size()), d, std::move(out)};
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    if (a.local_dim != b.local_dim) throw UsageError("tensor: mismatched local dimensions");
    StateVector out{a.num_sites + b.num_sites, a.local_dim, Vector(a.dim() * b.dim())};
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        for (Eigen::Index j = 0; j < b.dim(); ++j) out.amps[i * b.dim() + j] = a.amps[i] * b.amps[j];
    return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.local_dim != b.local_dim) throw UsageError("tensor: mismatched local dimensions");
    const auto da = a.dim(), db = b.dim();
    Matrix out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = a.mat(i, j) * b.mat;
    return DensityMatrix{a.num_sites + b.num_sites, a.local_dim, std::move(out)};
}

namespace {

StateVector from_terms(int n, const std::vector<std::pair<std::int64_t, cplx>>& terms) {
    StateVector psi{n, 2, Vector::Zero(pow_int(2, n))};
    for (auto& [idx, amp] : terms) psi.amps[idx] = amp;
    psi.amps.normalize();
    return psi;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

int parse_count(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("named_state: bad ") + what + " '" + s + "'");
    }
}

double parse_real(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("named_state: bad ") + what + " '" + s + "'");
    }
}

}  // namespace

State named_state(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw UsageError("named_state: empty spec");
    const std::string& name = parts[0];
    const auto require_args = [&](std::size_t n) {
        if (parts.size() != n + 1)
            throw UsageError("named_state: '" + name + "' takes " + std::to_string(n) +
                             " parameter(s)");
    };
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    if (name == "epr") {
        require_args(0);
        return from_terms(2, {{0, inv_sqrt2}, {3, inv_sqrt2}});
    }
    if (name == "ghz") {
        require_args(1);
        int n = parse_count(parts[1], "N");
        if (n < 2) throw UsageError("named_state: ghz needs N >= 2");
        return from_terms(n, {{0, inv_sqrt2}, {pow_int(2, n) - 1, inv_sqrt2}});
    }
    if (name == "w") {
        require_args(1);
        int n = parse_count(parts[1], "N");
        if (n < 3) throw UsageError("named_state: w needs N >= 3");
        std::vector<std::pair<std::int64_t, cplx>> terms;
        for (int s = 0; s < n; ++s) terms.emplace_back(pow_int(2, n - 1 - s), 1.0);
        return from_terms(n, terms);
    }
    if (name == "psi4") {
        require_args(0);
        return from_terms(4, {{0b0000, 0.5}, {0b0110, 0.5}, {0b1001, 0.5}, {0b1111, 0.5}});
    }
    if (name == "chi4") {
        require_args(0);
        const double c = 1.0 / (2.0 * std::sqrt(2.0));
        return from_terms(4, {{0b0000, c},
                              {0b0011, -c},
                              {0b0101, -c},
                              {0b0110, c},
                              {0b1001, c},
                              {0b1010, c},
                              {0b1100, c},
                              {0b1111, c}});
    }
    if (name == "cluster4") {
        require_args(0);
        return from_terms(4, {{0b0000, 0.5}, {0b0110, 0.5}, {0b1001, 0.5}, {0b1111, -0.5}});
    }
    if (name == "mems") {
        require_args(1);
        double x = parse_real(parts[1], "x");
        if (x < 0 || x > 1) throw UsageError("named_state: mems needs 0 <= x <= 1");
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(3, 3) = m(0, 3) = m(3, 0) = x / 2;
        m(1, 1) = 1 - x;
        return DensityMatrix{2, 2, std::move(m)};
    }
    if (name == "puremems") {
        require_args(1);
        double x = parse_real(parts[1], "x");
        if (x < 0 || x > 1) throw UsageError("named_state: puremems needs 0 <= x <= 1");
        const double a = std::sqrt(x / 4.0);
        return from_terms(4, {{0b0101, std::sqrt(1 - x)},
                              {0b0000, a},
                              {0b0011, a},
                              {0b1100, a},
                              {0b1111, a}});
    }
    if (name == "zero") {
        require_args(1);
        int n = parse_count(parts[1], "N");
        if (n < 1) throw UsageError("named_state: zero needs N >= 1");
        return from_terms(n, {{0, 1.0}});
    }
    if (name == "basis") {
        require_args(2);
        int n = parse_count(parts[1], "N");
        int k = parse_count(parts[2], "k");
        if (n < 1 || k < 0 || k >= pow_int(2, n))
            throw UsageError("named_state: basis index out of range");
        return from_terms(n, {{k, 1.0}});
    }
    throw UsageError("named_state: unknown state '" + name + "'");
}

namespace {

Vector gaussian_vector(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double re = g(rng), im = g(rng);
        v[i] = cplx(re, im);
    }
    return v;
}

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

}  // namespace

StateVector random_pure(int n, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Vector v = gaussian_vector(pow_int(d, n), rng);
    v.normalize();
    return StateVector{n, d, std::move(v)};
}

DensityMatrix random_mixed(int n, int d, int rank, std::uint64_t seed) {
    const auto dim = pow_int(d, n);
    if (rank < 1 || rank > dim) throw UsageError("random_mixed: rank out of range");
    std::mt19937_64 rng(seed);
    // Partial trace of a purification with a rank-sized ancilla.
    Matrix g = ginibre(dim, rank, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix{n, d, std::move(rho)};
}

StateVector random_product(int n, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    StateVector out{0, d, Vector::Ones(1)};
    out.num_sites = 0;
    for (int s = 0; s < n; ++s) {
        Vector v = gaussian_vector(d, rng);
        v.normalize();
        StateVector site{1, d, std::move(v)};
        out = out.num_sites == 0 ? site : tensor(out, site);
    }
    return out;
}

Matrix random_unitary(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix g = ginibre(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        cplx diag = r(i, i);
        if (std::abs(diag) > 0) q.col(i) *= diag / std::abs(diag);
    }
    return q;
}

}  // namespace qstate
}  // namespace pairent
