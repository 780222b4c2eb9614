#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "pairent/numerics.hpp"

namespace pairent {

/// Ordered, strictly increasing, nonempty site indices within [0, N).
using SiteSubset = std::vector<int>;

/// Pure state of N qudits with local dimension d. Site 0 is the leftmost
/// tensor factor: basis index i encodes site 0 as the most significant
/// base-d digit.
struct StateVector {
    int num_sites = 0;
    int local_dim = 2;
    Vector amps;

    Eigen::Index dim() const { return amps.size(); }
    void validate() const;
};

struct DensityMatrix {
    int num_sites = 0;
    int local_dim = 2;
    Matrix mat;

    Eigen::Index dim() const { return mat.rows(); }
    void validate() const;
    double purity() const;
};

using State = std::variant<StateVector, DensityMatrix>;

namespace qstate {

std::int64_t pow_int(int base, int exp);

void check_subset(const SiteSubset& keep, int num_sites);

DensityMatrix density_of(const StateVector& psi);

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSubset& keep);

/// Reduced density matrix of a pure state; same semantics as
/// partial_trace(density_of(psi), keep) without forming the full matrix.
DensityMatrix reduced(const StateVector& psi, const SiteSubset& keep);

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Named-state library: epr; ghz:N; w:N; psi4; chi4; cluster4;
/// mems:x (mixed); puremems:x; zero:N; basis:N:k.
State named_state(const std::string& spec);

StateVector random_pure(int n, int d, std::uint64_t seed);
DensityMatrix random_mixed(int n, int d, int rank, std::uint64_t seed);
StateVector random_product(int n, int d, std::uint64_t seed);

/// Haar-random d×d unitary (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(int d, std::uint64_t seed);

struct ParsedKet {
    StateVector state;
    bool normalization_warning = false;  // input norm off by more than 1e-6
};

/// Parses a ket expression such as "1/2|0000> + sqrt(3)/3|0110>".
/// Digits are base d (inferred from the largest digit, minimum 2).
ParsedKet parse_ket(const std::string& text);

}  // namespace qstate
}  // namespace pairent
