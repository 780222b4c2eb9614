#pragma once

#include <array>

#include "pairent/qstate.hpp"

namespace pairent {

enum class ProbeKind { QuasiConcurrence, MutualInformation };

const char* probe_name(ProbeKind kind);

namespace probes {

/// Square roots of the eigenvalues of ρρ̃, descending.
struct WoottersSpectrum {
    std::array<double, 4> lambdas{};
};

/// ρ̃ = (σ₂⊗σ₂) ρ* (σ₂⊗σ₂). Two qubits only.
DensityMatrix spin_flip(const DensityMatrix& rho);

/// Computed via the Hermitian route: eigenvalues of √ρ ρ̃ √ρ, square-rooted.
WoottersSpectrum wootters_spectrum(const DensityMatrix& rho);

/// Wootters concurrence max{0, λ₁−λ₂−λ₃−λ₄}.
double concurrence(const DensityMatrix& rho);

/// Quasi-concurrence λ₁+λ₂−λ₃−λ₄; zero iff ρ is factorizable.
double quasi_concurrence(const DensityMatrix& rho);

/// −Σ μ log₂ μ over the spectrum, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Halved mutual information ½[S(A)+S(B)−S(AB)] for a two-site register.
double mutual_information_fr(const DensityMatrix& rho);

double probe_eval(ProbeKind kind, const DensityMatrix& rho);

}  // namespace probes
}  // namespace pairent
