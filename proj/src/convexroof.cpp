#include "pairent/convexroof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pairent::convexroof {

DensityMatrix EnsembleDecomposition::reconstruct() const {
    if (members.empty()) throw UsageError("EnsembleDecomposition: empty ensemble");
    const auto dim = members.front().dim();
    Matrix acc = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < members.size(); ++i)
        acc += weights[i] * (members[i].amps * members[i].amps.adjoint());
    return DensityMatrix{members.front().num_sites, members.front().local_dim, std::move(acc)};
}

double EnsembleDecomposition::reconstruction_residual(const DensityMatrix& target) const {
    return numerics::max_abs(reconstruct().mat - target.mat);
}

EnsembleDecomposition eigen_ensemble(const DensityMatrix& rho) {
    const auto sys = numerics::hermitian_eigensystem(rho.mat);
    EnsembleDecomposition ens;
    for (Eigen::Index i = sys.values.size(); i-- > 0;) {
        const double p = sys.values[i];
        if (p <= 1e-10) continue;
        ens.weights.push_back(p);
        ens.members.push_back(StateVector{rho.num_sites, rho.local_dim, sys.vectors.col(i)});
    }
    if (ens.members.empty()) throw NumericError("eigen_ensemble: state has no spectral weight");
    return ens;
}

EnsembleDecomposition steer_ensemble(const EnsembleDecomposition& base, const Matrix& isometry) {
    const auto r = static_cast<Eigen::Index>(base.members.size());
    if (isometry.cols() != r)
        throw UsageError("steer_ensemble: isometry column count must equal the member count");
    if (isometry.rows() < r) throw UsageError("steer_ensemble: isometry must have rows >= cols");
    const Matrix gram = isometry.adjoint() * isometry;
    if (numerics::max_abs(gram - Matrix::Identity(r, r)) > 1e-10)
        throw UsageError("steer_ensemble: columns are not orthonormal");

    const auto dim = base.members.front().dim();
    Matrix w(dim, r);  // columns √p_i |e_i⟩
    for (Eigen::Index i = 0; i < r; ++i)
        w.col(i) = std::sqrt(base.weights[i]) * base.members[i].amps;

    EnsembleDecomposition out;
    for (Eigen::Index j = 0; j < isometry.rows(); ++j) {
        Vector phi = w * isometry.row(j).transpose();
        const double q = phi.squaredNorm();
        if (q < 1e-14) continue;
        out.weights.push_back(q);
        phi /= std::sqrt(q);
        out.members.push_back(
            StateVector{base.members.front().num_sites, base.members.front().local_dim, std::move(phi)});
    }
    return out;
}

namespace {

// Weighted measure q·M(φ/‖φ‖) of an unnormalized pure member. Two-qubit
// inputs take closed-form shortcuts; everything else goes through the
// generic pair-profile path.
struct MemberObjective {
    int num_sites;
    int local_dim;
    ProbeKind kind;

    static double binary_entropy(double p) {
        double h = 0.0;
        if (p > 0) h -= p * std::log2(p);
        if (1 - p > 0) h -= (1 - p) * std::log2(1 - p);
        return h;
    }

    double operator()(const Vector& phi) const {
        const double q = phi.squaredNorm();
        if (q < 1e-16) return 0.0;
        if (num_sites == 2 && local_dim == 2) {
            // pure-state concurrence 2|a₀a₃ − a₁a₂|; Q_C coincides with it
            const double c = 2.0 * std::abs(phi[0] * phi[3] - phi[1] * phi[2]) / q;
            if (kind == ProbeKind::QuasiConcurrence) return q * c;
            const double arg = std::max(0.0, 1.0 - c * c);
            return q * binary_entropy(0.5 * (1.0 + std::sqrt(arg)));
        }
        StateVector psi{num_sites, local_dim, phi / std::sqrt(q)};
        return q * measure::measure_m(psi, kind).m_value;
    }
};

constexpr double kGolden = 0.6180339887498949;

// Coarse grid bracket followed by golden-section refinement.
template <typename F>
std::pair<double, double> line_min(const F& f, double lo, double hi, int grid, double xtol) {
    double best_x = lo, best_f = f(lo);
    const double step = (hi - lo) / grid;
    for (int i = 1; i <= grid; ++i) {
        const double x = lo + i * step;
        const double v = f(x);
        if (v < best_f) {
            best_f = v;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    if (f1 < best_f) {
        best_f = f1;
        best_x = x1;
    }
    if (f2 < best_f) {
        best_f = f2;
        best_x = x2;
    }
    return {best_x, best_f};
}

// Ensemble state during refinement: member columns Φ (unnormalized) and
// their cached objective contributions.
struct Workspace {
    Matrix phi;                  // dim × m
    std::vector<double> contrib;
    double total = 0.0;

    void init(const Matrix& members, const MemberObjective& obj) {
        phi = members;
        contrib.resize(phi.cols());
        total = 0.0;
        for (Eigen::Index j = 0; j < phi.cols(); ++j) {
            contrib[j] = obj(phi.col(j));
            total += contrib[j];
        }
    }
};

// Cycles two-coordinate rotations (angle, then relative phase, then angle
// again) over all member pairs until a full sweep improves less than tol.
double refine(Workspace& ws, const MemberObjective& obj, double tol, int max_sweeps,
              std::mt19937_64& rng) {
    using std::numbers::pi;
    const auto m = ws.phi.cols();
    std::vector<std::pair<Eigen::Index, Eigen::Index>> order;
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = j + 1; k < m; ++k) order.emplace_back(j, k);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const double before = ws.total;
        // fresh visiting order each sweep; a fixed cyclic order can pin the
        // descent in joint local minima
        std::shuffle(order.begin(), order.end(), rng);
        for (auto [j, k] : order) {
            {
                const Vector cj = ws.phi.col(j), ck = ws.phi.col(k);
                const double base = ws.contrib[j] + ws.contrib[k];
                const auto pair_value = [&](double th, double ph) {
                    const cplx e = std::polar(std::sin(th), ph);
                    const double c = std::cos(th);
                    return obj(c * cj + e * ck) + obj(c * ck - std::conj(e) * cj);
                };
                // Coarse joint grid first: a pure angle search at phase 0 is
                // blind to descent directions that need a phase (θ=0 makes
                // the phase a no-op), so bracket in both coordinates at once.
                double theta = 0.0, phase = 0.0, best = base;
                for (int it = 1; it < 10; ++it) {
                    const double th = -pi / 2 + it * (pi / 10);
                    if (std::abs(th) < 1e-12) continue;
                    for (int ip = 0; ip < 8; ++ip) {
                        const double ph = -pi + ip * (pi / 4);
                        const double v = pair_value(th, ph);
                        if (v < best) {
                            best = v;
                            theta = th;
                            phase = ph;
                        }
                    }
                }
                for (int cycle = 0; cycle < 3; ++cycle) {
                    auto [th, vt] = line_min([&](double t) { return pair_value(t, phase); },
                                             -pi / 2, pi / 2, 8, 1e-4);
                    if (vt < best) {
                        best = vt;
                        theta = th;
                    }
                    auto [ph, vp] = line_min([&](double p) { return pair_value(theta, p); },
                                             -pi, pi, 8, 1e-4);
                    if (vp < best) {
                        best = vp;
                        phase = ph;
                    }
                }
                if (best < base - 1e-15) {
                    const cplx e = std::polar(std::sin(theta), phase);
                    const double c = std::cos(theta);
                    ws.phi.col(j) = c * cj + e * ck;
                    ws.phi.col(k) = c * ck - std::conj(e) * cj;
                    ws.contrib[j] = obj(ws.phi.col(j));
                    ws.contrib[k] = obj(ws.phi.col(k));
                    ws.total += ws.contrib[j] + ws.contrib[k] - base;
                }
            }
        }
        if (before - ws.total < tol) break;
    }
    return ws.total;
}

Matrix random_isometry(Eigen::Index m, Eigen::Index r, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix a(m, r);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < r; ++j) a(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ() * Matrix::Identity(m, r);
    return q;
}

EnsembleDecomposition ensemble_from_columns(const Matrix& phi, int n, int d) {
    EnsembleDecomposition out;
    for (Eigen::Index j = 0; j < phi.cols(); ++j) {
        const double q = phi.col(j).squaredNorm();
        if (q < 1e-14) continue;
        out.weights.push_back(q);
        out.members.push_back(StateVector{n, d, phi.col(j) / std::sqrt(q)});
    }
    return out;
}

}  // namespace

RoofResult convex_roof(const DensityMatrix& rho, ProbeKind kind, const RoofOptions& options) {
    if (kind == ProbeKind::QuasiConcurrence && rho.local_dim != 2)
        throw UsageError("convex_roof: quasi-concurrence requires qubits");
    const EnsembleDecomposition base = eigen_ensemble(rho);
    const auto rank = static_cast<int>(base.members.size());

    RoofResult result;
    if (rank == 1) {
        // pure input, nothing to optimize
        result.value = measure::measure_m(base.members.front(), kind).m_value;
        result.decomposition = base;
        result.converged = true;
        return result;
    }

    const int m = options.member_cap > 0 ? options.member_cap : rank + 2;
    if (m < rank) throw UsageError("convex_roof: member cap below the state rank");

    const auto dim = rho.dim();
    Matrix w(dim, rank);
    for (int i = 0; i < rank; ++i) w.col(i) = std::sqrt(base.weights[i]) * base.members[i].amps;

    const MemberObjective obj{rho.num_sites, rho.local_dim, kind};
    std::mt19937_64 rng(options.seed);

    Workspace ws;
    Matrix best_phi;
    double best = std::numeric_limits<double>::infinity();
    const int max_sweeps = 40;

    for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
        if (restart == 0) {
            Matrix v = Matrix::Zero(m, rank);  // eigen-ensemble baseline
            v.topRows(rank) = Matrix::Identity(rank, rank);
            ws.init(w * v.transpose(), obj);
        } else if (restart % 4 == 3 && best_phi.size() > 0) {
            // polish the incumbent from a nearby basin
            std::normal_distribution<double> g(0.0, 0.15);
            Matrix pert = Matrix::Identity(m, m);
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j < m; ++j) pert(i, j) += cplx(g(rng), g(rng));
            Eigen::HouseholderQR<Matrix> qr(pert);
            Matrix q = qr.householderQ() * Matrix::Identity(m, m);
            ws.init(best_phi * q.transpose(), obj);
        } else {
            ws.init(w * random_isometry(m, rank, rng).transpose(), obj);
        }
        const double value = refine(ws, obj, options.tolerance, max_sweeps, rng);
        if (value < best) {
            best = value;
            best_phi = ws.phi;
        }
        result.restart_trace.push_back(best);
        ++result.restarts_used;
    }

    // Final polish: pairwise coordinate descent can stall in joint local
    // minima, so kick the incumbent with shrinking random rotations and
    // keep whatever descends.
    const int polish_rounds = std::max(24, (3 * options.restarts) / 4);
    for (int round = 0; round < polish_rounds; ++round) {
        const double sigma = 0.25 * std::pow(0.005 / 0.25, double(round) / std::max(1, polish_rounds - 1));
        std::normal_distribution<double> g(0.0, sigma);
        Matrix pert = Matrix::Identity(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) pert(i, j) += cplx(g(rng), g(rng));
        Eigen::HouseholderQR<Matrix> qr(pert);
        Matrix q = qr.householderQ() * Matrix::Identity(m, m);
        ws.init(best_phi * q.transpose(), obj);
        const double value = refine(ws, obj, options.tolerance, max_sweeps, rng);
        if (value < best) {
            best = value;
            best_phi = ws.phi;
        }
    }

    result.value = best;
    result.decomposition = ensemble_from_columns(best_phi, rho.num_sites, rho.local_dim);
    const std::size_t tail = result.restart_trace.size() - result.restart_trace.size() / 3;
    result.converged = result.restart_trace.size() < 3 ||
                       result.restart_trace[tail - 1] - best <= options.tolerance;
    return result;
}

PairwiseConditionReport pairwise_condition_check(const DensityMatrix& rho, ProbeKind kind,
                                                 const RoofOptions& options) {
    if (rho.num_sites != 2) throw UsageError("pairwise_condition_check: two-site states only");
    PairwiseConditionReport rep;
    rep.direct_value = probes::probe_eval(kind, rho);
    rep.roof_value = convex_roof(rho, kind, options).value;
    rep.satisfied = rep.direct_value >= rep.roof_value - 1e-6;
    return rep;
}

}  // namespace pairent::convexroof
