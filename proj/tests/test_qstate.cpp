#include <doctest.h>

#include "pairent/qstate.hpp"
#include "pairent/stateio.hpp"

using namespace pairent;
using namespace pairent::qstate;

namespace {

// Independent partial-trace oracle: walks every pair of full basis
// indices, decodes digits, and accumulates where the environment digits
// agree. Deliberately naive.
DensityMatrix partial_trace_oracle(const DensityMatrix& rho, const SiteSubset& keep) {
    const int n = rho.num_sites, d = rho.local_dim;
    const auto decode = [&](std::int64_t idx) {
        std::vector<int> digits(n);
        for (int s = n - 1; s >= 0; --s) {
            digits[s] = static_cast<int>(idx % d);
            idx /= d;
        }
        return digits;
    };
    const auto dim_out = pow_int(d, static_cast<int>(keep.size()));
    Matrix out = Matrix::Zero(dim_out, dim_out);
    for (std::int64_t r = 0; r < rho.dim(); ++r) {
        for (std::int64_t c = 0; c < rho.dim(); ++c) {
            const auto dr = decode(r), dc = decode(c);
            bool env_match = true;
            for (int s = 0; s < n; ++s) {
                if (std::find(keep.begin(), keep.end(), s) == keep.end() && dr[s] != dc[s])
                    env_match = false;
            }
            if (!env_match) continue;
            std::int64_t a = 0, b = 0;
            for (int s : keep) {
                a = a * d + dr[s];
                b = b * d + dc[s];
            }
            out(a, b) += rho.mat(r, c);
        }
    }
    return DensityMatrix{static_cast<int>(keep.size()), d, std::move(out)};
}

StateVector get_pure(const State& s) { return std::get<StateVector>(s); }

}  // namespace

TEST_CASE("density_of basics") {
    const auto zero = get_pure(named_state("basis:1:0"));
    const auto rho = density_of(zero);
    CHECK(std::abs(rho.mat(0, 0) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(rho.mat(1, 1)) < 1e-12);

    const auto epr = get_pure(named_state("epr"));
    const auto repr = density_of(epr);
    for (int i : {0, 3})
        for (int j : {0, 3}) CHECK(std::abs(repr.mat(i, j) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(repr.mat(1, 1)) < 1e-12);

    CHECK(density_of(get_pure(named_state("ghz:3"))).purity() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial_trace on Bell and basis states") {
    const auto epr = density_of(get_pure(named_state("epr")));
    const auto half = partial_trace(epr, {0});
    CHECK(numerics::max_abs(half.mat - 0.5 * Matrix::Identity(2, 2)) < 1e-12);

    const auto ket01 = density_of(get_pure(named_state("basis:2:1")));
    const auto site1 = partial_trace(ket01, {1});
    CHECK(std::abs(site1.mat(1, 1) - cplx(1.0)) < 1e-12);
}

TEST_CASE("W-state pair reduction spectrum matches the index-summation oracle") {
    const auto w = density_of(get_pure(named_state("w:3")));
    const auto red = partial_trace(w, {0, 1});
    const auto oracle = partial_trace_oracle(w, {0, 1});
    CHECK(numerics::max_abs(red.mat - oracle.mat) < 1e-12);
    const auto vals = numerics::hermitian_eigensystem(red.mat).values;
    CHECK(vals[3] == doctest::Approx(2.0 / 3).epsilon(1e-10));
    CHECK(vals[2] == doctest::Approx(1.0 / 3).epsilon(1e-10));
    CHECK(std::abs(vals[1]) < 1e-10);
    CHECK(std::abs(vals[0]) < 1e-10);
}

TEST_CASE("partial_trace matches the oracle on random states") {
    for (std::uint64_t seed : {1u, 2u}) {
        const auto rho = random_mixed(3, 2, 3, seed);
        for (const SiteSubset& keep : {SiteSubset{0}, SiteSubset{1, 2}, SiteSubset{0, 2}}) {
            CHECK(numerics::max_abs(partial_trace(rho, keep).mat -
                                    partial_trace_oracle(rho, keep).mat) < 1e-12);
        }
    }
    const auto qutrit = random_mixed(2, 3, 4, 9);
    CHECK(numerics::max_abs(partial_trace(qutrit, {1}).mat -
                            partial_trace_oracle(qutrit, {1}).mat) < 1e-12);
}

TEST_CASE("partial_trace rejects bad subsets") {
    const auto rho = density_of(get_pure(named_state("epr")));
    CHECK_THROWS_AS(partial_trace(rho, {}), UsageError);
    CHECK_THROWS_AS(partial_trace(rho, {2}), UsageError);
    CHECK_THROWS_AS(partial_trace(rho, {1, 0}), UsageError);
}

TEST_CASE("tensor products") {
    const auto zero = get_pure(named_state("basis:1:0"));
    const auto one = get_pure(named_state("basis:1:1"));
    const auto zo = tensor(zero, one);
    CHECK(std::abs(zo.amps[1] - cplx(1.0)) < 1e-12);

    const auto epr = get_pure(named_state("epr"));
    const auto two = tensor(epr, epr);
    for (int idx : {0b0000, 0b0011, 0b1100, 0b1111})
        CHECK(std::abs(two.amps[idx] - cplx(0.5)) < 1e-12);

    const auto rho = random_mixed(1, 2, 2, 3);
    const auto sigma = random_mixed(1, 2, 2, 4);
    CHECK(tensor(rho, sigma).mat.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("named_state coincidences and limits") {
    const auto ghz2 = get_pure(named_state("ghz:2"));
    const auto epr = get_pure(named_state("epr"));
    CHECK((ghz2.amps - epr.amps).norm() < 1e-12);

    const auto mems1 = std::get<DensityMatrix>(named_state("mems:1"));
    const auto bell = density_of(epr);
    CHECK(numerics::max_abs(mems1.mat - bell.mat) < 1e-12);

    CHECK_THROWS_AS(named_state("nosuch"), UsageError);
    CHECK_THROWS_AS(named_state("mems:1.5"), UsageError);
    CHECK_THROWS_AS(named_state("w:2"), UsageError);
}

TEST_CASE("puremems reduces to the MEMS matrix on sites {0,1}") {
    for (double x : {0.3, 0.7, 0.9}) {
        const auto pure = get_pure(named_state("puremems:" + std::to_string(x)));
        const auto kept = reduced(pure, {0, 1});
        const auto mems = std::get<DensityMatrix>(named_state("mems:" + std::to_string(x)));
        const Matrix delta = kept.mat - mems.mat;
        CHECK((delta * delta).trace().real() < 1e-10);
    }
}

TEST_CASE("random state generators") {
    const auto psi = random_pure(3, 2, 5);
    CHECK(psi.amps.norm() == doctest::Approx(1.0).epsilon(1e-12));
    psi.validate();

    const auto rho = random_mixed(2, 2, 3, 6);
    CHECK(rho.mat.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(numerics::hermitian_eigensystem(rho.mat).values.minCoeff() > -1e-10);

    // determinism
    CHECK((random_pure(3, 2, 5).amps - psi.amps).norm() == 0.0);

    const auto prod = random_product(4, 2, 7);
    prod.validate();
    CHECK(prod.num_sites == 4);
}

TEST_CASE("parse_ket grammar") {
    const auto psi4 = parse_ket("1/2|0000> + 1/2|0110> + 1/2|1001> + 1/2|1111>");
    CHECK_FALSE(psi4.normalization_warning);
    const auto named = get_pure(named_state("psi4"));
    CHECK((psi4.state.amps - named.amps).norm() < 1e-12);

    const auto basis = parse_ket("|00>");
    CHECK_FALSE(basis.normalization_warning);
    CHECK(std::abs(basis.state.amps[0] - cplx(1.0)) < 1e-12);

    const auto scaled = parse_ket("2|00>");
    CHECK(scaled.normalization_warning);
    CHECK(std::abs(scaled.state.amps[0] - cplx(1.0)) < 1e-12);

    const auto chi = parse_ket(
        "1/(2*sqrt(2))|0000> - 1/(2*sqrt(2))|0011> - 1/(2*sqrt(2))|0101> + 1/(2*sqrt(2))|0110>"
        " + 1/(2*sqrt(2))|1001> + 1/(2*sqrt(2))|1010> + 1/(2*sqrt(2))|1100> + 1/(2*sqrt(2))|1111>");
    CHECK((chi.state.amps - get_pure(named_state("chi4")).amps).norm() < 1e-12);

    const auto qutrit = parse_ket("|02> + |20>");
    CHECK(qutrit.state.local_dim == 3);

    const auto complex_coeff = parse_ket("1/sqrt(2)|0> + i/sqrt(2)|1>");
    CHECK(std::abs(complex_coeff.state.amps[1] - cplx(0, 1) / std::sqrt(2.0)) < 1e-12);

    CHECK_THROWS_AS(parse_ket("|00> + |000>"), UsageError);
    CHECK_THROWS_AS(parse_ket("1/2|00"), UsageError);
    CHECK_THROWS_AS(parse_ket("|00> - |00>"), UsageError);
    CHECK_THROWS_AS(parse_ket(""), UsageError);
}

TEST_CASE("partial trace composition") {
    for (std::uint64_t seed : {10u, 11u}) {
        const auto rho = density_of(random_pure(5, 2, seed));
        const auto step = partial_trace(partial_trace(rho, {0, 2, 4}), {0, 2});
        const auto direct = partial_trace(rho, {0, 4});
        CHECK(numerics::max_abs(step.mat - direct.mat) < 1e-10);
    }
}

TEST_CASE("partial trace of a product recovers the factor") {
    const auto rho = random_mixed(2, 2, 2, 13);
    const auto sigma = random_mixed(1, 2, 2, 14);
    const auto joint = tensor(rho, sigma);
    CHECK(numerics::max_abs(partial_trace(joint, {0, 1}).mat - rho.mat) < 1e-10);
}

TEST_CASE("Schmidt property: reduced spectra coincide on bipartitions") {
    const auto psi = random_pure(4, 2, 21);
    const auto left = reduced(psi, {0, 1});
    const auto right = reduced(psi, {2, 3});
    const auto vl = numerics::hermitian_eigensystem(left.mat).values;
    const auto vr = numerics::hermitian_eigensystem(right.mat).values;
    for (Eigen::Index i = 0; i < vl.size(); ++i)
        CHECK(std::abs(vl[i] - vr[i]) < 1e-9);
}

TEST_CASE("state json round trip") {
    const auto psi = qstate::random_pure(3, 2, 33);
    const auto back = std::get<StateVector>(stateio::state_from_json(stateio::to_json(psi)));
    CHECK((psi.amps - back.amps).norm() < 1e-12);

    const auto rho = qstate::random_mixed(2, 2, 3, 34);
    const auto rho_back = std::get<DensityMatrix>(stateio::state_from_json(stateio::to_json(rho)));
    CHECK(numerics::max_abs(rho.mat - rho_back.mat) < 1e-12);
}
