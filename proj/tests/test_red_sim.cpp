#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "qcm/errors.hpp"
#include "qcm/monotones.hpp"
#include "qcm/random.hpp"
#include "qcm/red_sim.hpp"
#include "qcm/rpbes.hpp"
#include "qcm/states.hpp"

#include "support/oracles.hpp"

using namespace qcm;
using namespace qcm::red;

namespace {

PureState diagonal_link(const RealVector& lam) {
    const int d = static_cast<int>(lam.size());
    Matrix amps = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        amps(i, i) = std::sqrt(lam(i));
    return PureState::make(amps);
}

int numerical_rank(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-10)
            ++r;
    return r;
}

} // namespace

TEST_CASE("Kraus sets enforce completeness") {
    auto g = rng::derive(81, 0);
    const Matrix u = rng::haar_unitary(g, 3);
    CHECK_NOTHROW(KrausSet::make({u}));
    CHECK_THROWS_AS(KrausSet::make({Matrix(0.5 * u)}), validation_error);
    CHECK_THROWS_AS(KrausSet::make({}), validation_error);
    CHECK_THROWS_AS(KrausSet::make({u, rng::haar_unitary(g, 2)}),
                    validation_error);
}

TEST_CASE("projective measurements from orthonormal bases") {
    const auto basis =
        rpbes::measurement_basis(rpbes::PhaseMatrix::canonical(2));
    const KrausSet kraus = projective_kraus(basis);
    CHECK(kraus.dim() == 4);
    CHECK(kraus.size() == 4);

    // A repeated member breaks the resolution of the identity.
    auto broken = basis;
    broken[1] = broken[0];
    CHECK_THROWS_AS(projective_kraus(broken), validation_error);

    // The prebuilt canonical set matches the basis projectors.
    const KrausSet canned = rpbes_canonical_kraus(2);
    REQUIRE(canned.size() == kraus.size());
    for (std::size_t i = 0; i < canned.size(); ++i)
        CHECK((canned.ops[i] - kraus.ops[i]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("row-resolved measurement reproduces the dense channel") {
    auto g = rng::derive(82, 0);
    struct Dims {
        int d1, d2, d3, d4;
    };
    for (const Dims dims : {Dims{2, 2, 2, 2}, Dims{2, 3, 2, 2}, Dims{3, 2, 3, 2}}) {
        const PureState link12 = rng::pure_state(g, dims.d1, dims.d2);
        const PureState link34 = rng::pure_state(g, dims.d3, dims.d4);
        const int mid = dims.d2 * dims.d3;
        const KrausSet kraus = random_kraus(g, mid, {mid - 1, 1, 1});

        const auto branches = supplier_measure(link12, link34, kraus, 0.0);

        double total = 0.0;
        for (std::size_t j = 0; j < kraus.size(); ++j) {
            const auto dense =
                oracle::measure_dense(link12, link34, kraus.ops[j]);
            double q_sum = 0.0;
            Matrix accum = Matrix::Zero(dims.d1 * dims.d4, dims.d1 * dims.d4);
            for (const Branch& br : branches) {
                if (br.kraus_index != static_cast<int>(j))
                    continue;
                q_sum += br.q;
                const Vector y = br.state.to_vector();
                accum += br.q * (y * y.adjoint());
            }
            total += q_sum;
            CHECK(q_sum == doctest::Approx(dense.probability).epsilon(1e-10));
            CHECK((accum - dense.rho14).cwiseAbs().maxCoeff() < 1e-12);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("branch bookkeeping") {
    auto g = rng::derive(83, 0);
    const PureState link12 = rng::pure_state(g, 2, 2);
    const PureState link34 = rng::pure_state(g, 2, 2);
    const auto branches =
        supplier_measure(link12, link34, rpbes_canonical_kraus(2));
    for (const Branch& br : branches) {
        CHECK(br.q > 0.0);
        CHECK(br.row >= 0);
        CHECK(br.row < 4);
        CHECK(br.state.dim_a == 2);
        CHECK(br.state.dim_b == 2);
        CHECK(std::abs(br.state.to_vector().squaredNorm() - 1.0) < 1e-12);
    }

    CHECK_THROWS_AS(
        supplier_measure(link12, rng::pure_state(g, 3, 2),
                         rpbes_canonical_kraus(2)),
        validation_error);
}

TEST_CASE("random Kraus sets have the requested ranks") {
    auto g = rng::derive(84, 0);
    const KrausSet kraus = random_kraus(g, 4, {3, 2, 1, 1});
    REQUIRE(kraus.size() == 4);
    CHECK(numerical_rank(kraus.ops[0]) == 3);
    CHECK(numerical_rank(kraus.ops[1]) == 2);
    CHECK(numerical_rank(kraus.ops[2]) == 1);
    CHECK(numerical_rank(kraus.ops[3]) == 1);

    // A single full-rank operator is a unitary.
    const KrausSet single = random_kraus(g, 3, {3});
    REQUIRE(single.size() == 1);
    const Matrix& m = single.ops[0];
    CHECK((m.adjoint() * m - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((m * m.adjoint() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(random_kraus(g, 3, {}), validation_error);
    CHECK_THROWS_AS(random_kraus(g, 3, {0, 3}), validation_error);
    CHECK_THROWS_AS(random_kraus(g, 3, {4}), validation_error);
    CHECK_THROWS_AS(random_kraus(g, 3, {1, 1}), validation_error);
}

TEST_CASE("canonical swapping saturates the distribution bound") {
    auto g = rng::derive(85, 0);
    for (int d = 2; d <= 4; ++d) {
        const PureState link12 = diagonal_link(rng::spectrum(g, d));
        const PureState link34 = diagonal_link(rng::spectrum(g, d));
        const BoundReport rep =
            check_bound(link12, link34, rpbes_canonical_kraus(d));
        CHECK(rep.bound ==
              doctest::Approx(g_concurrence(link12) * g_concurrence(link34))
                  .epsilon(1e-12));
        CHECK(std::abs(rep.slack) < 1e-10);
    }
}

TEST_CASE("no measurement beats the bound") {
    auto g = rng::derive(86, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 2;
        const PureState link12 = rng::pure_state(g, d, d);
        const PureState link34 = rng::pure_state(g, d, d);
        const KrausSet kraus = random_kraus(g, d * d, {d * d - 1, 1, 1});
        const BoundReport rep = check_bound(link12, link34, kraus);
        CHECK(rep.slack >= -1e-12);
        CHECK(rep.average_g >= 0.0);
    }
}

TEST_CASE("ensemble links bound by the product of averages") {
    auto g = rng::derive(87, 0);
    const Ensemble link12 = Ensemble::make({{0.6, rng::pure_state(g, 2, 2)},
                                            {0.4, rng::pure_state(g, 2, 2)}});
    const Ensemble link34 = Ensemble::from_pure(rng::pure_state(g, 2, 2));
    const KrausSet kraus = random_kraus(g, 4, {2, 2});
    const BoundReport rep = check_bound(link12, link34, kraus);

    double avg12 = 0.0;
    for (const auto& m : link12.members)
        avg12 += m.p * g_concurrence(m.state);
    CHECK(rep.bound ==
          doctest::Approx(avg12 * g_concurrence(link34.members[0].state))
              .epsilon(1e-12));
    CHECK(rep.slack >= -1e-12);
}

TEST_CASE("canonical chains deliver the product of link concurrences") {
    auto g = rng::derive(88, 0);
    for (int d = 2; d <= 3; ++d) {
        for (int nlinks = 2; nlinks <= 3; ++nlinks) {
            std::vector<PureState> links;
            double product = 1.0;
            for (int i = 0; i < nlinks; ++i) {
                links.push_back(rng::pure_state(g, d, d));
                product *= g_concurrence(links.back());
            }
            const ChainResult res =
                chain_compose(links, ChainStrategy::CanonicalSwap);
            CHECK(res.bound == doctest::Approx(product).epsilon(1e-12));
            CHECK(res.average_g == doctest::Approx(product).epsilon(1e-9));
            CHECK(std::abs(res.slack) < 1e-9);

            // The final ensemble is a valid distribution over pure states
            // on the end parties.
            double total = 0.0;
            for (const auto& m : res.final_ensemble.members) {
                total += m.p;
                CHECK(m.state.dim_a == d);
                CHECK(m.state.dim_b == d);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("provided measurements stay under the chain bound") {
    auto g = rng::derive(89, 0);
    const int d = 2;
    std::vector<PureState> links = {rng::pure_state(g, d, d),
                                    rng::pure_state(g, d, d),
                                    rng::pure_state(g, d, d)};
    std::vector<KrausSet> kraus = {random_kraus(g, d * d, {3, 1}),
                                   random_kraus(g, d * d, {2, 1, 1})};
    const ChainResult res = chain_compose(links, ChainStrategy::Provided, kraus);
    CHECK(res.slack >= -1e-9);
    CHECK(res.average_g <= res.bound + 1e-9);
}

TEST_CASE("chain validation") {
    auto g = rng::derive(90, 0);
    const PureState square = rng::pure_state(g, 2, 2);
    const PureState rect = rng::pure_state(g, 2, 3);

    CHECK_THROWS_AS(chain_compose({}, ChainStrategy::CanonicalSwap),
                    validation_error);
    CHECK_THROWS_AS(chain_compose({square, rect}, ChainStrategy::CanonicalSwap),
                    validation_error);
    CHECK_THROWS_AS(chain_compose({square, square}, ChainStrategy::Provided, {}),
                    validation_error);
    CHECK_THROWS_AS(chain_compose({square, square}, ChainStrategy::CanonicalSwap,
                                  {rpbes_canonical_kraus(2)}),
                    validation_error);
}
