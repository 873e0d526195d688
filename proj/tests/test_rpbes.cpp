#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qcm/errors.hpp"
#include "qcm/monotones.hpp"
#include "qcm/random.hpp"
#include "qcm/rpbes.hpp"
#include "qcm/states.hpp"

using namespace qcm;
using qcm::rpbes::PhaseMatrix;

namespace {

PhaseMatrix random_phases(rng::Stream& g, int d) {
    PhaseMatrix p = PhaseMatrix::zero(d);
    for (int m = 0; m < d; ++m)
        for (int mp = 0; mp < d; ++mp)
            p.theta(m, mp) = 2.0 * std::numbers::pi * rng::uniform(g);
    return p;
}

RealVector two_level(double a) {
    RealVector v(2);
    v << a, 1.0 - a;
    return v;
}

} // namespace

TEST_CASE("measurement bases are orthonormal and complete") {
    auto g = rng::derive(71, 0);
    for (int d = 2; d <= 4; ++d) {
        const auto basis = rpbes::measurement_basis(random_phases(g, d));
        REQUIRE(basis.size() == static_cast<std::size_t>(d * d));
        Matrix gram = Matrix::Zero(d * d, d * d);
        Matrix resolution = Matrix::Zero(d * d, d * d);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const Vector vi = basis[i].to_vector();
            resolution += vi * vi.adjoint();
            for (std::size_t j = 0; j < basis.size(); ++j)
                gram(static_cast<int>(i), static_cast<int>(j)) =
                    (vi.adjoint() * basis[j].to_vector())(0);
        }
        CHECK((gram - Matrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((resolution - Matrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("pinned basis amplitude") {
    // d = 3, outcome b = 5 decodes to (j, j') = (1, 2); the (m, m') = (2, 1)
    // amplitude is (1/3) exp(i [ (2 pi / 9) * 5 * 7 + theta(2, 1) ]).
    auto g = rng::derive(72, 0);
    const PhaseMatrix phases = random_phases(g, 3);
    const auto basis = rpbes::measurement_basis(phases);
    const Complex got = basis[5].amps(2, 1);
    const double arg =
        2.0 * std::numbers::pi / 9.0 * 35.0 + phases.theta(2, 1);
    const Complex want = std::polar(1.0 / 3.0, arg);
    CHECK(std::abs(got - want) < 1e-12);
}

TEST_CASE("every branch fires with probability 1/d^2") {
    auto g = rng::derive(73, 0);
    for (int d = 2; d <= 4; ++d) {
        const RealVector lambda = rng::spectrum(g, d);
        const RealVector eta = rng::spectrum(g, d);
        const auto res = rpbes::run_protocol(lambda, eta, random_phases(g, d));
        REQUIRE(res.outcomes.size() == static_cast<std::size_t>(d * d));
        double total = 0.0;
        for (const auto& out : res.outcomes) {
            CHECK(std::abs(out.probability - 1.0 / (d * d)) < 1e-12);
            total += out.probability;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("corrections collapse every branch onto one state") {
    auto g = rng::derive(74, 0);
    for (int d = 2; d <= 4; ++d) {
        const RealVector lambda = rng::spectrum(g, d);
        const RealVector eta = rng::spectrum(g, d);
        const PhaseMatrix phases = random_phases(g, d);
        const auto res = rpbes::run_protocol(lambda, eta, phases);
        const PureState direct = rpbes::final_state(lambda, eta, phases);
        CHECK(overlap_fidelity(res.final_state, direct) ==
              doctest::Approx(1.0).epsilon(1e-12));
        for (const auto& out : res.outcomes)
            CHECK(overlap_fidelity(out.corrected, res.final_state) >
                  1.0 - 1e-12);
    }
}

TEST_CASE("final G matches the factorized expression") {
    auto g = rng::derive(75, 0);
    for (int d = 2; d <= 5; ++d) {
        const RealVector lambda = rng::spectrum(g, d);
        const RealVector eta = rng::spectrum(g, d);
        const PhaseMatrix phases = random_phases(g, d);
        const double direct =
            g_concurrence(rpbes::final_state(lambda, eta, phases));
        CHECK(rpbes::g_final(lambda, eta, phases) ==
              doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("canonical phases transfer all of G12 * G34 to the ends") {
    auto g = rng::derive(76, 0);
    for (int d = 2; d <= 5; ++d) {
        const RealVector lambda = rng::spectrum(g, d);
        const RealVector eta = rng::spectrum(g, d);
        const auto res =
            rpbes::run_protocol(lambda, eta, PhaseMatrix::canonical(d));
        CHECK(std::abs(res.g14 - res.g12 * res.g34) < 1e-10);
    }
}

TEST_CASE("flat phases leave the ends in a product state") {
    auto g = rng::derive(77, 0);
    for (int d = 2; d <= 4; ++d) {
        const RealVector lambda = rng::spectrum(g, d);
        const RealVector eta = rng::spectrum(g, d);
        const PhaseMatrix flat = PhaseMatrix::zero(d);
        CHECK(rpbes::g_final(lambda, eta, flat) < 1e-12);
        const PureState fin = rpbes::final_state(lambda, eta, flat);
        CHECK(concurrence_k(fin, 2) < 1e-12);
    }
}

TEST_CASE("closed-form C_2 of the final state") {
    auto g = rng::derive(78, 0);
    for (int d = 2; d <= 5; ++d) {
        const RealVector lambda = rng::spectrum(g, d);
        const RealVector eta = rng::spectrum(g, d);
        for (const PhaseMatrix& phases :
             {PhaseMatrix::canonical(d), random_phases(g, d)}) {
            const double closed = rpbes::c2_final(lambda, eta, phases);
            const double factor = rpbes::c2_final_normalization(d);
            const double direct =
                concurrence_k(rpbes::final_state(lambda, eta, phases), 2);
            CHECK(closed == doctest::Approx(factor * direct).epsilon(1e-9));
        }
    }
    CHECK(rpbes::c2_final_normalization(2) == doctest::Approx(1.0));

    // Two maximally entangled qubit links under canonical phases swap
    // into a maximally entangled pair: the closed form gives exactly 1.
    CHECK(rpbes::c2_final(two_level(0.5), two_level(0.5),
                          PhaseMatrix::canonical(2)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phase design hits requested targets") {
    auto g = rng::derive(79, 0);
    const RealVector lambda = rng::spectrum(g, 2);
    const RealVector eta = rng::spectrum(g, 2);
    const double ceiling = rpbes::g_final(lambda, eta, PhaseMatrix::canonical(2));

    // For qubits the sweep follows g(alpha) = ceiling * sin(pi alpha / 2),
    // so the half-ceiling target lands at alpha = 1/3.
    const auto half = rpbes::design_phases(lambda, eta, 0.5 * ceiling, 1e-9);
    CHECK(half.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(half.achieved == doctest::Approx(0.5 * ceiling).epsilon(1e-8));

    const auto zero = rpbes::design_phases(lambda, eta, 0.0);
    CHECK(zero.alpha == 0.0);
    CHECK(zero.achieved == 0.0);

    const auto full = rpbes::design_phases(lambda, eta, ceiling, 1e-9);
    CHECK(full.achieved == doctest::Approx(ceiling).epsilon(1e-8));

    CHECK_THROWS_AS(rpbes::design_phases(lambda, eta, ceiling * 1.5),
                    validation_error);
    CHECK_THROWS_AS(rpbes::design_phases(lambda, eta, 0.5 * ceiling, 0.0),
                    validation_error);
}

TEST_CASE("input validation") {
    RealVector good = two_level(0.7);
    RealVector three = RealVector::Ones(3) / 3.0;
    RealVector not_simplex(2);
    not_simplex << 0.7, 0.2;
    RealVector negative(2);
    negative << 1.1, -0.1;

    CHECK_THROWS_AS(rpbes::run_protocol(good, three, PhaseMatrix::canonical(2)),
                    validation_error);
    CHECK_THROWS_AS(
        rpbes::run_protocol(good, not_simplex, PhaseMatrix::canonical(2)),
        validation_error);
    CHECK_THROWS_AS(
        rpbes::run_protocol(negative, good, PhaseMatrix::canonical(2)),
        validation_error);
    CHECK_THROWS_AS(rpbes::run_protocol(good, good, PhaseMatrix::canonical(3)),
                    validation_error);
    CHECK_THROWS_AS(rpbes::c2_final_normalization(1), validation_error);
}
