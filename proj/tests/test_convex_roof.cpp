#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qcm/convex_roof.hpp"
#include "qcm/errors.hpp"
#include "qcm/monotones.hpp"
#include "qcm/random.hpp"
#include "qcm/states.hpp"

using namespace qcm;

namespace {

PureState bell_pair() {
    Matrix amps = Matrix::Zero(2, 2);
    amps(0, 0) = amps(1, 1) = 1.0 / std::sqrt(2.0);
    return PureState::make(amps);
}

PureState basis_pair(int a, int b) {
    Matrix amps = Matrix::Zero(2, 2);
    amps(a, b) = 1.0;
    return PureState::make(amps);
}

DensityMatrix werner(double p) {
    const Vector v = bell_pair().to_vector();
    Matrix rho = p * (v * v.adjoint()).eval() +
                 (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    return DensityMatrix::make(std::move(rho));
}

} // namespace

TEST_CASE("monotone selector dispatch") {
    auto g = rng::derive(61, 0);
    const PureState psi = rng::pure_state(g, 3, 3);
    CHECK(evaluate_monotone(psi, MonotoneSelector::g()) ==
          doctest::Approx(g_concurrence(psi)).epsilon(1e-12));
    CHECK(evaluate_monotone(psi, MonotoneSelector::c(2)) ==
          doctest::Approx(concurrence_k(psi, 2)).epsilon(1e-12));
}

TEST_CASE("ensemble averages are probability-weighted") {
    const Ensemble ens = Ensemble::make(
        {{0.25, bell_pair()}, {0.75, basis_pair(0, 0)}});
    // Bell contributes C_2 = 1, the product state contributes 0.
    CHECK(ensemble_average(ens, MonotoneSelector::c(2)) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(ensemble_average(ens, MonotoneSelector::g()) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("roof of a pure state is the pure value") {
    auto g = rng::derive(62, 0);
    const PureState psi = rng::pure_state(g, 2, 2);
    const Vector v = psi.to_vector();
    Matrix proj = ((v * v.adjoint() + (v * v.adjoint()).adjoint()) / 2.0).eval();

    RoofOptions opts;
    opts.restarts = 4;
    const RoofResult res = roof_minimize(DensityMatrix::make(std::move(proj)),
                                         2, 2, MonotoneSelector::c(2), opts);
    CHECK(res.value == doctest::Approx(concurrence_k(psi, 2)).epsilon(1e-8));
}

TEST_CASE("separable diagonal mixtures have zero roof") {
    // Any superposition of |00> and |11> is entangled, so the optimizer
    // must keep (or rediscover) the unentangled eigendecomposition.
    const Ensemble ens = Ensemble::make(
        {{0.5, basis_pair(0, 0)}, {0.5, basis_pair(1, 1)}});
    RoofOptions opts;
    opts.restarts = 4;
    const RoofResult res =
        roof_minimize(ens.density(), 2, 2, MonotoneSelector::c(2), opts);
    CHECK(res.value < 1e-7);
}

TEST_CASE("roof never exceeds the eigendecomposition average") {
    auto g = rng::derive(63, 0);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = rng::density(g, 4, 4);
        const double eig_avg =
            ensemble_average(eigen_ensemble(rho, 2, 2), MonotoneSelector::c(2));
        RoofOptions opts;
        opts.restarts = 4;
        opts.seed = 1000 + static_cast<std::uint64_t>(trial);
        const RoofResult res =
            roof_minimize(rho, 2, 2, MonotoneSelector::c(2), opts);
        CHECK(res.value <= eig_avg + 1e-9);
    }
}

TEST_CASE("two-qubit roof matches the closed form") {
    const DensityMatrix rho = werner(0.8);
    RoofOptions opts;
    opts.restarts = 8;
    const RoofResult res = roof_minimize(rho, 2, 2, MonotoneSelector::c(2), opts);
    const double exact = wootters_concurrence(rho);
    CHECK(exact == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(res.value >= exact - 1e-9);
    CHECK(res.value <= exact + 5e-3);
}

TEST_CASE("returned ensembles mix back to the input state") {
    auto g = rng::derive(64, 0);
    const DensityMatrix rho = rng::density(g, 4, 3);
    RoofOptions opts;
    opts.restarts = 2;
    const RoofResult res = roof_minimize(rho, 2, 2, MonotoneSelector::g(), opts);
    CHECK((res.ensemble.density().mat - rho.mat).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(res.value ==
          doctest::Approx(ensemble_average(res.ensemble, MonotoneSelector::g()))
              .epsilon(1e-12));
    CHECK(res.best_restart >= 0);
}

TEST_CASE("fixed seeds reproduce results exactly") {
    auto g = rng::derive(65, 0);
    const DensityMatrix rho = rng::density(g, 4, 2);
    RoofOptions opts;
    opts.restarts = 3;
    opts.seed = 99;
    const RoofResult a = roof_minimize(rho, 2, 2, MonotoneSelector::c(2), opts);
    const RoofResult b = roof_minimize(rho, 2, 2, MonotoneSelector::c(2), opts);
    CHECK(a.value == b.value);
    CHECK(a.best_restart == b.best_restart);
}

TEST_CASE("roof input validation") {
    auto g = rng::derive(66, 0);
    const DensityMatrix rho = rng::density(g, 4, 2);
    RoofOptions opts;
    opts.restarts = 1;

    CHECK_THROWS_AS(roof_minimize(rho, 2, 3, MonotoneSelector::c(2), opts),
                    validation_error);
    CHECK_THROWS_AS(roof_minimize(rho, 2, 2, MonotoneSelector::c(3), opts),
                    validation_error);
    CHECK_THROWS_AS(roof_minimize(rho, 2, 2, MonotoneSelector{-1}, opts),
                    validation_error);

    RoofOptions bad = opts;
    bad.restarts = 0;
    CHECK_THROWS_AS(roof_minimize(rho, 2, 2, MonotoneSelector::c(2), bad),
                    validation_error);

    RoofOptions tiny = opts;
    tiny.ensemble_size = 1; // below the rank of a full-rank 4 x 4 state
    CHECK_THROWS_AS(roof_minimize(rho, 2, 2, MonotoneSelector::c(2), tiny),
                    validation_error);
}
