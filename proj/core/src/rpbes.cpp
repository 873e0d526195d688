#include "qcm/rpbes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include "qcm/errors.hpp"
#include "qcm/monotones.hpp"

namespace qcm::rpbes {

namespace {

constexpr double kSimplexTol = 1e-9;

void require_spectrum(const RealVector& v, const char* who) {
    if (v.size() < 1)
        throw validation_error(std::string(who) + ": empty spectrum");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) < -kSchmidtCutoff)
            throw validation_error(std::string(who) + ": negative spectrum entry");
        sum += v(i);
    }
    if (std::abs(sum - 1.0) > kSimplexTol)
        throw validation_error(std::string(who) + ": spectrum must sum to 1");
}

void require_inputs(const RealVector& lambda, const RealVector& eta,
                    const PhaseMatrix& phases) {
    require_spectrum(lambda, "rpbes");
    require_spectrum(eta, "rpbes");
    if (lambda.size() != eta.size())
        throw validation_error("rpbes: the two links must share one dimension");
    if (phases.dim() != lambda.size() || phases.theta.cols() != phases.theta.rows())
        throw validation_error("rpbes: phase matrix must be d x d");
}

/// G-concurrence of a pure link given by its Schmidt spectrum: d times
/// the geometric mean.
double g_of_spectrum(const RealVector& lam) {
    const int d = static_cast<int>(lam.size());
    double prod = 1.0;
    for (int i = 0; i < d; ++i)
        prod *= std::max(lam(i), 0.0);
    return d * std::pow(prod, 1.0 / d);
}

} // namespace

PhaseMatrix PhaseMatrix::zero(int d) {
    if (d < 1)
        throw validation_error("PhaseMatrix: dimension must be positive");
    return {RealMatrix::Zero(d, d)};
}

PhaseMatrix PhaseMatrix::canonical(int d) {
    return scaled_canonical(d, 1.0);
}

PhaseMatrix PhaseMatrix::scaled_canonical(int d, double alpha) {
    PhaseMatrix p = zero(d);
    for (int m = 0; m < d; ++m)
        for (int mp = 0; mp < d; ++mp)
            p.theta(m, mp) = alpha * 2.0 * std::numbers::pi * m * mp / d;
    return p;
}

std::vector<PureState> measurement_basis(const PhaseMatrix& phases) {
    const int d = phases.dim();
    if (d < 1)
        throw validation_error("measurement_basis: dimension must be positive");
    const double base = 2.0 * std::numbers::pi / (d * d);

    std::vector<PureState> basis;
    basis.reserve(static_cast<std::size_t>(d) * d);
    for (int j = 0; j < d; ++j) {
        for (int jp = 0; jp < d; ++jp) {
            Matrix amps(d, d);
            for (int m = 0; m < d; ++m)
                for (int mp = 0; mp < d; ++mp) {
                    const double phase =
                        base * (d * j + jp) * (d * m + mp) + phases.theta(m, mp);
                    amps(m, mp) = std::polar(1.0 / d, phase);
                }
            basis.push_back(PureState::make(std::move(amps)));
        }
    }
    return basis;
}

ProtocolResult run_protocol(const RealVector& lambda, const RealVector& eta,
                            const PhaseMatrix& phases) {
    require_inputs(lambda, eta, phases);
    const int d = static_cast<int>(lambda.size());
    const double base = 2.0 * std::numbers::pi / (d * d);

    ProtocolResult res;
    res.outcomes.reserve(static_cast<std::size_t>(d) * d);

    // The joint state is sum_{m,m'} sqrt(lambda_m eta_m') |m>_1 |m>_2
    // |m'>_3 |m'>_4; branch (j,j') projects the middle pair onto the
    // basis state, leaving <P(j,j')|m m'> sqrt(lambda_m eta_m') on the
    // ends.
    for (int j = 0; j < d; ++j) {
        for (int jp = 0; jp < d; ++jp) {
            Matrix amps(d, d);
            for (int m = 0; m < d; ++m)
                for (int mp = 0; mp < d; ++mp) {
                    const double phase =
                        base * (d * j + jp) * (d * m + mp) + phases.theta(m, mp);
                    amps(m, mp) = std::sqrt(lambda(m) * eta(mp)) *
                                  std::polar(1.0 / d, -phase);
                }

            Outcome out;
            out.j = j;
            out.jprime = jp;
            out.probability = amps.squaredNorm();

            // Local corrections: party 1 applies the j'-dependent phase
            // gate, party 4 the (j,j')-dependent one. Both are diagonal,
            // so they act entrywise on the amplitude matrix.
            Matrix corrected(d, d);
            for (int m = 0; m < d; ++m)
                for (int mp = 0; mp < d; ++mp) {
                    const double fix = 2.0 * std::numbers::pi * jp * m / d +
                                       base * (d * j + jp) * mp;
                    corrected(m, mp) =
                        amps(m, mp) * std::polar(1.0, fix);
                }
            corrected /= corrected.norm();
            out.corrected = PureState::make(std::move(corrected));
            res.outcomes.push_back(std::move(out));
        }
    }

    res.final_state = final_state(lambda, eta, phases);
    res.g14 = g_concurrence(res.final_state);
    res.g12 = g_of_spectrum(lambda);
    res.g34 = g_of_spectrum(eta);
    return res;
}

PureState final_state(const RealVector& lambda, const RealVector& eta,
                      const PhaseMatrix& phases) {
    require_inputs(lambda, eta, phases);
    const int d = static_cast<int>(lambda.size());
    Matrix amps(d, d);
    for (int m = 0; m < d; ++m)
        for (int mp = 0; mp < d; ++mp)
            amps(m, mp) = std::sqrt(std::max(lambda(m), 0.0) * std::max(eta(mp), 0.0)) *
                          std::polar(1.0, -phases.theta(m, mp));
    return PureState::make(std::move(amps));
}

double g_final(const RealVector& lambda, const RealVector& eta,
               const PhaseMatrix& phases) {
    require_inputs(lambda, eta, phases);
    const int d = static_cast<int>(lambda.size());

    // G factorizes: the spectra contribute their geometric means, the
    // phases only enter through det of the unit-modulus phase matrix.
    Matrix v(d, d);
    for (int m = 0; m < d; ++m)
        for (int mp = 0; mp < d; ++mp)
            v(m, mp) = std::polar(1.0 / std::sqrt(double(d)), -phases.theta(m, mp));
    const double detv = std::abs(v.determinant());
    return g_of_spectrum(lambda) * g_of_spectrum(eta) * std::pow(detv, 2.0 / d);
}

double c2_final(const RealVector& lambda, const RealVector& eta,
                const PhaseMatrix& phases) {
    require_inputs(lambda, eta, phases);
    const int d = static_cast<int>(lambda.size());
    double total = 0.0;
    for (int k = 0; k < d; ++k)
        for (int kp = 0; kp < k; ++kp)
            for (int m = 0; m < d; ++m)
                for (int mp = 0; mp < m; ++mp) {
                    const Complex a =
                        std::polar(1.0, phases.theta(k, m) + phases.theta(kp, mp));
                    const Complex b =
                        std::polar(1.0, phases.theta(k, mp) + phases.theta(kp, m));
                    total += lambda(k) * lambda(kp) * eta(m) * eta(mp) *
                             std::norm(a - b);
                }
    return 2.0 * std::sqrt(total);
}

double c2_final_normalization(int d) {
    if (d < 2)
        throw validation_error("c2_final_normalization: needs d >= 2");
    return std::sqrt(2.0 * (d - 1) / d);
}

PhaseDesign design_phases(const RealVector& lambda, const RealVector& eta,
                          double target_g, double tol) {
    require_spectrum(lambda, "design_phases");
    require_spectrum(eta, "design_phases");
    if (lambda.size() != eta.size())
        throw validation_error("design_phases: the two links must share one dimension");
    if (!(tol > 0.0))
        throw validation_error("design_phases: tolerance must be positive");
    const int d = static_cast<int>(lambda.size());

    const double ceiling = g_of_spectrum(lambda) * g_of_spectrum(eta);
    if (target_g < -tol || target_g > ceiling * (1.0 + tol) + tol)
        throw validation_error("design_phases: target outside [0, G12 * G34]");

    PhaseDesign out;
    if (target_g <= 0.0 || ceiling <= 0.0) {
        out.phases = PhaseMatrix::zero(d);
        out.alpha = 0.0;
        out.achieved = g_final(lambda, eta, out.phases);
        return out;
    }

    const auto g_at = [&](double alpha) {
        return g_final(lambda, eta, PhaseMatrix::scaled_canonical(d, alpha));
    };

    // g is continuous with g(0) = 0 and g(1) = ceiling, so a bracket
    // [lo, hi] with g(lo) <= target <= g(hi) always survives bisection.
    double lo = 0.0, hi = 1.0;
    double alpha = std::clamp(target_g / ceiling, 0.0, 1.0);
    double achieved = g_at(alpha);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(achieved - target_g) <= tol * ceiling)
            break;
        if (achieved < target_g)
            lo = alpha;
        else
            hi = alpha;
        alpha = (lo + hi) / 2.0;
        achieved = g_at(alpha);
    }
    if (std::abs(achieved - target_g) > tol * ceiling)
        throw numerical_error("design_phases: bisection failed to reach the target");

    out.phases = PhaseMatrix::scaled_canonical(d, alpha);
    out.alpha = alpha;
    out.achieved = achieved;
    return out;
}

} // namespace qcm::rpbes
