#include "qcm/convex_roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qcm/errors.hpp"
#include "qcm/monotones.hpp"
#include "qcm/random.hpp"

namespace qcm {

namespace {

constexpr std::uint64_t kRoofStream = 0x726f6f66; // "roof" tag, keeps the
                                                  // optimizer off streams
                                                  // other consumers use

constexpr double kGradStep = 1e-6;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

Matrix reshape_column(const Vector& col, int dim_a, int dim_b) {
    Matrix amps(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_b; ++j)
            amps(i, j) = col(static_cast<Eigen::Index>(i) * dim_b + j);
    return amps;
}

/// Objective over arbitrary complex U (not just isometries, so finite
/// differences stay inside the domain): sum over columns of
/// m(column of Etilde U^H), using the monotone's homogeneity to fold the
/// member probability into the unnormalized column.
double objective(const Matrix& etilde, const Matrix& u, int dim_a, int dim_b,
                 MonotoneSelector sel) {
    const Matrix psi = etilde * u.adjoint();
    double total = 0.0;
    for (Eigen::Index j = 0; j < psi.cols(); ++j) {
        const PureState member =
            PureState::make_unnormalized(reshape_column(psi.col(j), dim_a, dim_b));
        total += evaluate_monotone(member, sel);
    }
    return total;
}

/// Central-difference Euclidean gradient in the 2nr real coordinates of U,
/// assembled back into a complex matrix (Wirtinger convention: the descent
/// direction in re/im coordinates).
Matrix euclidean_gradient(const Matrix& etilde, const Matrix& u, int dim_a,
                          int dim_b, MonotoneSelector sel) {
    Matrix g = Matrix::Zero(u.rows(), u.cols());
    Matrix probe = u;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            const Complex saved = probe(r, c);

            probe(r, c) = saved + Complex(kGradStep, 0.0);
            const double fp_re = objective(etilde, probe, dim_a, dim_b, sel);
            probe(r, c) = saved - Complex(kGradStep, 0.0);
            const double fm_re = objective(etilde, probe, dim_a, dim_b, sel);

            probe(r, c) = saved + Complex(0.0, kGradStep);
            const double fp_im = objective(etilde, probe, dim_a, dim_b, sel);
            probe(r, c) = saved - Complex(0.0, kGradStep);
            const double fm_im = objective(etilde, probe, dim_a, dim_b, sel);

            probe(r, c) = saved;
            g(r, c) = Complex((fp_re - fm_re) / (2.0 * kGradStep),
                              (fp_im - fm_im) / (2.0 * kGradStep));
        }
    }
    return g;
}

/// Project onto the Stiefel tangent space at U.
Matrix tangent_project(const Matrix& u, const Matrix& g) {
    const Matrix m = u.adjoint() * g;
    return g - u * ((m + m.adjoint()) / 2.0);
}

/// Retract back onto the manifold: thin QR with the R-diagonal phase
/// absorbed so the map is continuous in its argument.
Matrix qr_retract(const Matrix& m) {
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
    const Matrix r =
        qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

struct StartResult {
    double value = 0.0;
    Matrix u;
    int iterations = 0;
};

StartResult minimize_from(const Matrix& etilde, Matrix u, int dim_a, int dim_b,
                          MonotoneSelector sel, const RoofOptions& opts) {
    double f = objective(etilde, u, dim_a, dim_b, sel);
    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        const Matrix eg = euclidean_gradient(etilde, u, dim_a, dim_b, sel);
        const Matrix t = tangent_project(u, eg);
        const double tnorm2 = t.squaredNorm();
        if (std::sqrt(tnorm2) < opts.grad_tol * std::max(1.0, std::abs(f)))
            break;

        double step = 1.0;
        bool moved = false;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            const Matrix cand = qr_retract(u - step * t);
            const double fc = objective(etilde, cand, dim_a, dim_b, sel);
            if (fc <= f - kArmijo * step * tnorm2) {
                u = cand;
                f = fc;
                moved = true;
                break;
            }
            step /= 2.0;
        }
        if (!moved)
            break; // no descent at any step length: flat to within noise
    }
    return {f, std::move(u), iter};
}

} // namespace

double evaluate_monotone(const PureState& psi, MonotoneSelector sel) {
    if (sel.k == 0)
        return g_concurrence(psi);
    return concurrence_k(psi, sel.k);
}

double ensemble_average(const Ensemble& ens, MonotoneSelector sel) {
    double total = 0.0;
    for (const auto& m : ens.members)
        total += m.p * evaluate_monotone(m.state, sel);
    return total;
}

RoofResult roof_minimize(const DensityMatrix& rho, int dim_a, int dim_b,
                         MonotoneSelector sel, const RoofOptions& opts) {
    if (static_cast<long long>(dim_a) * dim_b != rho.dim)
        throw validation_error("roof_minimize: dim_a * dim_b must equal rho.dim");
    const int d = std::min(dim_a, dim_b);
    if (sel.k < 0 || sel.k > d)
        throw validation_error("roof_minimize: monotone order out of range");
    if (opts.restarts < 1)
        throw validation_error("roof_minimize: need at least one restart");

    // Weighted eigenvector matrix Etilde: column i is sqrt(mu_i) e_i.
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat);
    if (es.info() != Eigen::Success)
        throw numerical_error("roof_minimize: eigendecomposition failed");
    std::vector<int> kept;
    for (int i = rho.dim - 1; i >= 0; --i) // descending
        if (es.eigenvalues()(i) > opts.member_cutoff)
            kept.push_back(i);
    const int rank = static_cast<int>(kept.size());
    if (rank == 0)
        throw numerical_error("roof_minimize: state has no weight above cutoff");
    Matrix etilde(rho.dim, rank);
    for (int c = 0; c < rank; ++c)
        etilde.col(c) =
            std::sqrt(es.eigenvalues()(kept[c])) * es.eigenvectors().col(kept[c]);

    int n = opts.ensemble_size;
    if (n == 0)
        n = std::min(rho.dim * rho.dim, 2 * rank);
    if (n < rank)
        throw validation_error("roof_minimize: ensemble size below the rank");

    StartResult best;
    best.value = std::numeric_limits<double>::infinity();
    int best_restart = -1;
    for (int s = 0; s < opts.restarts; ++s) {
        Matrix u0;
        if (s == 0) {
            u0 = Matrix::Identity(n, rank);
        } else {
            auto g = rng::derive(opts.seed, kRoofStream, static_cast<std::uint64_t>(s));
            u0 = rng::haar_isometry(g, n, rank);
        }
        StartResult r = minimize_from(etilde, std::move(u0), dim_a, dim_b, sel, opts);
        if (r.value < best.value) {
            best = std::move(r);
            best_restart = s;
        }
    }

    // Materialize the winning decomposition, prune negligible members, and
    // renormalize so probabilities sum to exactly 1.
    const Matrix psi = etilde * best.u.adjoint();
    std::vector<Ensemble::Member> members;
    double psum = 0.0;
    for (Eigen::Index j = 0; j < psi.cols(); ++j) {
        const double p = psi.col(j).squaredNorm();
        if (p < opts.member_cutoff)
            continue;
        const Matrix amps = reshape_column(psi.col(j), dim_a, dim_b) / std::sqrt(p);
        members.push_back({p, PureState::make(amps)});
        psum += p;
    }
    for (auto& m : members)
        m.p /= psum;

    RoofResult out;
    out.ensemble = Ensemble::make(std::move(members));
    out.value = ensemble_average(out.ensemble, sel);
    out.best_restart = best_restart;
    out.iterations = best.iterations;
    return out;
}

} // namespace qcm
