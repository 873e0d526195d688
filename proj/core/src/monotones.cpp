#include "qcm/monotones.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "qcm/errors.hpp"
#include "qcm/sym_funcs.hpp"

namespace qcm {

namespace {

constexpr double kRangeTol = 1e-9;

int min_dim(const PureState& psi) {
    return static_cast<int>(std::min(psi.dim_a, psi.dim_b));
}

/// Squared singular values of the amplitude matrix, descending, padded
/// with zeros to the min local dimension. Works for any norm; no cutoff.
RealVector squared_singulars(const PureState& psi) {
    Eigen::JacobiSVD<Matrix> svd(psi.amps);
    const Eigen::VectorXd sv = svd.singularValues();
    RealVector out = RealVector::Zero(min_dim(psi));
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        out(i) = sv(i) * sv(i);
    return out;
}

/// Gram matrix of the smaller side, symmetrized against roundoff. Its
/// eigenvalues are the (unnormalized) Schmidt spectrum.
Matrix small_gram(const PureState& psi) {
    Matrix g = (psi.dim_a <= psi.dim_b)
                   ? Matrix(psi.amps * psi.amps.adjoint())
                   : Matrix(psi.amps.adjoint() * psi.amps);
    return ((g + g.adjoint()) / 2.0).eval();
}

double c_from_sk(double sk, int d, int k) {
    const double ratio = sk / sym::binomial(d, k);
    if (ratio <= 0.0)
        return 0.0;
    return d * std::pow(ratio, 1.0 / k);
}

void require_order(int k, int d) {
    if (k < 1 || k > d)
        throw validation_error("concurrence order k must lie in [1, min(dim_a, dim_b)]");
}

/// -sum t log t in the given base; entries below eps are skipped, no
/// simplex validation (callers clamp).
double shannon(const RealVector& t, double log_base) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i)
        if (t(i) > 0.0)
            e -= t(i) * std::log(t(i));
    return e / std::log(log_base);
}

void require_base(double log_base) {
    if (!(log_base > 1.0))
        throw validation_error("log base must exceed 1");
}

double clamp_unit(double v, const char* name) {
    if (v < -kRangeTol || v > 1.0 + kRangeTol)
        throw validation_error(std::string(name) + " must lie in [0, 1]");
    return std::clamp(v, 0.0, 1.0);
}

} // namespace

double concurrence_k(const PureState& psi, int k, ConcurrencePath path) {
    const int d = min_dim(psi);
    require_order(k, d);
    if (path == ConcurrencePath::Auto)
        path = ConcurrencePath::Schmidt;

    double sk = 0.0;
    switch (path) {
    case ConcurrencePath::Schmidt:
        sk = sym::elementary_symmetric(squared_singulars(psi), k);
        break;
    case ConcurrencePath::Compound:
        sk = sym::compound_trace(small_gram(psi), k);
        break;
    case ConcurrencePath::PowerSum: {
        if (k > 12)
            throw validation_error("power-sum path supports k <= 12");
        const RealVector p = sym::matrix_power_sums(small_gram(psi), k);
        sk = sym::esf_from_power_sums(p, k);
        break;
    }
    default:
        throw validation_error("unknown concurrence path");
    }
    return c_from_sk(sk, d, k);
}

double concurrence_k_from_spectrum(const RealVector& lambdas, int d, int k) {
    require_order(k, d);
    if (lambdas.size() > d)
        throw validation_error("spectrum longer than the stated dimension");
    RealVector clamped = lambdas;
    for (Eigen::Index i = 0; i < clamped.size(); ++i) {
        if (clamped(i) < -kSchmidtCutoff)
            throw validation_error("spectrum entries must be nonnegative");
        clamped(i) = std::max(clamped(i), 0.0);
    }
    return c_from_sk(sym::elementary_symmetric(clamped, k), d, k);
}

MonotoneVector monotone_vector(const PureState& psi, ConcurrencePath path) {
    const int d = min_dim(psi);
    if (path == ConcurrencePath::Auto)
        path = ConcurrencePath::Schmidt;

    MonotoneVector mv;
    mv.d = d;
    mv.values = RealVector::Zero(d);

    switch (path) {
    case ConcurrencePath::Schmidt: {
        const RealVector e = sym::all_elementary_symmetric(squared_singulars(psi));
        for (int k = 1; k <= d; ++k)
            mv.values(k - 1) = c_from_sk(e(k), d, k);
        break;
    }
    case ConcurrencePath::Compound: {
        const Matrix g = small_gram(psi);
        for (int k = 1; k <= d; ++k)
            mv.values(k - 1) = c_from_sk(sym::compound_trace(g, k), d, k);
        break;
    }
    case ConcurrencePath::PowerSum: {
        if (d > 12)
            throw validation_error("power-sum path supports dimensions up to 12");
        const RealVector p = sym::matrix_power_sums(small_gram(psi), d);
        for (int k = 1; k <= d; ++k)
            mv.values(k - 1) = c_from_sk(sym::esf_from_power_sums(p, k), d, k);
        break;
    }
    default:
        throw validation_error("unknown concurrence path");
    }
    return mv;
}

MonotoneVector monotone_vector_from_spectrum(const RealVector& lambdas, int d) {
    if (d < 1)
        throw validation_error("dimension must be positive");
    if (lambdas.size() > d)
        throw validation_error("spectrum longer than the stated dimension");
    RealVector padded = RealVector::Zero(d);
    padded.head(lambdas.size()) = lambdas;
    const RealVector e = sym::all_elementary_symmetric(padded);
    MonotoneVector mv;
    mv.d = d;
    mv.values = RealVector::Zero(d);
    for (int k = 1; k <= d; ++k)
        mv.values(k - 1) = c_from_sk(e(k), d, k);
    return mv;
}

RealVector spectrum_from_monotones(const MonotoneVector& mv, double imag_tol) {
    const int d = mv.d;
    if (d < 1 || mv.values.size() != d)
        throw validation_error("monotone vector must hold C_1..C_d");
    RealVector esf(d);
    for (int k = 1; k <= d; ++k) {
        const double ck = mv.values(k - 1);
        if (ck < -kRangeTol)
            throw validation_error("monotone values must be nonnegative");
        esf(k - 1) = sym::binomial(d, k) * std::pow(std::max(ck, 0.0) / d, k);
    }
    return sym::spectrum_from_esf(esf, imag_tol);
}

double g_concurrence(const PureState& psi) {
    const int d = min_dim(psi);
    if (psi.dim_a == psi.dim_b) {
        // |det A|^(2/d) straight from an LU pass over the amplitudes.
        const double a = std::abs(psi.amps.determinant());
        return d * std::pow(a, 2.0 / d);
    }
    const double det = std::max(small_gram(psi).determinant().real(), 0.0);
    return d * std::pow(det, 1.0 / d);
}

double entropy_entanglement(const PureState& psi, double log_base) {
    require_base(log_base);
    return shannon(schmidt_spectrum(psi), log_base);
}

double entropy_of_spectrum(const RealVector& lambdas, double log_base) {
    require_base(log_base);
    double sum = 0.0;
    RealVector t = lambdas;
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        if (t(i) < -kSchmidtCutoff)
            throw validation_error("spectrum entries must be nonnegative");
        t(i) = std::max(t(i), 0.0);
        sum += t(i);
    }
    if (std::abs(sum - 1.0) > kRangeTol)
        throw validation_error("spectrum must sum to 1");
    return shannon(t, log_base);
}

double entropy_from_c2_d2(double c2, double log_base) {
    require_base(log_base);
    c2 = clamp_unit(c2, "C_2");
    const double x = (1.0 + std::sqrt(std::max(1.0 - c2 * c2, 0.0))) / 2.0;
    RealVector t(2);
    t(0) = x;
    t(1) = 1.0 - x;
    return shannon(t, log_base);
}

double entropy_from_c23_d3(double c2, double c3, double log_base) {
    require_base(log_base);
    c2 = clamp_unit(c2, "C_2");
    c3 = clamp_unit(c3, "C_3");

    const double one_m = 1.0 - c2 * c2;
    if (one_m < 1e-10) {
        // C_2 -> 1 forces the maximally mixed spectrum; the trig form
        // degenerates (0/0) there, so answer directly.
        return std::log(3.0) / std::log(log_base);
    }

    double cos_theta = (1.0 - 1.5 * c2 * c2 + 0.5 * c3 * c3 * c3) / std::pow(one_m, 1.5);
    cos_theta = std::clamp(cos_theta, -1.0, 1.0);
    const double theta = std::acos(cos_theta);
    const double r = (2.0 / 3.0) * std::sqrt(one_m);

    const double x = 1.0 / 3.0 + r * std::cos(theta / 3.0);
    const double y = 1.0 / 3.0 + r * std::cos((theta + 2.0 * std::numbers::pi) / 3.0);
    RealVector t(3);
    t(0) = std::max(x, 0.0);
    t(1) = std::max(y, 0.0);
    t(2) = std::max(1.0 - x - y, 0.0);
    return shannon(t, log_base);
}

double wootters_concurrence(const DensityMatrix& rho) {
    if (rho.dim != 4)
        throw validation_error("wootters_concurrence needs a two-qubit (4 x 4) state");

    Matrix yy = Matrix::Zero(4, 4);
    // sigma_y (x) sigma_y is the antidiagonal (-1, 1, 1, -1).
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    const Matrix r = rho.mat * yy * rho.mat.conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix> es(r);
    if (es.info() != Eigen::Success)
        throw numerical_error("wootters_concurrence: eigensolve failed");

    std::array<double, 4> s{};
    for (int i = 0; i < 4; ++i)
        s[i] = std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0));
    std::sort(s.begin(), s.end(), std::greater<double>());
    return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

} // namespace qcm
