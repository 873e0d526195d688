#include "qcm/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "qcm/errors.hpp"

namespace qcm::rng {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Stream derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    // Mix the triple down to one word, chaining so that (1,0) and (0,1)
    // land far apart.
    std::uint64_t s = mix(seed);
    s = mix(s ^ mix(stream));
    s = mix(s ^ mix(substream));
    return Stream(s);
}

double uniform(Stream& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

double normal(Stream& g) {
    // Box-Muller; std::normal_distribution is implementation-defined and
    // would break cross-platform reproducibility.
    double u1 = uniform(g);
    while (u1 <= 0.0) u1 = uniform(g);
    const double u2 = uniform(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex complex_normal(Stream& g) {
    const double re = normal(g);
    const double im = normal(g);
    return Complex(re, im) / std::sqrt(2.0);
}

Matrix ginibre(Stream& g, int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = complex_normal(g);
    return m;
}

Matrix haar_isometry(Stream& g, int rows, int cols) {
    if (rows < cols)
        throw validation_error("haar_isometry: rows < cols");
    // QR of a Ginibre matrix with the R-diagonal phase fixed gives the
    // Haar distribution rather than QR's arbitrary sign convention.
    const Matrix z = ginibre(g, rows, cols);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (int j = 0; j < cols; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

Matrix haar_unitary(Stream& g, int dim) {
    return haar_isometry(g, dim, dim);
}

RealVector spectrum(Stream& g, int d) {
    if (d < 1)
        throw validation_error("spectrum: dimension must be positive");
    // Exponential spacings normalized to the simplex (flat Dirichlet).
    RealVector v(d);
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        double u = uniform(g);
        while (u <= 0.0) u = uniform(g);
        v(i) = -std::log(u);
        total += v(i);
    }
    v /= total;
    std::sort(v.data(), v.data() + d, std::greater<double>());
    return v;
}

PureState pure_state(Stream& g, int dim_a, int dim_b) {
    Matrix amps = ginibre(g, dim_a, dim_b);
    amps /= amps.norm();
    return PureState::make(amps);
}

DensityMatrix density(Stream& g, int dim, int rank) {
    if (rank < 1 || rank > dim)
        throw validation_error("density: rank must lie in [1, dim]");
    const Matrix z = ginibre(g, dim, rank);
    Matrix rho = z * z.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::make(rho);
}

} // namespace qcm::rng
