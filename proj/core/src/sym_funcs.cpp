#include "qcm/sym_funcs.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qcm/errors.hpp"

namespace qcm::sym {

namespace {

constexpr double kHermTol = 1e-10;
constexpr int kMaxPartitionOrder = 12;

void require_hermitian(const Matrix& m, const char* who) {
    if (m.rows() != m.cols())
        throw validation_error(std::string(who) + ": matrix must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw validation_error(std::string(who) + ": matrix must be Hermitian");
}

void enumerate_rec(int remaining, int m, std::vector<int>& counts,
                   std::vector<Partition>& out) {
    if (m == 0) {
        if (remaining == 0)
            out.push_back(Partition{counts});
        return;
    }
    for (int n = 0; n * m <= remaining; ++n) {
        counts[m - 1] = n;
        enumerate_rec(remaining - n * m, m - 1, counts, out);
    }
    counts[m - 1] = 0;
}

} // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

double elementary_symmetric(const RealVector& values, int k) {
    const int d = static_cast<int>(values.size());
    if (k < 0)
        throw validation_error("elementary_symmetric: order must be nonnegative");
    if (k > d)
        return 0.0;
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < d; ++i) {
        const double x = values(i);
        for (int j = std::min(k, i + 1); j >= 1; --j)
            e[j] += x * e[j - 1];
    }
    return e[k];
}

RealVector all_elementary_symmetric(const RealVector& values) {
    const int d = static_cast<int>(values.size());
    RealVector e = RealVector::Zero(d + 1);
    e(0) = 1.0;
    for (int i = 0; i < d; ++i) {
        const double x = values(i);
        for (int j = i + 1; j >= 1; --j)
            e(j) += x * e(j - 1);
    }
    return e;
}

RealVector power_sums(const RealVector& values, int max_m) {
    if (max_m < 1)
        throw validation_error("power_sums: max_m must be positive");
    RealVector p = RealVector::Zero(max_m);
    for (int i = 0; i < values.size(); ++i) {
        double x = values(i);
        double pw = 1.0;
        for (int m = 0; m < max_m; ++m) {
            pw *= x;
            p(m) += pw;
        }
    }
    return p;
}

RealVector matrix_power_sums(const Matrix& herm, int max_m) {
    require_hermitian(herm, "matrix_power_sums");
    if (max_m < 1)
        throw validation_error("matrix_power_sums: max_m must be positive");
    RealVector p(max_m);
    Matrix cur = herm;
    p(0) = cur.trace().real();
    for (int m = 2; m <= max_m; ++m) {
        cur = cur * herm;
        p(m - 1) = cur.trace().real();
    }
    return p;
}

std::vector<Partition> partitions(int k) {
    if (k < 1 || k > kMaxPartitionOrder)
        throw validation_error("partitions: order must lie in [1, 12]");
    std::vector<Partition> out;
    std::vector<int> counts(k, 0);
    enumerate_rec(k, k, counts, out);
    return out;
}

double esf_from_power_sums(const RealVector& p, int k) {
    if (k == 0)
        return 1.0;
    if (static_cast<int>(p.size()) < k)
        throw validation_error("esf_from_power_sums: need power sums up to order k");
    double total = 0.0;
    for (const Partition& part : partitions(k)) {
        double term = 1.0;
        int parts = 0;
        for (int m = 1; m <= k; ++m) {
            const int n = part.counts[m - 1];
            if (n == 0)
                continue;
            parts += n;
            double factor = p(m - 1) / m;
            double pw = 1.0;
            for (int i = 0; i < n; ++i) {
                pw *= factor;
                pw /= (i + 1);
            }
            term *= pw;
        }
        const int sign = ((k - parts) % 2 == 0) ? 1 : -1;
        total += sign * term;
    }
    return total;
}

double compound_trace(const Matrix& herm, int k, int minor_enumeration_max_dim) {
    require_hermitian(herm, "compound_trace");
    const int n = static_cast<int>(herm.rows());
    if (k < 0 || k > n)
        throw validation_error("compound_trace: order must lie in [0, dim]");
    if (k == 0)
        return 1.0;
    if (k == 1)
        return herm.trace().real();

    if (n > minor_enumeration_max_dim) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
        if (es.info() != Eigen::Success)
            throw numerical_error("compound_trace: eigendecomposition failed");
        return elementary_symmetric(es.eigenvalues(), k);
    }

    // Sum of principal k x k minors, walking the index subsets in
    // lexicographic order.
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    double total = 0.0;
    while (true) {
        Matrix sub(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                sub(r, c) = herm(idx[r], idx[c]);
        total += sub.determinant().real();

        int i = k - 1;
        while (i >= 0 && idx[i] == i + n - k)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return total;
}

RealVector spectrum_from_esf(const RealVector& esf, double imag_tol) {
    const int d = static_cast<int>(esf.size());
    if (d < 1)
        throw validation_error("spectrum_from_esf: need at least e_1");

    std::vector<double> roots;
    roots.reserve(d);

    if (d == 1) {
        roots.push_back(esf(0));
    } else if (d == 2) {
        // x^2 - e1 x + e2 solved directly.
        const double e1 = esf(0), e2 = esf(1);
        double disc = e1 * e1 - 4.0 * e2;
        if (disc < -imag_tol)
            throw numerical_error("spectrum_from_esf: complex roots, inputs are "
                                  "not symmetric functions of a real spectrum");
        disc = std::max(disc, 0.0);
        const double s = std::sqrt(disc);
        roots.push_back((e1 + s) / 2.0);
        roots.push_back((e1 - s) / 2.0);
    } else {
        // Companion matrix of x^d + a_{d-1} x^{d-1} + ... + a_0 where the
        // coefficient of x^(d-k) is (-1)^k e_k.
        RealMatrix comp = RealMatrix::Zero(d, d);
        for (int i = 1; i < d; ++i)
            comp(i, i - 1) = 1.0;
        for (int k = 1; k <= d; ++k) {
            const double a = ((k % 2 == 0) ? 1.0 : -1.0) * esf(k - 1);
            comp(d - k, d - 1) = -a;
        }
        Eigen::EigenSolver<RealMatrix> es(comp);
        if (es.info() != Eigen::Success)
            throw numerical_error("spectrum_from_esf: companion eigensolve failed");
        for (int i = 0; i < d; ++i) {
            const Complex r = es.eigenvalues()(i);
            if (std::abs(r.imag()) > imag_tol)
                throw numerical_error("spectrum_from_esf: complex roots, inputs are "
                                      "not symmetric functions of a real spectrum");
            roots.push_back(r.real());
        }
    }

    for (double& r : roots) {
        if (r < -imag_tol)
            throw numerical_error("spectrum_from_esf: negative root, inputs are "
                                  "not symmetric functions of a spectrum");
        r = std::max(r, 0.0);
    }
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    RealVector out(d);
    for (int i = 0; i < d; ++i)
        out(i) = roots[i];
    return out;
}

} // namespace qcm::sym
