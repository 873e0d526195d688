#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

double esf_bruteforce(const RealVector& values, int k) {
    const int n = static_cast<int>(values.size());
    if (k == 0)
        return 1.0;
    if (k > n)
        return 0.0;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    double total = 0.0;
    while (true) {
        double prod = 1.0;
        for (int i : idx)
            prod *= values(i);
        total += prod;
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

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix partial_trace_dense(const Matrix& rho, const std::vector<int>& dims,
                           const std::vector<int>& traced) {
    const int nf = static_cast<int>(dims.size());
    std::vector<bool> is_traced(nf, false);
    long long traced_total = 1;
    for (int t : traced) {
        is_traced[t] = true;
        traced_total *= dims[t];
    }

    // One projector sandwich K rho K^dagger per traced-subspace basis
    // state, where K = (x)_f (identity on kept factors, <t_f| otherwise).
    Matrix out;
    std::vector<int> t_idx(traced.size(), 0);
    for (long long step = 0; step < traced_total; ++step) {
        long long rem = step;
        for (std::size_t i = 0; i < traced.size(); ++i) {
            t_idx[i] = static_cast<int>(rem % dims[traced[i]]);
            rem /= dims[traced[i]];
        }
        Matrix k = Matrix::Identity(1, 1);
        for (int f = 0; f < nf; ++f) {
            if (is_traced[f]) {
                std::size_t pos = 0;
                while (traced[pos] != f)
                    ++pos;
                Matrix bra = Matrix::Zero(1, dims[f]);
                bra(0, t_idx[pos]) = 1.0;
                k = kron(k, bra);
            } else {
                k = kron(k, Matrix::Identity(dims[f], dims[f]));
            }
        }
        const Matrix term = k * rho * k.adjoint();
        out = (step == 0) ? term : Matrix(out + term);
    }
    return out;
}

Matrix apply_channel(const Matrix& rho, const qcm::red::KrausSet& kraus) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix& m : kraus.ops)
        out += m * rho * m.adjoint();
    return out;
}

Vector joint_vector(const qcm::PureState& link12, const qcm::PureState& link34) {
    const int d1 = link12.dim_a, d2 = link12.dim_b;
    const int d3 = link34.dim_a, d4 = link34.dim_b;
    Vector v(static_cast<Eigen::Index>(d1) * d2 * d3 * d4);
    for (int a1 = 0; a1 < d1; ++a1)
        for (int a2 = 0; a2 < d2; ++a2)
            for (int a3 = 0; a3 < d3; ++a3)
                for (int a4 = 0; a4 < d4; ++a4) {
                    const Eigen::Index idx =
                        ((static_cast<Eigen::Index>(a1) * d2 + a2) * d3 + a3) * d4 + a4;
                    v(idx) = link12.amps(a1, a2) * link34.amps(a3, a4);
                }
    return v;
}

DenseBranch measure_dense(const qcm::PureState& link12, const qcm::PureState& link34,
                          const Matrix& op) {
    const int d1 = link12.dim_a, d2 = link12.dim_b;
    const int d3 = link34.dim_a, d4 = link34.dim_b;
    if (op.rows() != static_cast<Eigen::Index>(d2) * d3)
        throw std::invalid_argument("measure_dense: operator dim mismatch");

    const Matrix full = kron(Matrix::Identity(d1, d1),
                             kron(op, Matrix::Identity(d4, d4)));
    const Vector post = full * joint_vector(link12, link34);

    DenseBranch b;
    b.probability = post.squaredNorm();
    const Matrix joint = post * post.adjoint();
    b.rho14 = partial_trace_dense(joint, {d1, d2, d3, d4}, {1, 2});
    return b;
}

} // namespace oracle
