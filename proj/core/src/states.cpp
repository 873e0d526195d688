#include "qcm/states.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcm {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-10;

void check_dims(int dim_a, int dim_b) {
    if (dim_a < 1 || dim_b < 1)
        throw validation_error("state dimensions must be at least 1");
}

} // namespace

PureState PureState::make(Matrix amps) {
    check_dims(static_cast<int>(amps.rows()), static_cast<int>(amps.cols()));
    const double n = amps.norm();
    if (std::abs(n * n - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "pure state is not normalized: |amps|^2 = " << n * n;
        throw validation_error(os.str());
    }
    PureState s;
    s.dim_a = static_cast<int>(amps.rows());
    s.dim_b = static_cast<int>(amps.cols());
    s.amps = std::move(amps);
    s.normalized = true;
    return s;
}

PureState PureState::make_unnormalized(Matrix amps) {
    check_dims(static_cast<int>(amps.rows()), static_cast<int>(amps.cols()));
    PureState s;
    s.dim_a = static_cast<int>(amps.rows());
    s.dim_b = static_cast<int>(amps.cols());
    s.amps = std::move(amps);
    s.normalized = false;
    return s;
}

PureState PureState::from_vector(const Vector& v, int dim_a, int dim_b) {
    check_dims(dim_a, dim_b);
    if (v.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
        throw validation_error("amplitude vector length does not match dims");
    Matrix amps(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_b; ++j) amps(i, j) = v(i * dim_b + j);
    return make(std::move(amps));
}

Vector PureState::to_vector() const {
    Vector v(static_cast<Eigen::Index>(dim_a) * dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_b; ++j) v(i * dim_b + j) = amps(i, j);
    return v;
}

int PureState::square_dim() const {
    if (!is_square())
        throw validation_error("operation requires a square (d x d) state; use embed_square first");
    return dim_a;
}

PureState SchmidtData::reconstruct() const {
    Matrix amps = Matrix::Zero(basis_a.rows(), basis_b.rows());
    for (int k = 0; k < rank(); ++k)
        amps += std::sqrt(lambdas(k)) * basis_a.col(k) * basis_b.col(k).transpose();
    return PureState::make(std::move(amps));
}

DensityMatrix DensityMatrix::make(Matrix m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw validation_error("density matrix must be square and non-empty");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw validation_error("density matrix is not Hermitian within 1e-12");
    if (std::abs(m.trace().real() - 1.0) > kNormTol || std::abs(m.trace().imag()) > kNormTol)
        throw validation_error("density matrix trace differs from 1 beyond 1e-12");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw validation_error("density matrix has an eigenvalue below -1e-10");
    DensityMatrix rho;
    rho.dim = static_cast<int>(m.rows());
    rho.mat = std::move(m);
    return rho;
}

Ensemble Ensemble::make(std::vector<Member> members) {
    if (members.empty()) throw validation_error("ensemble must have at least one member");
    const int da = members.front().state.dim_a;
    const int db = members.front().state.dim_b;
    double total = 0.0;
    for (const auto& m : members) {
        if (m.p <= 0.0) throw validation_error("ensemble probabilities must be positive");
        if (m.state.dim_a != da || m.state.dim_b != db)
            throw validation_error("ensemble members must share dimensions");
        if (!m.state.normalized)
            throw validation_error("ensemble members must be normalized states");
        total += m.p;
    }
    if (std::abs(total - 1.0) > kNormTol)
        throw validation_error("ensemble probabilities must sum to 1 within 1e-12");
    Ensemble e;
    e.members = std::move(members);
    return e;
}

Ensemble Ensemble::from_pure(PureState state) {
    return make({Member{1.0, std::move(state)}});
}

DensityMatrix Ensemble::density() const {
    const Eigen::Index n = static_cast<Eigen::Index>(dim_a()) * dim_b();
    Matrix rho = Matrix::Zero(n, n);
    for (const auto& m : members) {
        const Vector v = m.state.to_vector();
        rho += m.p * v * v.adjoint();
    }
    return DensityMatrix::make(std::move(rho));
}

SchmidtData schmidt(const PureState& state, double cutoff) {
    if (!state.normalized)
        throw validation_error("schmidt requires a normalized state");
    Eigen::JacobiSVD<Matrix> svd(state.amps, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) * sv(i) > cutoff) ++rank;
    if (rank == 0)
        throw numerical_error("schmidt: all singular values below cutoff");
    SchmidtData out;
    out.lambdas = RealVector(rank);
    out.basis_a = svd.matrixU().leftCols(rank);
    // amps = U S V^H = sum_k s_k u_k conj(v_k)^T, so the B-side basis is conj(V).
    out.basis_b = svd.matrixV().leftCols(rank).conjugate();
    for (int k = 0; k < rank; ++k) out.lambdas(k) = sv(k) * sv(k);
    out.padded_dim = static_cast<int>(std::min(state.amps.rows(), state.amps.cols()));
    return out;
}

RealVector schmidt_spectrum(const PureState& state, double cutoff) {
    const SchmidtData sd = schmidt(state, cutoff);
    RealVector padded = RealVector::Zero(sd.padded_dim);
    padded.head(sd.rank()) = sd.lambdas;
    return padded;
}

DensityMatrix reduced_density(const PureState& state, Side keep) {
    if (!state.normalized)
        throw validation_error("reduced_density requires a normalized state");
    Matrix rho;
    if (keep == Side::A) {
        rho = state.amps * state.amps.adjoint();
    } else {
        rho = (state.amps.adjoint() * state.amps).transpose();
    }
    // Round off Hermitian noise so the validated constructor accepts it.
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    return DensityMatrix::make(std::move(rho));
}

PureState tensor_product(const PureState& s1, const PureState& s2) {
    if (!s1.normalized || !s2.normalized)
        throw validation_error("tensor_product requires normalized inputs");
    const int da = s1.dim_a * s2.dim_a;
    const int db = s1.dim_b * s2.dim_b;
    Matrix amps(da, db);
    for (int i1 = 0; i1 < s1.dim_a; ++i1)
        for (int i2 = 0; i2 < s2.dim_a; ++i2)
            for (int j1 = 0; j1 < s1.dim_b; ++j1)
                for (int j2 = 0; j2 < s2.dim_b; ++j2)
                    amps(i1 * s2.dim_a + i2, j1 * s2.dim_b + j2) =
                        s1.amps(i1, j1) * s2.amps(i2, j2);
    return PureState::make(std::move(amps));
}

PureState apply_local(const Matrix& op_a, const Matrix& op_b, const PureState& state) {
    if (op_a.rows() != state.dim_a || op_a.cols() != state.dim_a)
        throw validation_error("apply_local: op_a shape does not match dim_a");
    if (op_b.rows() != state.dim_b || op_b.cols() != state.dim_b)
        throw validation_error("apply_local: op_b shape does not match dim_b");
    return PureState::make_unnormalized(op_a * state.amps * op_b.transpose());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& traced) {
    long prod = 1;
    for (int d : dims) {
        if (d < 1) throw validation_error("partial_trace: factor dims must be >= 1");
        prod *= d;
    }
    if (prod != rho.dim)
        throw validation_error("partial_trace: product of dims does not match rho.dim");
    const int nf = static_cast<int>(dims.size());
    std::vector<bool> is_traced(nf, false);
    for (int t : traced) {
        if (t < 0 || t >= nf) throw validation_error("partial_trace: traced index out of range");
        is_traced[t] = true;
    }

    std::vector<int> kept;
    for (int f = 0; f < nf; ++f)
        if (!is_traced[f]) kept.push_back(f);

    long kept_dim = 1, traced_dim = 1;
    for (int f : kept) kept_dim *= dims[f];
    for (int f = 0; f < nf; ++f)
        if (is_traced[f]) traced_dim *= dims[f];

    // Strides of each factor in the flattened row-major composite index.
    std::vector<long> stride(nf, 1);
    for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    std::vector<int> kidx(kept.size(), 0), lidx(kept.size(), 0), tidx;

    for (long r = 0; r < kept_dim; ++r) {
        long tmp = r;
        for (int q = static_cast<int>(kept.size()) - 1; q >= 0; --q) {
            kidx[q] = static_cast<int>(tmp % dims[kept[q]]);
            tmp /= dims[kept[q]];
        }
        for (long c = 0; c < kept_dim; ++c) {
            tmp = c;
            for (int q = static_cast<int>(kept.size()) - 1; q >= 0; --q) {
                lidx[q] = static_cast<int>(tmp % dims[kept[q]]);
                tmp /= dims[kept[q]];
            }
            Complex acc(0.0, 0.0);
            for (long t = 0; t < traced_dim; ++t) {
                long row = 0, col = 0, tt = t;
                for (int f = nf - 1, q = static_cast<int>(kept.size()) - 1; f >= 0; --f) {
                    if (is_traced[f]) {
                        const int v = static_cast<int>(tt % dims[f]);
                        tt /= dims[f];
                        row += v * stride[f];
                        col += v * stride[f];
                    } else {
                        row += kidx[q] * stride[f];
                        col += lidx[q] * stride[f];
                        --q;
                    }
                }
                acc += rho.mat(row, col);
            }
            out(r, c) = acc;
        }
    }
    out = ((out + out.adjoint()) / 2.0).eval();
    return DensityMatrix::make(std::move(out));
}

PureState embed_square(const PureState& state) {
    if (state.is_square()) return state;
    const int d = std::max(state.dim_a, state.dim_b);
    Matrix amps = Matrix::Zero(d, d);
    amps.topLeftCorner(state.dim_a, state.dim_b) = state.amps;
    return state.normalized ? PureState::make(std::move(amps))
                            : PureState::make_unnormalized(std::move(amps));
}

double overlap_fidelity(const PureState& a, const PureState& b) {
    if (a.dim_a != b.dim_a || a.dim_b != b.dim_b)
        throw validation_error("overlap_fidelity: dimension mismatch");
    Complex ip(0.0, 0.0);
    for (int i = 0; i < a.dim_a; ++i)
        for (int j = 0; j < a.dim_b; ++j) ip += std::conj(a.amps(i, j)) * b.amps(i, j);
    return std::abs(ip);
}

Ensemble eigen_ensemble(const DensityMatrix& rho, int dim_a, int dim_b, double cutoff) {
    if (static_cast<long>(dim_a) * dim_b != rho.dim)
        throw validation_error("eigen_ensemble: dims do not factor rho.dim");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat);
    std::vector<Ensemble::Member> members;
    double total = 0.0;
    for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
        const double p = es.eigenvalues()(i);
        if (p <= cutoff) continue;
        Vector v = es.eigenvectors().col(i);
        v /= v.norm();
        members.push_back({p, PureState::from_vector(v, dim_a, dim_b)});
        total += p;
    }
    if (members.empty()) throw numerical_error("eigen_ensemble: no eigenvalue above cutoff");
    for (auto& m : members) m.p /= total;
    return Ensemble::make(std::move(members));
}

Matrix complete_basis(const Matrix& basis, int dim) {
    if (basis.rows() != dim || basis.cols() > dim)
        throw validation_error("complete_basis: shape mismatch");
    Matrix full(dim, dim);
    int have = static_cast<int>(basis.cols());
    full.leftCols(have) = basis;
    // Greedy Gram-Schmidt over identity candidates; deterministic.
    for (int cand = 0; cand < dim && have < dim; ++cand) {
        Vector v = Vector::Zero(dim);
        v(cand) = 1.0;
        for (int k = 0; k < have; ++k) v -= (full.col(k).adjoint() * v)(0, 0) * full.col(k);
        const double n = v.norm();
        if (n > 1e-8) {
            // Second orthogonalization pass for numerical cleanliness.
            v /= n;
            for (int k = 0; k < have; ++k) v -= (full.col(k).adjoint() * v)(0, 0) * full.col(k);
            full.col(have++) = v / v.norm();
        }
    }
    if (have != dim) throw numerical_error("complete_basis: failed to complete basis");
    return full;
}

} // namespace qcm
