#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qcm/errors.hpp"

namespace qcm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Which subsystem of a bipartite state survives a reduction.
enum class Side { A, B };

/// Default threshold below which Schmidt values are treated as rank
/// deficiency (eigen-noise floor), not entanglement.
inline constexpr double kSchmidtCutoff = 1e-12;

/// Bipartite pure state |psi> = sum_ij amps(i,j) |i>_A |j>_B.
///
/// The coefficient matrix fully determines the state; all entanglement
/// quantities derive from amps via its singular structure. States are
/// normalized unless an operation explicitly produces an unnormalized one
/// (see apply_local), in which case `normalized` is false.
struct PureState {
    int dim_a = 0;
    int dim_b = 0;
    Matrix amps;
    bool normalized = true;

    /// Validating constructor for a normalized state (norm within 1e-12 of 1).
    static PureState make(Matrix amps);
    /// Constructor that skips the normalization check and flags the result.
    static PureState make_unnormalized(Matrix amps);
    /// Rebuild from a row-major flattened amplitude vector.
    static PureState from_vector(const Vector& v, int dim_a, int dim_b);

    /// Row-major flattening, index = i * dim_b + j.
    Vector to_vector() const;
    double norm() const { return amps.norm(); }
    bool is_square() const { return dim_a == dim_b; }
    /// Local dimension for square states; throws otherwise.
    int square_dim() const;
};

/// Result of a Schmidt decomposition: amps = sum_k sqrt(lambdas[k]) *
/// basis_a.col(k) * basis_b.col(k)^T, lambdas sorted descending.
struct SchmidtData {
    RealVector lambdas;
    Matrix basis_a;
    Matrix basis_b;
    int padded_dim = 0; // min(dim_a, dim_b), used for monotone normalization

    int rank() const { return static_cast<int>(lambdas.size()); }
    PureState reconstruct() const;
};

/// Validated density matrix: Hermitian, PSD up to -1e-10, unit trace.
struct DensityMatrix {
    int dim = 0;
    Matrix mat;

    static DensityMatrix make(Matrix m);
};

/// Discrete ensemble {p_i, |psi_i>} of normalized pure states on fixed dims.
struct Ensemble {
    struct Member {
        double p;
        PureState state;
    };
    std::vector<Member> members;

    static Ensemble make(std::vector<Member> members);
    static Ensemble from_pure(PureState state);

    int dim_a() const { return members.empty() ? 0 : members.front().state.dim_a; }
    int dim_b() const { return members.empty() ? 0 : members.front().state.dim_b; }
    std::size_t size() const { return members.size(); }
    DensityMatrix density() const;
};

/// Schmidt decomposition of a normalized pure state. Values at or below
/// `cutoff` are discarded as rank deficiency.
SchmidtData schmidt(const PureState& state, double cutoff = kSchmidtCutoff);

/// Schmidt spectrum padded with zeros to length min(dim_a, dim_b).
RealVector schmidt_spectrum(const PureState& state, double cutoff = kSchmidtCutoff);

/// Trace out one side: keep == A gives amps * amps^dagger.
DensityMatrix reduced_density(const PureState& state, Side keep);

/// Kronecker product with parties regrouped as (A1 A2 | B1 B2).
PureState tensor_product(const PureState& s1, const PureState& s2);

/// (op_a (x) op_b)|psi>; amps' = op_a * amps * op_b^T. The result is not
/// renormalized and is flagged unnormalized.
PureState apply_local(const Matrix& op_a, const Matrix& op_b, const PureState& state);

/// Partial trace of rho over the factor positions listed in `traced`.
/// `dims` are the tensor-factor dimensions in order; their product must be
/// rho.dim.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& traced);

/// Zero-pad the smaller side so dim_a == dim_b (identity on square states).
PureState embed_square(const PureState& state);

/// |<a|b>| of two states with identical dims (global-phase-blind fidelity).
double overlap_fidelity(const PureState& a, const PureState& b);

/// Eigendecomposition of rho as an Ensemble on (dim_a, dim_b); eigenvalues
/// at or below `cutoff` are dropped.
Ensemble eigen_ensemble(const DensityMatrix& rho, int dim_a, int dim_b,
                        double cutoff = kSchmidtCutoff);

/// Extend the orthonormal columns of `basis` (dim x r) to a full dim x dim
/// unitary whose first r columns equal `basis`.
Matrix complete_basis(const Matrix& basis, int dim);

} // namespace qcm
