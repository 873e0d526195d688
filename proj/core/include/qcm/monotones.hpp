#pragma once

#include "qcm/states.hpp"

namespace qcm {

/// Which route computes the symmetric functions underneath C_k.
///
///   Schmidt:  singular values of the amplitude matrix.
///   Compound: principal minors (trace of the k-th compound) of the
///             reduced density matrix, no diagonalization.
///   PowerSum: traces of powers of the reduced density matrix combined
///             through the partition expansion; only needs Tr(rho^m) for
///             m <= k, which is what a collective measurement on k copies
///             can estimate. Limited to k <= 12.
///
/// Auto currently means Schmidt, the cheapest accurate route at these
/// dimensions.
enum class ConcurrencePath { Auto, Schmidt, Compound, PowerSum };

/// The full family C_1..C_d for one state (d = min local dimension).
/// values(k-1) holds C_k; C_1 is the squared norm, so 1 for normalized
/// states, and C_k vanishes for k above the Schmidt rank.
struct MonotoneVector {
    int d = 0;
    RealVector values;
};

/// k-th concurrence monotone,
///
///   C_k = d * (S_k(lambda) / binomial(d,k))^(1/k),
///
/// where S_k is the k-th elementary symmetric polynomial of the Schmidt
/// spectrum and the prefactor normalizes the maximally entangled state to
/// 1. Degree-2 homogeneous in the amplitudes, so subnormalized states are
/// accepted. k must lie in [1, d].
double concurrence_k(const PureState& psi, int k,
                     ConcurrencePath path = ConcurrencePath::Auto);

/// Same map evaluated on a spectrum given directly (padded with zeros to
/// length d if shorter).
double concurrence_k_from_spectrum(const RealVector& lambdas, int d, int k);

/// All of C_1..C_d in one pass (one SVD / one set of power sums).
MonotoneVector monotone_vector(const PureState& psi,
                               ConcurrencePath path = ConcurrencePath::Auto);

MonotoneVector monotone_vector_from_spectrum(const RealVector& lambdas, int d);

/// Inverse of monotone_vector: the Schmidt spectrum is recovered as the
/// roots of
///
///   f(x) = sum_k (-1)^k binomial(d,k) (C_k/d)^k x^(d-k),
///
/// which shows the family C_1..C_d determines the state up to local
/// unitaries. Inconsistent values (no real nonnegative root set) raise
/// numerical_error.
RealVector spectrum_from_monotones(const MonotoneVector& mv, double imag_tol = 1e-8);

/// G-concurrence, the d-th member of the family:
///
///   G = d * det(rho_reduced)^(1/d) = d * |det A|^(2/d)  (square A),
///
/// the geometric mean of the Schmidt values times d. Computed from an LU
/// determinant of the amplitude matrix when it is square, from the Gram
/// matrix of the smaller side otherwise. Degree-2 homogeneous, and
/// multiplicative across tensor products.
double g_concurrence(const PureState& psi);

/// Entropy of entanglement -sum lambda log(lambda) in the given base.
double entropy_entanglement(const PureState& psi, double log_base = 2.0);

/// Shannon entropy of a probability vector in the given base.
double entropy_of_spectrum(const RealVector& lambdas, double log_base = 2.0);

/// Entropy of a 2 x n state as a function of C_2 alone:
///   E = h((1 + sqrt(1 - C_2^2)) / 2).
double entropy_from_c2_d2(double c2, double log_base = 2.0);

/// Entropy of a 3 x n state as a function of (C_2, C_3). The spectrum is
/// rebuilt from the cubic's trigonometric solution,
///
///   cos(theta) = (1 - (3/2) C_2^2 + (1/2) C_3^3) / (1 - C_2^2)^(3/2),
///   x = 1/3 + (2/3) sqrt(1 - C_2^2) cos(theta / 3),
///   y = 1/3 + (2/3) sqrt(1 - C_2^2) cos((theta + 2 pi) / 3),
///
/// and E = H(x, y, 1-x-y). At C_2 -> 1 the expression degenerates; within
/// 1e-10 of that point the maximally mixed answer log(3) is returned.
double entropy_from_c23_d3(double c2, double c3, double log_base = 2.0);

/// Mixed-state concurrence of a two-qubit density matrix in closed form:
/// C = max(0, s1 - s2 - s3 - s4) with s_i the decreasing square roots of
/// the eigenvalues of rho (sy X sy) rho* (sy X sy).
double wootters_concurrence(const DensityMatrix& rho);

} // namespace qcm
