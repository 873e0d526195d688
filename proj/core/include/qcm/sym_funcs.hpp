#pragma once

#include <vector>

#include "qcm/states.hpp"

namespace qcm::sym {

/// Binomial coefficient as a double (exact for the small n used here).
double binomial(int n, int k);

/// k-th elementary symmetric polynomial of the given values, via the
/// stable one-pass recurrence e_j <- e_j + x * e_{j-1}.
double elementary_symmetric(const RealVector& values, int k);

/// All elementary symmetric polynomials e_0..e_d at once (index = order).
RealVector all_elementary_symmetric(const RealVector& values);

/// Power sums p_m = sum_i values_i^m for m = 1..max_m (index m-1).
RealVector power_sums(const RealVector& values, int max_m);

/// Power sums Tr(rho^m) for m = 1..max_m of a Hermitian matrix, by
/// repeated multiplication (no eigendecomposition).
RealVector matrix_power_sums(const Matrix& herm, int max_m);

/// Multiplicity vector of one partition of k: counts[m-1] = N_m with
/// sum_m m*N_m = k.
struct Partition {
    std::vector<int> counts;
};

/// All partitions of k as multiplicity vectors. k up to 12 is supported;
/// the count grows as 1, 2, 3, 5, 7, 11, ... and stays tiny in that range.
std::vector<Partition> partitions(int k);

/// e_k rebuilt from power sums p_1..p_k via the partition expansion
///
///   e_k = sum over partitions (-1)^(k - sum N_m) prod_m (p_m/m)^N_m / N_m!
///
/// which inverts Newton's identities in closed form.
double esf_from_power_sums(const RealVector& p, int k);

/// Trace of the k-th compound (antisymmetric power) of a Hermitian matrix,
/// i.e. the sum of its k x k principal minors, equal to e_k of its
/// eigenvalues. Minors are enumerated directly up to
/// minor_enumeration_max_dim; larger matrices go through the eigenvalues.
double compound_trace(const Matrix& herm, int k, int minor_enumeration_max_dim = 12);

/// Spectrum (descending, nonnegative, summing to e_1) recovered from its
/// elementary symmetric polynomials esf = [e_1..e_d]. The values are the
/// roots of x^d - e_1 x^(d-1) + e_2 x^(d-2) - ...; closed form for d <= 2,
/// companion-matrix eigenvalues above that. Roots with |imag| > imag_tol
/// or real part below -imag_tol mean the inputs are not the symmetric
/// functions of any spectrum and raise numerical_error.
RealVector spectrum_from_esf(const RealVector& esf, double imag_tol = 1e-8);

} // namespace qcm::sym
