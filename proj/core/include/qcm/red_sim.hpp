#pragma once

#include <vector>

#include "qcm/random.hpp"
#include "qcm/states.hpp"

namespace qcm::red {

/// A complete generalized measurement {M_j} on the supplier's composite
/// system (the right half of one link and the left half of the next),
/// sum_j M_j^dagger M_j = I. Composite indices are row-major: the pair
/// (m, m') on a (d2, d3) split maps to m * d3 + m'.
struct KrausSet {
    std::vector<Matrix> ops;

    int dim() const { return ops.empty() ? 0 : static_cast<int>(ops.front().rows()); }
    std::size_t size() const { return ops.size(); }

    /// Validates squareness, equal dims, and completeness within tol.
    static KrausSet make(std::vector<Matrix> ops, double tol = 1e-10);
};

/// Rank-1 projectors |b><b| onto an orthonormal family of pure states on
/// the (d2 x d3) middle pair.
KrausSet projective_kraus(const std::vector<PureState>& basis);

/// The canonical swapping measurement (Fourier-phased projectors) as a
/// KrausSet for a d x d middle pair.
KrausSet rpbes_canonical_kraus(int d);

/// One fully resolved measurement branch: the Kraus outcome j plus the
/// projection of the supplier's residual systems onto a basis row, which
/// leaves the outer pair in a pure state.
struct Branch {
    int kraus_index = 0;
    int row = 0;
    double q = 0.0;
    PureState state;
};

/// Measure the middle pair of link12 (x) link34 with the given Kraus set,
/// resolving every operator into its rows so each branch is pure:
///
///   Y(j, row) = X * B * P,   B(k,k') = M_j(row, k*d3+k'),
///
/// with X and P the link amplitude matrices. q is the squared norm of Y;
/// branches below `cutoff` are dropped. The q over all branches sum to 1.
std::vector<Branch> supplier_measure(const PureState& link12, const PureState& link34,
                                     const KrausSet& kraus, double cutoff = 1e-14);

/// Ensemble inputs: every member pair is measured, branch weights are
/// p1 * p2 * q.
std::vector<Branch> supplier_measure(const Ensemble& link12, const Ensemble& link34,
                                     const KrausSet& kraus, double cutoff = 1e-14);

/// Average G-concurrence delivered to the ends versus the ceiling it can
/// never exceed: the product of the links' (ensemble-averaged)
/// G-concurrences. slack = bound - average_g; a correct measurement
/// never drives it below zero (up to roundoff).
struct BoundReport {
    double average_g = 0.0;
    double bound = 0.0;
    double slack = 0.0;
};

BoundReport check_bound(const PureState& link12, const PureState& link34,
                        const KrausSet& kraus);
BoundReport check_bound(const Ensemble& link12, const Ensemble& link34,
                        const KrausSet& kraus);

/// Random complete measurement with prescribed operator ranks: a Haar
/// isometry T of shape (sum ranks) x dim is cut into row blocks B_j, and
/// M_j = A_j B_j with independent Haar isometries A_j re-embedding each
/// block. Completeness is inherited from T. ranks = {dim} with a single
/// operator yields a Haar unitary.
KrausSet random_kraus(rng::Stream& g, int dim, const std::vector<int>& ranks);

/// How intermediate nodes of a chain measure.
enum class ChainStrategy {
    /// Canonical swapping projectors, rotated into the Schmidt bases of
    /// the incoming state (member 0) and the next link.
    CanonicalSwap,
    /// Caller supplies one KrausSet per intermediate node.
    Provided,
};

struct ChainResult {
    /// Pure-branch ensemble shared by the chain ends after all nodes
    /// measured.
    Ensemble final_ensemble;
    double average_g = 0.0;
    /// Product of the links' G-concurrences; CanonicalSwap attains it.
    double bound = 0.0;
    double slack = 0.0;
};

/// Fold a chain of square pure links (all d x d) into an end-to-end
/// ensemble by measuring at each intermediate node in turn.
/// strategy == Provided takes links.size() - 1 Kraus sets of dim d^2.
ChainResult chain_compose(const std::vector<PureState>& links, ChainStrategy strategy,
                          const std::vector<KrausSet>& node_kraus = {},
                          double cutoff = 1e-12);

} // namespace qcm::red
