#pragma once

#include <cstdint>

#include "qcm/states.hpp"

namespace qcm {

/// Selects the pure-state monotone a mixed-state quantity is built from:
/// k = 0 means the G-concurrence, k >= 1 the k-th concurrence monotone.
struct MonotoneSelector {
    int k = 0;

    static MonotoneSelector g() { return {0}; }
    static MonotoneSelector c(int order) { return {order}; }
};

/// Pure-state value of the selected monotone. Degree-2 homogeneous, so
/// subnormalized states are legal inputs.
double evaluate_monotone(const PureState& psi, MonotoneSelector sel);

/// Probability-weighted average of the monotone over ensemble members.
double ensemble_average(const Ensemble& ens, MonotoneSelector sel);

struct RoofOptions {
    /// Independent optimizer starts. Start 0 is the eigendecomposition
    /// itself; the rest begin at Haar-random isometries.
    int restarts = 32;
    int max_iters = 200;
    std::uint64_t seed = 0;
    /// Decomposition cardinality; 0 picks min(dim^2, 2 * rank).
    int ensemble_size = 0;
    /// Stop once the Riemannian gradient norm falls below this.
    double grad_tol = 1e-7;
    /// Members with probability below this are pruned from the result.
    double member_cutoff = 1e-12;
};

struct RoofResult {
    /// Best ensemble average found (an upper bound on the exact roof).
    double value = 0.0;
    /// The decomposition achieving it; mixes back to the input state.
    Ensemble ensemble;
    int best_restart = -1;
    /// Gradient iterations the winning start used.
    int iterations = 0;
};

/// Convex-roof extension  min over decompositions of sum_i p_i m(psi_i)
/// estimated by gradient descent over the isometry parameterization of
/// decompositions: every size-n decomposition of rho is Etilde * U^H with
/// Etilde the weighted eigenvector matrix and U an n x r isometry. The
/// objective is minimized with a projected gradient (central differences,
/// Stiefel tangent projection, QR retraction, backtracking line search)
/// from several starts, and the best decomposition found is returned.
RoofResult roof_minimize(const DensityMatrix& rho, int dim_a, int dim_b,
                         MonotoneSelector sel, const RoofOptions& opts = {});

} // namespace qcm
