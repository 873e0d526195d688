#pragma once

#include <vector>

#include "qcm/states.hpp"

namespace qcm::rpbes {

/// Phase profile theta(m, m') carried by the entangling measurement. The
/// canonical profile 2 pi m m' / d makes the phase matrix a Fourier
/// kernel; scaling it by alpha in [0, 1] sweeps continuously from the
/// trivial profile (no entanglement left at the ends) to full swapping.
struct PhaseMatrix {
    RealMatrix theta;

    int dim() const { return static_cast<int>(theta.rows()); }

    static PhaseMatrix zero(int d);
    static PhaseMatrix canonical(int d);
    static PhaseMatrix scaled_canonical(int d, double alpha);
};

/// The d^2 orthonormal projector states on the middle pair, indexed
/// b = d*j + j':
///
///   |P(j,j')> = (1/d) sum_{m,m'} exp(i [ (2 pi/d^2)(dj+j')(dm+m')
///                                        + theta(m,m') ]) |m m'>.
///
/// Orthonormality holds for every phase profile.
std::vector<PureState> measurement_basis(const PhaseMatrix& phases);

/// One measurement branch: outcome label, its probability (1/d^2 for
/// every branch), and the end-to-end state after both parties applied
/// their phase corrections.
struct Outcome {
    int j = 0;
    int jprime = 0;
    double probability = 0.0;
    PureState corrected;
};

struct ProtocolResult {
    std::vector<Outcome> outcomes;
    /// The state every corrected branch lands on.
    PureState final_state;
    /// G-concurrence of final_state and of the two input links.
    double g14 = 0.0;
    double g12 = 0.0;
    double g34 = 0.0;
};

/// Run the swapping protocol on two pure links given by their Schmidt
/// spectra: lambda for the (1,2) pair, eta for the (3,4) pair. The middle
/// parties are measured in measurement_basis(phases); each branch is
/// followed by the outcome-dependent diagonal phase corrections, which
/// make every branch collapse onto the same final state
///
///   |F> = sum_{m,m'} exp(-i theta(m,m')) sqrt(lambda_m eta_m') |m m'>,
///
/// so the protocol is deterministic up to local phases.
ProtocolResult run_protocol(const RealVector& lambda, const RealVector& eta,
                            const PhaseMatrix& phases);

/// |F> directly, without simulating the branches.
PureState final_state(const RealVector& lambda, const RealVector& eta,
                      const PhaseMatrix& phases);

/// G-concurrence of the final state. Factorizes as
///   G(F) = G12 * G34 * |det V|^(2/d),   V(m,m') = exp(-i theta(m,m')) / sqrt(d),
/// so the canonical profile (V unitary) transfers all of G12 * G34 to the
/// ends, and the zero profile (rank-one V) destroys it.
double g_final(const RealVector& lambda, const RealVector& eta,
               const PhaseMatrix& phases);

/// The 2-concurrence of the final state written as an explicit function
/// of the inputs:
///
///   2 { sum_{k>k'} sum_{m>m'} lambda_k lambda_k' eta_m eta_m'
///         |e^{i(theta_km + theta_k'm')} - e^{i(theta_km' + theta_k'm)}|^2 }^(1/2).
///
/// This equals sqrt(2 (d-1) / d) times the normalized C_2 of final_state
/// (the factor is c2_final_normalization; the two coincide at d = 2).
double c2_final(const RealVector& lambda, const RealVector& eta,
                const PhaseMatrix& phases);

/// sqrt(2 (d-1) / d), the ratio c2_final / C_2(final_state).
double c2_final_normalization(int d);

struct PhaseDesign {
    PhaseMatrix phases;
    double alpha = 0.0;
    double achieved = 0.0;
};

/// Pick a scaled-canonical profile hitting a requested final G. Bisects
/// alpha in [0, 1] (g is continuous with g(0) = 0 and g(1) = G12 * G34,
/// so any target in that range is reachable) until the achieved value is
/// within tol * G12 * G34 of the target.
PhaseDesign design_phases(const RealVector& lambda, const RealVector& eta,
                          double target_g, double tol = 1e-6);

} // namespace qcm::rpbes
