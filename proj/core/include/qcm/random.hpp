#pragma once

#include <cstdint>
#include <random>

#include "qcm/states.hpp"

namespace qcm::rng {

/// All randomness in the library flows from a single 64-bit seed through
/// counter-based stream derivation: derive(seed, stream, substream) feeds
/// splitmix64-mixed words into an independent mt19937_64 per (stream,
/// substream) pair, so parallel consumers draw identical values regardless
/// of execution order.
using Stream = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t x);

/// Independent generator for the given (seed, stream, substream) triple.
Stream derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

/// Uniform double in [0, 1) from the top 53 bits (implementation-defined
/// std::distributions are avoided so streams are reproducible everywhere).
double uniform(Stream& g);

/// Standard normal via Box-Muller on two uniform draws.
double normal(Stream& g);

/// Standard complex normal (variance 1 total, 1/2 per component).
Complex complex_normal(Stream& g);

/// Ginibre matrix: iid complex normal entries.
Matrix ginibre(Stream& g, int rows, int cols);

/// Haar-distributed isometry, rows >= cols, columns orthonormal.
Matrix haar_isometry(Stream& g, int rows, int cols);

/// Haar-distributed unitary.
Matrix haar_unitary(Stream& g, int dim);

/// Random point on the probability simplex, sorted descending (a valid
/// Schmidt spectrum).
RealVector spectrum(Stream& g, int d);

/// Haar-random normalized pure state on dim_a x dim_b.
PureState pure_state(Stream& g, int dim_a, int dim_b);

/// Random density matrix of the given rank (mixture of Haar pure states
/// through a Ginibre purification).
DensityMatrix density(Stream& g, int dim, int rank);

} // namespace qcm::rng
