#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qcm/states.hpp"

namespace qcm::io {

/// Output documents use ordered_json so key order is insertion order and
/// repeated runs serialize byte-identically.
using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

/// A state file holds one of three layouts, discriminated by "type":
///
///   {"type": "pure",     "dim_a": A, "dim_b": B, "amplitudes": [[re,im], ...]}
///   {"type": "density",  "dim_a": A, "dim_b": B, "matrix": [[[re,im], ...], ...]}
///   {"type": "ensemble", "dim_a": A, "dim_b": B,
///    "members": [{"p": w, "amplitudes": [[re,im], ...]}, ...]}
///
/// Amplitudes are row-major over (a, b): index a * B + b. The density
/// matrix is row-major over the same composite index.
struct LoadedState {
    enum class Kind { Pure, Density, Ensemble };
    Kind kind = Kind::Pure;
    int dim_a = 0;
    int dim_b = 0;
    std::optional<PureState> pure;
    std::optional<DensityMatrix> density;
    std::optional<Ensemble> ensemble;

    /// Whatever was loaded, as a density matrix.
    DensityMatrix as_density() const;
};

/// Parse one state document. `at` prefixes every error message with the
/// JSON path of the offending field.
LoadedState load_state(const json& j, const std::string& at = "state");

PureState load_pure(const json& j, const std::string& at = "state");

/// Array of probabilities, validated nonnegative; sorted descending.
RealVector load_spectrum(const json& j, const std::string& at = "spectrum");

/// Square complex matrix from [[ [re,im], ... ], ...] rows.
Matrix load_matrix(const json& j, const std::string& at = "matrix");

/// Read and parse a JSON file, mapping I/O failures to validation_error.
json load_json_file(const std::string& path);

ojson complex_to_json(const Complex& z);
ojson pure_to_json(const PureState& s);
ojson ensemble_to_json(const Ensemble& e);
ojson spectrum_to_json(const RealVector& v);

} // namespace qcm::io
