#pragma once

#include <stdexcept>
#include <string>

namespace qcm {

/// Input violated a documented precondition or type invariant.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure left its guaranteed regime (non-finite objective,
/// complex residual above tolerance, ...).
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qcm
