#pragma once

#include <stdexcept>
#include <string>

namespace mstn {

/// Bad input: malformed documents, out-of-range parameters, broken invariants.
/// Maps to process exit code 2 in the CLI.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure during computation (divergence, non-finite values).
/// Maps to process exit code 3 in the CLI.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mstn
