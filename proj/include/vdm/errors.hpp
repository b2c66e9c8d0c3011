#pragma once

#include <stdexcept>

namespace vdm {

/// Malformed input: bad files, invalid parameters, inconsistent shapes.
/// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: non-convergence, ill-conditioned subproblems.
/// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace vdm
