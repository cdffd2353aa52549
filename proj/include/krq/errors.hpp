#pragma once

#include <stdexcept>
#include <string>

namespace krq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested (type, node) has no proven table.
struct UncoveredNode : Error {
  using Error::Error;
};

// Exact division left a remainder; carries a short description of it.
struct DivisionError : Error {
  using Error::Error;
};

// A denominator vanished at an evaluation point; the caller should draw another point.
struct EvaluationError : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

}  // namespace krq
