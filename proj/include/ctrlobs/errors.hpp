#pragma once

#include <stdexcept>
#include <string>

namespace ctrlobs {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input: unparsable text, indices out of range,
/// duplicate entries in strict mode, and similar caller mistakes.
class input_error : public error {
 public:
  using error::error;
};

/// A documented precondition of the requested operation does not hold,
/// e.g. the dynamics digraph is not strongly connected.
class precondition_error : public error {
 public:
  using error::error;
};

/// An exhaustive search was refused because the instance exceeds the
/// configured size limit.
class size_limit_error : public error {
 public:
  using error::error;
};

/// The requested combinatorial problem has no feasible solution,
/// e.g. a perfect assignment was demanded but none exists.
class infeasible_error : public error {
 public:
  using error::error;
};

}  // namespace ctrlobs
