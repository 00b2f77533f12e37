#pragma once

#include <stdexcept>
#include <string>

namespace smm {

enum class ErrorKind {
  Parse,
  DimensionMismatch,
  ZeroConstraintRow,
  ZeroObjective,
  TooFewConstraints,
  EmptyRecessiveSet,
  InfeasibleStart,
  Infeasible,
  TooLarge,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

// All library failures are reported with this exception; kind() selects the
// CLI exit code.
class LpError : public std::runtime_error {
 public:
  LpError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace smm
