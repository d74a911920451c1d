#pragma once

#include <stdexcept>
#include <string>

namespace gridcode {

enum class ErrorKind {
  NotInLattice,
  DegeneratePeriod,
  TwinVertices,
  InfeasibleClause,
  ResourceLimit,
  NoCycle,
  IndexTooLarge,
  Parse,
  Overflow,
  Internal,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this one exception type; the
// kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gridcode
