#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpsi {

/// Failure categories surfaced by the library. The CLI prints the category
/// name as a machine-parsable prefix.
enum class ErrorKind {
  InvalidGeometry,
  MarkingIncomplete,
  AmbiguousMarking,
  InterfaceMismatch,
  Dimension,
  TangledMesh,
  Domain,
  Capability,
  Argument,
  ConstraintConflict,
  SingularSystem,
  Evaluation,
  CouplingData,
  Synchronization,
  InsufficientHistory,
  Config,
  ResourceGuard,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace fpsi
