#include "fpsi/error.hpp"

namespace fpsi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGeometry: return "invalid-geometry";
    case ErrorKind::MarkingIncomplete: return "marking-incomplete";
    case ErrorKind::AmbiguousMarking: return "ambiguous-marking";
    case ErrorKind::InterfaceMismatch: return "interface-mismatch";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::TangledMesh: return "tangled-mesh";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Capability: return "capability";
    case ErrorKind::Argument: return "argument";
    case ErrorKind::ConstraintConflict: return "constraint-conflict";
    case ErrorKind::SingularSystem: return "singular-system";
    case ErrorKind::Evaluation: return "evaluation";
    case ErrorKind::CouplingData: return "coupling-data";
    case ErrorKind::Synchronization: return "synchronization";
    case ErrorKind::InsufficientHistory: return "insufficient-history";
    case ErrorKind::Config: return "config";
    case ErrorKind::ResourceGuard: return "resource-guard";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace fpsi
