#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quasifold {

enum class ErrorKind {
  // scalar_field
  NotMonic,
  NoSignChange,
  Reducible,
  RootNotIsolated,
  SyntaxError,
  DivisionByZeroScalar,
  MixedFields,
  DimensionMismatch,
  // polytope
  SchemaError,
  UnboundedPolytope,
  LowerDimensional,
  NormalsDontSpan,
  NotRationalInput,
  // construction
  NotSimple,
  NotAVertex,
  OffLevelSet,
  IllConditioned,
  InternalInconsistency,
  // verifier / cli
  StepOutOfRange,
  RejectionStall,
  DimensionUnsupported,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::RootNotIsolated: return "RootNotIsolated";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DivisionByZeroScalar: return "DivisionByZeroScalar";
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorKind::LowerDimensional: return "LowerDimensional";
    case ErrorKind::NormalsDontSpan: return "NormalsDontSpan";
    case ErrorKind::NotRationalInput: return "NotRationalInput";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::NotAVertex: return "NotAVertex";
    case ErrorKind::OffLevelSet: return "OffLevelSet";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::StepOutOfRange: return "StepOutOfRange";
    case ErrorKind::RejectionStall: return "RejectionStall";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace quasifold
