#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schur_dilate {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  NotPSD,
  DimensionMismatch,
  NotContraction,
  NoFactor,
  NotEquinormed,
  NotUnitary,
  ShapeUnsupported,
  UnknownName,
  UnsupportedCombination,
  NotUnital,
  NotResolution,
  EffectsNotRankOne,
  NotTracePreserving,
  PaddingTooSmall,
  NotState,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every domain failure in the library is reported through this type; the
/// kind drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace schur_dilate
