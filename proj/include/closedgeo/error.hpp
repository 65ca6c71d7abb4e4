#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace closedgeo {

enum class ErrorKind {
  MixedBackends,
  InvalidPoint,
  InvalidCurve,
  TooFar,
  NotUnique,
  GapTooWide,
  CannotSatisfy,
  DiameterViolation,
  NoConvergence,
  ParseError,
  NonManifold,
  Disconnected,
  DegenerateFace,
  OutsideDisk,
  ContinuityViolation,
  FamilyCollapsed,
  NoneConverged,
  WindowTooWide,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every error carries the module and operation that raised it, so CLI
// diagnostics can name their origin.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string_view where, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& where() const noexcept { return where_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string where_;
  std::string detail_;
};

[[noreturn]] void raise(ErrorKind kind, std::string_view where,
                        const std::string& what);

}  // namespace closedgeo
