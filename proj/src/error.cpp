#include "closedgeo/error.hpp"

namespace closedgeo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MixedBackends: return "MixedBackends";
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::InvalidCurve: return "InvalidCurve";
    case ErrorKind::TooFar: return "TooFar";
    case ErrorKind::NotUnique: return "NotUnique";
    case ErrorKind::GapTooWide: return "GapTooWide";
    case ErrorKind::CannotSatisfy: return "CannotSatisfy";
    case ErrorKind::DiameterViolation: return "DiameterViolation";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonManifold: return "NonManifold";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::DegenerateFace: return "DegenerateFace";
    case ErrorKind::OutsideDisk: return "OutsideDisk";
    case ErrorKind::ContinuityViolation: return "ContinuityViolation";
    case ErrorKind::FamilyCollapsed: return "FamilyCollapsed";
    case ErrorKind::NoneConverged: return "NoneConverged";
    case ErrorKind::WindowTooWide: return "WindowTooWide";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string_view where, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " [" +
                         std::string(where) + "]: " + what),
      kind_(kind),
      where_(where),
      detail_(what) {}

void raise(ErrorKind kind, std::string_view where, const std::string& what) {
  throw Error(kind, where, what);
}

}  // namespace closedgeo
