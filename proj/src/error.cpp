#include "critlat/error.hpp"

namespace critlat {

  std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::CycleDetected: return "CycleDetected";
      case ErrorKind::NotALattice: return "NotALattice";
      case ErrorKind::DuplicateLabel: return "DuplicateLabel";
      case ErrorKind::UnknownLabel: return "UnknownLabel";
      case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
      case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
      case ErrorKind::BudgetExceeded: return "BudgetExceeded";
      case ErrorKind::NotACongruence: return "NotACongruence";
      case ErrorKind::NotSpanning: return "NotSpanning";
      case ErrorKind::HostMismatch: return "HostMismatch";
      case ErrorKind::ConNotBoolean: return "ConNotBoolean";
      case ErrorKind::ArityMismatch: return "ArityMismatch";
      case ErrorKind::NotASublattice: return "NotASublattice";
      case ErrorKind::NotSubdirectlyIrreducible: return "NotSubdirectlyIrreducible";
      case ErrorKind::EmptyChainSet: return "EmptyChainSet";
      case ErrorKind::RestrictionMismatch: return "RestrictionMismatch";
      case ErrorKind::NotLowerSubset: return "NotLowerSubset";
      case ErrorKind::PreconditionFailed: return "PreconditionFailed";
      case ErrorKind::BadChainShapes: return "BadChainShapes";
      case ErrorKind::TooFewElements: return "TooFewElements";
      case ErrorKind::PosetMismatch: return "PosetMismatch";
      case ErrorKind::MissingDirectChain: return "MissingDirectChain";
      case ErrorKind::VerificationFailed: return "VerificationFailed";
      case ErrorKind::HypothesisUnmet: return "HypothesisUnmet";
      case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
  }

  Error::Error(ErrorKind kind, std::string const& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        _kind(kind),
        _detail(detail) {}

  void raise(ErrorKind kind, std::string const& detail) {
    throw Error(kind, detail);
  }

}  // namespace critlat
