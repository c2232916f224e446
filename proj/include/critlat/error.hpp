#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace critlat {

  enum class ErrorKind {
    CycleDetected,
    NotALattice,
    DuplicateLabel,
    UnknownLabel,
    NotAHomomorphism,
    SizeCapExceeded,
    BudgetExceeded,
    NotACongruence,
    NotSpanning,
    HostMismatch,
    ConNotBoolean,
    ArityMismatch,
    NotASublattice,
    NotSubdirectlyIrreducible,
    EmptyChainSet,
    RestrictionMismatch,
    NotLowerSubset,
    PreconditionFailed,
    BadChainShapes,
    TooFewElements,
    PosetMismatch,
    MissingDirectChain,
    VerificationFailed,
    HypothesisUnmet,
    ParseError,
  };

  std::string_view to_string(ErrorKind kind) noexcept;

  // Every failure raised by the library carries one of the kinds above; the
  // CLI maps all of them to exit code 2.
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& detail);

    ErrorKind kind() const noexcept {
      return _kind;
    }

    std::string const& detail() const noexcept {
      return _detail;
    }

   private:
    ErrorKind   _kind;
    std::string _detail;
  };

  [[noreturn]] void raise(ErrorKind kind, std::string const& detail);

}  // namespace critlat
