#ifndef TRES_ERROR_HPP
#define TRES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tres {

/// Every failure the library can signal.  The codes are grouped by how the
/// CLI maps them onto process exit codes:
///   - degenerate input (a named resultant or facet resultant vanishes,
///     an empty layout, ...)            -> exit 2
///   - unsupported configuration        -> exit 3
///   - everything else                  -> exit 1
enum class ErrorCode {
  // generic / internal
  Internal,
  DimensionMismatch,
  ArityMismatch,
  EmptyInput,

  // exact-core
  NotDivisible,
  DivideByZero,
  NonSquare,
  SingularMatrix,

  // lattice geometry
  InfiniteIndex,
  Unsupported,

  // cox ring
  SupportOutsidePolytope,
  NotOfDegreeKBeta,
  NoIndependentSubset,
  NonExactDivision,

  // resultant engine
  EmptyCriticalDegree,
  AllMinorsZero,
  UnsupportedFaceConfiguration,
  NonIntegerDegree,
  ZeroPolynomial,
  NegativeExponent,

  // residue engine
  ResultantVanishes,
  DegreeMismatch,
  FacetResultantVanishes,
  DenominatorNotCertified,
  GenericityFailure,
  MismatchBetweenDraws,
  DegenerateLeadingForm,

  // cli
  SyntaxError,
  UndeclaredSymbol,
  DuplicateDefinition,
};

const char* error_code_name(ErrorCode c);

/// Process exit code the CLI uses for a given failure.
int exit_code_for(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }
  int exit_code() const { return exit_code_for(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace tres

#endif  // TRES_ERROR_HPP
