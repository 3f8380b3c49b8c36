#include "tres/error.hpp"

namespace tres {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Internal: return "Internal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DivideByZero: return "DivideByZero";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::InfiniteIndex: return "InfiniteIndex";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::SupportOutsidePolytope: return "SupportOutsidePolytope";
    case ErrorCode::NotOfDegreeKBeta: return "NotOfDegreeKBeta";
    case ErrorCode::NoIndependentSubset: return "NoIndependentSubset";
    case ErrorCode::NonExactDivision: return "NonExactDivision";
    case ErrorCode::EmptyCriticalDegree: return "EmptyCriticalDegree";
    case ErrorCode::AllMinorsZero: return "AllMinorsZero";
    case ErrorCode::UnsupportedFaceConfiguration:
      return "UnsupportedFaceConfiguration";
    case ErrorCode::NonIntegerDegree: return "NonIntegerDegree";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::ResultantVanishes: return "ResultantVanishes";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::FacetResultantVanishes: return "FacetResultantVanishes";
    case ErrorCode::DenominatorNotCertified: return "DenominatorNotCertified";
    case ErrorCode::GenericityFailure: return "GenericityFailure";
    case ErrorCode::MismatchBetweenDraws: return "MismatchBetweenDraws";
    case ErrorCode::DegenerateLeadingForm: return "DegenerateLeadingForm";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorCode::DuplicateDefinition: return "DuplicateDefinition";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    // Degenerate input: the requested object exists but vanishes or is
    // ill-posed for the given coefficients.
    case ErrorCode::ResultantVanishes:
    case ErrorCode::FacetResultantVanishes:
    case ErrorCode::DegenerateLeadingForm:
    case ErrorCode::GenericityFailure:
    case ErrorCode::SingularMatrix:
    case ErrorCode::AllMinorsZero:
    case ErrorCode::EmptyCriticalDegree:
    case ErrorCode::ZeroPolynomial:
      return 2;
    case ErrorCode::Unsupported:
    case ErrorCode::UnsupportedFaceConfiguration:
    case ErrorCode::InfiniteIndex:
      return 3;
    default:
      return 1;
  }
}

}  // namespace tres
