#ifndef TRES_PARSER_HPP
#define TRES_PARSER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tres/polynomial.hpp"
#include "tres/polytope.hpp"

namespace tres {

/// Parsed `query` statement: which command to run and on which definitions.
struct QuerySpec {
  std::string command;  ///< e.g. "resultant", "facet-resultants", "residue"
  /// Lattice exponent of the residue monomial (`m=(3,3)` or `t^(3,3)`).
  std::optional<LatticePoint> monomial;
  /// Numerator symbol for `toric-residue <name> of (...)`.
  std::string numerator;
  /// Names listed in `of (...)`, in order.
  std::vector<std::string> args;
  /// Optional `with k=(...)` scaling clause.
  std::optional<std::vector<Int>> scaling;
};

/// A parsed input file: declarations, definitions and at most one query.
/// The ring holds the torus variables first (declaration order) and then the
/// symbolic parameters (declaration order); value-bound parameters are
/// substituted during parsing and do not become ring variables.
struct SystemSpec {
  RingPtr ring;
  std::vector<std::string> torus_names;
  std::vector<std::size_t> torus_vars;  ///< indices into the ring, 0..n-1
  std::vector<std::string> param_names;
  std::vector<std::pair<std::string, BigRational>> param_values;
  std::vector<std::string> poly_names;  ///< definition order
  std::map<std::string, Poly> polys;
  /// Explicit Newton polytopes by polynomial name (else derived from the
  /// support).  Parsing checks support ⊆ polytope.
  std::map<std::string, LatticePolytope> polytopes;
  std::optional<QuerySpec> query;
};

/// Parses a full input file.  Throws Error with SyntaxError (carrying
/// line/column in the message), UndeclaredSymbol or DuplicateDefinition.
SystemSpec parse_input(const std::string& text);

/// Parses a single polynomial expression over an existing ring.
Poly parse_polynomial(const std::string& text, const RingPtr& ring);

/// Canonical text form: fixed term order, explicit signs, `*` between
/// factors, no unit coefficients.  parse_polynomial(format_polynomial(p))
/// returns p.
std::string format_polynomial(const Poly& p);

/// Canonical text of the whole system; parse_input(format_system(s)) yields
/// a SystemSpec that formats to the same text.
std::string format_system(const SystemSpec& s);

}  // namespace tres

#endif  // TRES_PARSER_HPP
