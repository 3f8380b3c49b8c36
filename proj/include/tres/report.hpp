#ifndef TRES_REPORT_HPP
#define TRES_REPORT_HPP

#include <cstdint>
#include <string>

#include "json.hpp"
#include "tres/polytope.hpp"
#include "tres/ratfunc.hpp"

namespace tres {

/// Outcome of one CLI query.  `result` and `certificates` follow the
/// documented schema (docs/report-schema.md).  Timing is carried separately
/// and reported on standard error only, so reports are byte-reproducible.
struct Report {
  std::string command;
  std::string mode;  ///< "symbolic" or "numeric"
  std::uint64_t seed = 0;
  std::string echo_input;  ///< canonical system text (re-parses exactly)
  nlohmann::json result = nlohmann::json::object();
  nlohmann::json certificates = nlohmann::json::object();
  double parse_ms = 0.0;    ///< diagnostics only, never serialized
  double compute_ms = 0.0;  ///< diagnostics only, never serialized

  /// Stable JSON document (schema_version 1).
  nlohmann::json to_json() const;

  /// Human-readable rendering of the same content.
  std::string to_text() const;
};

/// {"text": canonical form, "terms": [{"coeff": "p/q", "exponents": {...}}]}
nlohmann::json poly_to_json(const Poly& p);

/// {"text": ..., "num": poly, "den": poly}
nlohmann::json ratfunc_to_json(const RationalFunction& v);

/// {"vertices": [[..]], "facets": [{"normal": [..], "offset": ..}], ...}
nlohmann::json polytope_to_json(const LatticePolytope& P);

/// Rebuilds a polynomial from its JSON term list over `ring`; used to check
/// that the canonical text and the structured form agree.
Poly poly_from_json(const nlohmann::json& j, const RingPtr& ring);

}  // namespace tres

#endif  // TRES_REPORT_HPP
