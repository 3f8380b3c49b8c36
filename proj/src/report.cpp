#include "tres/report.hpp"

#include <algorithm>
#include <sstream>

#include "tres/error.hpp"
#include "tres/parser.hpp"

namespace tres {

nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  const RingPtr& R = p.ring();
  for (const Term& t : p.terms()) {
    nlohmann::json exps = nlohmann::json::object();
    for (std::size_t v = 0; v < t.exp.size(); ++v)
      if (t.exp[v] != 0) exps[R->name(v)] = t.exp[v];
    terms.push_back({{"coeff", to_string(t.coeff)}, {"exponents", exps}});
  }
  return {{"text", format_polynomial(p)}, {"terms", terms}};
}

nlohmann::json ratfunc_to_json(const RationalFunction& v) {
  return {{"text", v.to_string()},
          {"num", poly_to_json(v.num())},
          {"den", poly_to_json(v.den())}};
}

nlohmann::json polytope_to_json(const LatticePolytope& P) {
  nlohmann::json verts = nlohmann::json::array();
  for (const LatticePoint& v : P.vertices()) {
    nlohmann::json row = nlohmann::json::array();
    for (const Int& c : v) row.push_back(c.get_str());
    verts.push_back(row);
  }
  nlohmann::json facets = nlohmann::json::array();
  for (const HalfSpace& h : P.facets()) {
    nlohmann::json normal = nlohmann::json::array();
    for (const Int& c : h.normal) normal.push_back(c.get_str());
    facets.push_back({{"normal", normal}, {"offset", h.offset.get_str()}});
  }
  return {{"dim", P.dim()}, {"vertices", verts}, {"facets", facets}};
}

Poly poly_from_json(const nlohmann::json& j, const RingPtr& ring) {
  std::vector<Term> terms;
  for (const nlohmann::json& t : j.at("terms")) {
    ExponentVector exp(ring->size(), 0);
    for (const auto& [name, e] : t.at("exponents").items()) {
      int v = ring->find(name);
      if (v < 0)
        fail(ErrorCode::UndeclaredSymbol,
             "term references the unknown symbol '" + name + "'");
      exp[static_cast<std::size_t>(v)] = e.get<std::int64_t>();
    }
    std::string c = t.at("coeff").get<std::string>();
    std::size_t slash = c.find('/');
    BigRational coeff =
        slash == std::string::npos
            ? BigRational(Int(c))
            : BigRational(Int(c.substr(0, slash))) /
                  BigRational(Int(c.substr(slash + 1)));
    terms.push_back({std::move(exp), coeff});
  }
  return Poly::from_terms(ring, std::move(terms));
}

nlohmann::json Report::to_json() const {
  return {{"tool", "tres"},
          {"schema_version", 1},
          {"command", command},
          {"mode", mode},
          {"seed", seed},
          {"echo", {{"input", echo_input}}},
          {"result", result},
          {"certificates", certificates}};
}

namespace {

/// Indented human rendering: objects become `key: value` lines, arrays get
/// one line per element; an object carrying a "text" key prints that text
/// alone (polynomials, rational functions).
void render(std::ostream& os, const nlohmann::json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    if (j.contains("text")) {
      os << j.at("text").get<std::string>();
      return;
    }
    os << "\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) os << "\n";
      first = false;
      os << pad << key << ": ";
      render(os, value, indent + 1);
    }
    return;
  }
  if (j.is_array()) {
    bool scalars = true;
    for (const nlohmann::json& e : j)
      scalars = scalars && (e.is_primitive() ||
                            (e.is_array() && e.size() <= 4 &&
                             std::all_of(e.begin(), e.end(),
                                         [](const nlohmann::json& x) {
                                           return x.is_primitive();
                                         })));
    if (j.empty()) {
      os << "[]";
      return;
    }
    if (scalars) {
      os << nlohmann::json(j).dump();
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << "\n" << pad << "- ";
      render(os, j[i], indent + 1);
    }
    return;
  }
  if (j.is_string())
    os << j.get<std::string>();
  else
    os << j.dump();
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  os << "mode: " << mode << "\n";
  os << "seed: " << seed << "\n";
  os << "result:";
  render(os, result, 1);
  os << "\n";
  if (!certificates.empty()) {
    os << "certificates:";
    render(os, certificates, 1);
    os << "\n";
  }
  return os.str();
}

}  // namespace tres
