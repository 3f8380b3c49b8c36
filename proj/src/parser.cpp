#include "tres/parser.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "tres/error.hpp"

namespace tres {

namespace {

enum class Tok {
  Ident,
  Integer,
  Punct,  ///< one of ; , = ( ) { } + - * ^ /
  DotDot,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void error_at(const Token& t, const std::string& what) const {
    std::ostringstream os;
    os << "line " << t.line << ", column " << t.col << ": " << what;
    if (t.kind == Tok::End)
      os << " (found end of input)";
    else
      os << " (found '" << t.text << "')";
    fail(ErrorCode::SyntaxError, os.str());
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= text_.size()) {
      cur_.kind = Tok::End;
      cur_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      cur_.kind = Tok::Ident;
      cur_.text = text_.substr(start, pos_ - start);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      cur_.kind = Tok::Integer;
      cur_.text = text_.substr(start, pos_ - start);
    } else if (c == '.' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
      cur_.kind = Tok::DotDot;
      cur_.text = "..";
      pos_ += 2;
      col_ += 2;
      return;
    } else if (std::string(";,=(){}+-*^/").find(c) != std::string::npos) {
      cur_.kind = Tok::Punct;
      cur_.text = std::string(1, c);
      ++pos_;
    } else {
      cur_.kind = Tok::Punct;
      cur_.text = std::string(1, c);
      error_at(cur_, "unexpected character");
    }
    col_ += static_cast<int>(cur_.text.size());
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

std::int64_t small_integer(Lexer& lx, const Token& t) {
  if (t.text.size() > 9) lx.error_at(t, "integer literal too large");
  return std::stoll(t.text);
}

/// Expression parser over a fixed ring plus value-bound parameter table.
class ExprParser {
 public:
  ExprParser(Lexer& lx, const RingPtr& ring,
             const std::vector<std::pair<std::string, BigRational>>* values)
      : lx_(lx), ring_(ring), values_(values) {}

  Poly parse_expr() {
    bool negate = accept_punct("-");
    Poly acc = parse_term();
    if (negate) acc = -acc;
    while (true) {
      if (accept_punct("+")) {
        acc = acc + parse_term();
      } else if (accept_punct("-")) {
        acc = acc - parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

 private:
  Poly parse_term() {
    Poly acc = parse_factor();
    while (true) {
      if (accept_punct("*")) {
        acc = acc * parse_factor();
        continue;
      }
      // `a0 t1` (juxtaposition): an operand straight after a factor means a
      // missing `*`; report at the operand's position.
      const Token& t = lx_.peek();
      if (t.kind == Tok::Ident || t.kind == Tok::Integer ||
          (t.kind == Tok::Punct && t.text == "("))
        lx_.error_at(t, "expected an operator between factors");
      break;
    }
    return acc;
  }

  Poly parse_factor() {
    Poly base = parse_base();
    if (!accept_punct("^")) return base;
    bool neg = accept_punct("-");
    Token e = lx_.peek();
    if (e.kind != Tok::Integer) lx_.error_at(e, "expected an exponent");
    lx_.take();
    std::int64_t k = small_integer(lx_, e);
    if (neg) {
      int v = single_torus_variable(base);
      if (v < 0)
        lx_.error_at(e,
                     "negative exponents are only allowed on torus variables");
      ExponentVector exp(ring_->size(), 0);
      exp[static_cast<std::size_t>(v)] = -k;
      return Poly::monomial(ring_, exp, BigRational(1));
    }
    return base.pow(static_cast<std::uint64_t>(k));
  }

  Poly parse_base() {
    Token t = lx_.peek();
    if (t.kind == Tok::Integer) {
      lx_.take();
      BigRational v{Int(t.text)};
      if (accept_punct("/")) {
        Token d = lx_.peek();
        if (d.kind != Tok::Integer) lx_.error_at(d, "expected a denominator");
        lx_.take();
        Int den(d.text);
        if (den == 0) lx_.error_at(d, "zero denominator in a rational");
        v = v / BigRational(den);
      }
      return Poly::constant(ring_, v);
    }
    if (t.kind == Tok::Ident) {
      lx_.take();
      if (values_) {
        for (const auto& [name, val] : *values_)
          if (name == t.text) return Poly::constant(ring_, val);
      }
      int v = ring_->find(t.text);
      if (v < 0)
        fail(ErrorCode::UndeclaredSymbol,
             "line " + std::to_string(t.line) + ", column " +
                 std::to_string(t.col) + ": '" + t.text + "' is not declared");
      return Poly::variable(ring_, static_cast<std::size_t>(v));
    }
    if (t.kind == Tok::Punct && t.text == "(") {
      lx_.take();
      Poly inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    lx_.error_at(t, "expected a number, a symbol or '('");
  }

  /// Ring index when p is exactly one torus variable (coefficient 1).
  int single_torus_variable(const Poly& p) const {
    if (!p.is_monomial()) return -1;
    const Term& t = p.leading_term();
    if (!(t.coeff == 1)) return -1;
    int found = -1;
    for (std::size_t v = 0; v < t.exp.size(); ++v) {
      if (t.exp[v] == 0) continue;
      if (found >= 0 || t.exp[v] != 1) return -1;
      if (ring_->kind(v) != VarKind::Torus) return -1;
      found = static_cast<int>(v);
    }
    return found;
  }

  bool accept_punct(const std::string& s) {
    const Token& t = lx_.peek();
    if (t.kind == Tok::Punct && t.text == s) {
      lx_.take();
      return true;
    }
    return false;
  }

  void expect_punct(const std::string& s) {
    const Token& t = lx_.peek();
    if (!(t.kind == Tok::Punct && t.text == s))
      lx_.error_at(t, "expected '" + s + "'");
    lx_.take();
  }

  Lexer& lx_;
  const RingPtr& ring_;
  const std::vector<std::pair<std::string, BigRational>>* values_;
};

/// Splits `a12` into ("a", 12); no value when the name has no trailing
/// digits.
std::pair<std::string, std::optional<long>> split_numeric_suffix(
    const std::string& name) {
  std::size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  if (i == name.size() || name.size() - i > 9) return {name, std::nullopt};
  return {name.substr(0, i), std::stol(name.substr(i))};
}

/// Single pass, declarations before use: `vars`/`params` statements must
/// precede the first polynomial definition (the ring is frozen there).
class InputParser {
 public:
  explicit InputParser(const std::string& text) : lx_(text) {}

  SystemSpec run() {
    while (lx_.peek().kind != Tok::End) statement();
    check_polytopes();
    return std::move(spec_);
  }

 private:
  void statement() {
    Token t = lx_.peek();
    if (t.kind != Tok::Ident) lx_.error_at(t, "expected a statement");
    if (t.text == "vars") {
      lx_.take();
      require_open(t, "variable");
      parse_vars();
    } else if (t.text == "params") {
      lx_.take();
      require_open(t, "parameter");
      parse_params();
    } else if (t.text == "polytope") {
      lx_.take();
      parse_polytope();
    } else if (t.text == "query") {
      lx_.take();
      parse_query();
    } else {
      parse_definition();
    }
  }

  void require_open(const Token& t, const std::string& what) {
    if (spec_.ring)
      lx_.error_at(t, what +
                          " declarations must precede the first polynomial "
                          "definition");
  }

  void parse_vars() {
    do {
      Token t = expect_ident("a variable name");
      declare_fresh(t);
      spec_.torus_names.push_back(t.text);
    } while (accept_punct(","));
    expect_punct(";");
  }

  void parse_params() {
    do {
      Token first = expect_ident("a parameter name");
      if (lx_.peek().kind == Tok::DotDot) {
        lx_.take();
        Token last = expect_ident("the end of the parameter range");
        expand_range(first, last);
      } else if (accept_punct("=")) {
        BigRational v = parse_rational();
        declare_fresh(first);
        spec_.param_values.emplace_back(first.text, v);
      } else {
        declare_fresh(first);
        spec_.param_names.push_back(first.text);
      }
    } while (accept_punct(","));
    expect_punct(";");
  }

  void expand_range(const Token& first, const Token& last) {
    auto [p1, n1] = split_numeric_suffix(first.text);
    auto [p2, n2] = split_numeric_suffix(last.text);
    if (!n1 || !n2 || p1 != p2 || *n2 < *n1)
      lx_.error_at(last, "range ends must share a prefix, e.g. a0..a5");
    for (long i = *n1; i <= *n2; ++i) {
      Token t = first;
      t.text = p1 + std::to_string(i);
      declare_fresh(t);
      spec_.param_names.push_back(t.text);
    }
  }

  void parse_polytope() {
    Token name = expect_ident("a polynomial name");
    expect_punct("=");
    expect_punct("{");
    std::vector<LatticePoint> pts;
    do {
      pts.push_back(parse_lattice_point());
    } while (accept_punct(","));
    expect_punct("}");
    expect_punct(";");
    if (spec_.polytopes.count(name.text))
      fail(ErrorCode::DuplicateDefinition,
           "polytope for '" + name.text + "' given twice");
    spec_.polytopes.emplace(name.text, convex_hull(pts));
  }

  void parse_definition() {
    Token name = expect_ident("a statement");
    declare_fresh(name);
    expect_punct("=");
    ensure_ring(name);
    ExprParser ep(lx_, spec_.ring, &spec_.param_values);
    Poly p = ep.parse_expr();
    expect_punct(";");
    spec_.poly_names.push_back(name.text);
    spec_.polys.emplace(name.text, std::move(p));
  }

  void parse_query() {
    if (spec_.query)
      fail(ErrorCode::DuplicateDefinition, "more than one query statement");
    ensure_ring(lx_.peek());
    QuerySpec q;
    q.command = hyphenated_ident("a command name");
    if (q.command == "residue" || q.command == "global-residue") {
      q.command = "global-residue";
      q.monomial = parse_monomial_spec();
    } else if (q.command == "toric-residue") {
      Token h = expect_ident("the numerator name");
      q.numerator = h.text;
      query_names_.push_back(h.text);
    }
    expect_keyword("of");
    expect_punct("(");
    do {
      Token t = expect_ident("a polynomial name");
      q.args.push_back(t.text);
      query_names_.push_back(t.text);
    } while (accept_punct(","));
    expect_punct(")");
    if (lx_.peek().kind == Tok::Ident && lx_.peek().text == "with") {
      lx_.take();
      Token k = expect_ident("'k'");
      if (k.text != "k") lx_.error_at(k, "expected 'k'");
      expect_punct("=");
      expect_punct("(");
      std::vector<Int> ks;
      do {
        ks.push_back(parse_integer());
      } while (accept_punct(","));
      expect_punct(")");
      q.scaling = std::move(ks);
    }
    expect_punct(";");
    spec_.query = std::move(q);
  }

  /// `m=(3,3)` or `t^(3,3)`.
  LatticePoint parse_monomial_spec() {
    Token t = expect_ident("'m' or 't'");
    if (t.text == "m") {
      expect_punct("=");
    } else if (t.text == "t") {
      expect_punct("^");
    } else {
      lx_.error_at(t, "expected 'm=(...)' or 't^(...)'");
    }
    return parse_lattice_point();
  }

  LatticePoint parse_lattice_point() {
    expect_punct("(");
    LatticePoint p;
    do {
      p.push_back(parse_integer());
    } while (accept_punct(","));
    expect_punct(")");
    return p;
  }

  Int parse_integer() {
    bool neg = accept_punct("-");
    Token t = lx_.peek();
    if (t.kind != Tok::Integer) lx_.error_at(t, "expected an integer");
    lx_.take();
    Int v(t.text);
    return neg ? Int(-v) : v;
  }

  BigRational parse_rational() {
    bool neg = accept_punct("-");
    Token t = lx_.peek();
    if (t.kind != Tok::Integer) lx_.error_at(t, "expected a number");
    lx_.take();
    BigRational v{Int(t.text)};
    if (accept_punct("/")) {
      Token d = lx_.peek();
      if (d.kind != Tok::Integer) lx_.error_at(d, "expected a denominator");
      lx_.take();
      Int den(d.text);
      if (den == 0) lx_.error_at(d, "zero denominator in a rational");
      v = v / BigRational(den);
    }
    return neg ? -v : v;
  }

  std::string hyphenated_ident(const std::string& what) {
    Token t = expect_ident(what);
    std::string s = t.text;
    while (lx_.peek().kind == Tok::Punct && lx_.peek().text == "-") {
      lx_.take();
      Token part = expect_ident("the rest of the command name");
      s += "-" + part.text;
    }
    return s;
  }

  void declare_fresh(const Token& t) {
    if (!declared_.insert(t.text).second)
      fail(ErrorCode::DuplicateDefinition,
           "line " + std::to_string(t.line) + ", column " +
               std::to_string(t.col) + ": '" + t.text + "' declared twice");
  }

  void ensure_ring(const Token& at) {
    if (spec_.ring) return;
    std::vector<std::string> names = spec_.torus_names;
    std::vector<VarKind> kinds(names.size(), VarKind::Torus);
    for (const std::string& p : spec_.param_names) {
      names.push_back(p);
      kinds.push_back(VarKind::Param);
    }
    if (names.empty())
      lx_.error_at(at, "no variables or parameters declared yet");
    spec_.ring = make_ring(std::move(names), std::move(kinds));
    for (std::size_t i = 0; i < spec_.torus_names.size(); ++i)
      spec_.torus_vars.push_back(i);
  }

  void check_polytopes() {
    for (const auto& [name, P] : spec_.polytopes) {
      auto it = spec_.polys.find(name);
      if (it == spec_.polys.end())
        fail(ErrorCode::UndeclaredSymbol,
             "polytope names the undefined polynomial '" + name + "'");
      for (const Term& t : it->second.terms()) {
        LatticePoint m;
        for (std::size_t v : spec_.torus_vars) m.push_back(Int(t.exp[v]));
        if (!P.contains(m))
          fail(ErrorCode::SupportOutsidePolytope,
               "the support of '" + name + "' leaves its declared polytope");
      }
    }
    for (const std::string& n : query_names_)
      if (!spec_.polys.count(n))
        fail(ErrorCode::UndeclaredSymbol,
             "query references the undefined polynomial '" + n + "'");
  }

  Token expect_ident(const std::string& what) {
    Token t = lx_.peek();
    if (t.kind != Tok::Ident) lx_.error_at(t, "expected " + what);
    return lx_.take();
  }

  void expect_keyword(const std::string& kw) {
    Token t = lx_.peek();
    if (!(t.kind == Tok::Ident && t.text == kw))
      lx_.error_at(t, "expected '" + kw + "'");
    lx_.take();
  }

  bool accept_punct(const std::string& s) {
    const Token& t = lx_.peek();
    if (t.kind == Tok::Punct && t.text == s) {
      lx_.take();
      return true;
    }
    return false;
  }

  void expect_punct(const std::string& s) {
    const Token& t = lx_.peek();
    if (!(t.kind == Tok::Punct && t.text == s))
      lx_.error_at(t, "expected '" + s + "'");
    lx_.take();
  }

  Lexer lx_;
  SystemSpec spec_;
  std::set<std::string> declared_;
  std::vector<std::string> query_names_;
};

}  // namespace

SystemSpec parse_input(const std::string& text) {
  return InputParser(text).run();
}

Poly parse_polynomial(const std::string& text, const RingPtr& ring) {
  Lexer lx(text);
  ExprParser ep(lx, ring, nullptr);
  Poly p = ep.parse_expr();
  if (lx.peek().kind != Tok::End)
    lx.error_at(lx.peek(), "unexpected input after the expression");
  return p;
}

std::string format_polynomial(const Poly& p) { return p.to_string(); }

std::string format_system(const SystemSpec& s) {
  std::ostringstream os;
  if (!s.torus_names.empty()) {
    os << "vars ";
    for (std::size_t i = 0; i < s.torus_names.size(); ++i)
      os << (i ? ", " : "") << s.torus_names[i];
    os << ";\n";
  }
  if (!s.param_names.empty() || !s.param_values.empty()) {
    os << "params ";
    bool first = true;
    for (const std::string& p : s.param_names) {
      os << (first ? "" : ", ") << p;
      first = false;
    }
    for (const auto& [name, v] : s.param_values) {
      os << (first ? "" : ", ") << name << " = " << to_string(v);
      first = false;
    }
    os << ";\n";
  }
  for (const std::string& name : s.poly_names)
    os << name << " = " << format_polynomial(s.polys.at(name)) << ";\n";
  for (const auto& [name, P] : s.polytopes) {
    os << "polytope " << name << " = {";
    const auto& vs = P.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      os << (i ? ", " : "") << "(";
      for (std::size_t j = 0; j < vs[i].size(); ++j)
        os << (j ? ", " : "") << vs[i][j].get_str();
      os << ")";
    }
    os << "};\n";
  }
  if (s.query) {
    const QuerySpec& q = *s.query;
    os << "query " << q.command;
    if (q.monomial) {
      os << " m=(";
      for (std::size_t i = 0; i < q.monomial->size(); ++i)
        os << (i ? ", " : "") << (*q.monomial)[i].get_str();
      os << ")";
    }
    if (!q.numerator.empty()) os << " " << q.numerator;
    os << " of (";
    for (std::size_t i = 0; i < q.args.size(); ++i)
      os << (i ? ", " : "") << q.args[i];
    os << ")";
    if (q.scaling) {
      os << " with k=(";
      for (std::size_t i = 0; i < q.scaling->size(); ++i)
        os << (i ? ", " : "") << (*q.scaling)[i].get_str();
      os << ")";
    }
    os << ";\n";
  }
  return os.str();
}

}  // namespace tres
