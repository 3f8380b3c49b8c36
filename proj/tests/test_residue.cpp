#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "tres/error.hpp"
#include "tres/gcd.hpp"
#include "tres/oracle.hpp"
#include "tres/residue.hpp"
#include "tres/resultant.hpp"
#include "tres/rng.hpp"

using namespace tres;

namespace {

LatticePoint pt(std::initializer_list<long> cs) {
  LatticePoint p;
  for (long c : cs) p.push_back(Int(c));
  return p;
}

RingPtr base_ring(std::vector<std::string> torus,
                  std::vector<std::string> params) {
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (auto& t : torus) {
    names.push_back(std::move(t));
    kinds.push_back(VarKind::Torus);
  }
  for (auto& p : params) {
    names.push_back(std::move(p));
    kinds.push_back(VarKind::Param);
  }
  return make_ring(std::move(names), std::move(kinds));
}

Poly var(const RingPtr& R, const std::string& name) {
  int i = R->find(name);
  REQUIRE(i >= 0);
  return Poly::variable(R, static_cast<std::size_t>(i));
}

Poly mono(const RingPtr& R, std::initializer_list<long> torus_exps) {
  ExponentVector e(R->size(), 0);
  std::size_t i = 0;
  for (long c : torus_exps) e[i++] = c;
  return Poly::monomial(R, e, BigRational(1));
}

LatticePolytope unit_simplex() {
  return convex_hull({pt({0, 0}), pt({1, 0}), pt({0, 1})});
}

LatticePolytope doubled_simplex() {
  return convex_hull({pt({0, 0}), pt({2, 0}), pt({0, 2})});
}

LatticePolytope scroll_quadrangle() {
  return convex_hull({pt({0, 0}), pt({1, 0}), pt({2, 0}), pt({3, 0}),
                      pt({0, 1}), pt({1, 1})});
}

RingPtr conic_ring() {
  return base_ring({"t1", "t2"},
                   {"a0", "a1", "a2", "a3", "a4", "a5", "b0", "b1", "b2", "b3",
                    "b4", "b5"});
}

Poly conic(const RingPtr& R, const std::string& prefix) {
  auto c = [&](int i) { return var(R, prefix + std::to_string(i)); };
  return c(0) * mono(R, {2, 0}) + c(1) * mono(R, {1, 1}) +
         c(2) * mono(R, {0, 2}) + c(3) * mono(R, {1, 0}) +
         c(4) * mono(R, {0, 1}) + c(5);
}

/// Resultant of two generic quadratics (p0, p1, p2), (q0, q1, q2).
Poly quadratic_pair_resultant(const Poly& p0, const Poly& p1, const Poly& p2,
                              const Poly& q0, const Poly& q1, const Poly& q2) {
  Poly d02 = p0 * q2 - p2 * q0;
  return d02 * d02 - (p0 * q1 - p1 * q0) * (p1 * q2 - p2 * q1);
}

/// The 20-term numerator of the residue of t1^3 t2^2 for two generic conics.
Poly conic_p32(const RingPtr& R) {
  auto a = [&](int i) { return var(R, "a" + std::to_string(i)); };
  auto b = [&](int i) { return var(R, "b" + std::to_string(i)); };
  auto c = [&](long v) { return Poly::constant(R, BigRational(v)); };
  return a(0) * a(0) * a(1) * b(2) * b(2) * b(4)                  //
         - c(2) * a(0) * a(0) * a(2) * b(1) * b(2) * b(4)         //
         + a(0) * a(0) * a(2) * b(2) * b(2) * b(3)                //
         - a(0) * a(0) * a(3) * b(2) * b(2) * b(2)                //
         + a(0) * a(0) * a(4) * b(1) * b(2) * b(2)                //
         - a(0) * a(1) * a(1) * b(2) * b(2) * b(3)                //
         + c(2) * a(0) * a(1) * a(2) * b(1) * b(2) * b(3)         //
         - c(2) * a(0) * a(1) * a(4) * b(0) * b(2) * b(2)         //
         + c(2) * a(0) * a(2) * a(2) * b(0) * b(1) * b(4)         //
         - c(2) * a(0) * a(2) * a(2) * b(0) * b(2) * b(3)         //
         - a(0) * a(2) * a(2) * b(1) * b(1) * b(3)                //
         + c(2) * a(0) * a(2) * a(3) * b(0) * b(2) * b(2)         //
         + a(1) * a(1) * a(3) * b(0) * b(2) * b(2)                //
         - a(1) * a(2) * a(2) * b(0) * b(0) * b(4)                //
         - c(2) * a(1) * a(2) * a(3) * b(0) * b(1) * b(2)         //
         + c(2) * a(1) * a(2) * a(4) * b(0) * b(0) * b(2)         //
         + a(2) * a(2) * a(2) * b(0) * b(0) * b(3)                //
         - a(2) * a(2) * a(3) * b(0) * b(0) * b(2)                //
         + a(2) * a(2) * a(3) * b(0) * b(1) * b(1)                //
         - a(2) * a(2) * a(4) * b(0) * b(0) * b(1);
}

/// t1 t2 (d1 f1 d2 f2 - d2 f1 d1 f2), written with logarithmic derivatives.
Poly toric_jacobian2(const Poly& f1, const Poly& f2) {
  return f1.log_derivative(0) * f2.log_derivative(1) -
         f1.log_derivative(1) * f2.log_derivative(0);
}

/// Random integer system with full support on each k_i P.
std::vector<Poly> random_full_system(const RingPtr& R,
                                     const LatticePolytope& P,
                                     const std::vector<Int>& k, Rng& rng) {
  std::vector<Poly> out;
  for (const Int& ki : k) {
    std::vector<Term> terms;
    for (const LatticePoint& m : scaled_lattice_points(P, ki)) {
      ExponentVector e(R->size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) e[i] = to_long(m[i]);
      terms.push_back({e, BigRational(rng.nonzero(50))});
    }
    out.push_back(Poly::from_terms(R, std::move(terms)));
  }
  return out;
}

std::map<std::size_t, BigRational> random_param_values(const RingPtr& R,
                                                       Rng& rng) {
  std::map<std::size_t, BigRational> vals;
  for (std::size_t i = 0; i < R->size(); ++i)
    if (R->kind(i) == VarKind::Param) vals[i] = BigRational(rng.nonzero(40));
  return vals;
}

std::vector<BigRational> as_point(const RingPtr& R,
                                  const std::map<std::size_t, BigRational>& v) {
  std::vector<BigRational> point(R->size(), BigRational(1));
  for (const auto& [i, val] : v) point[i] = val;
  return point;
}

}  // namespace

TEST_CASE("residue of the Jacobian form is the normalized volume") {
  RingPtr R = base_ring({"t1", "t2"}, {});
  Rng rng(77);
  struct Case {
    LatticePolytope P;
    long vol_factor;  // 2! * vol(P)
  };
  std::vector<Case> cases = {{unit_simplex(), 1},
                             {doubled_simplex(), 4},
                             {scroll_quadrangle(), 4}};
  for (const Case& cs : cases) {
    for (const std::vector<Int>& k :
         {std::vector<Int>{Int(1), Int(1), Int(1)},
          std::vector<Int>{Int(2), Int(1), Int(1)}}) {
      Int expected = residue_normalization(cs.P, k);
      CHECK(expected == Int(cs.vol_factor) * k[0] * k[1] * k[2]);
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<Poly> f = random_full_system(R, cs.P, k, rng);
        PhiMatrix M = build_phi(cs.P, k, f, {0, 1});
        RationalFunction res = toric_residue(M, M.jacobian);
        CHECK(res == RationalFunction(
                         Poly::constant(M.entries.ring(), BigRational(expected))));
      }
    }
  }
}

TEST_CASE("toric residue is linear and kills the ideal") {
  RingPtr R = base_ring({"t1", "t2"}, {});
  Rng rng(1234);
  LatticePolytope P = doubled_simplex();
  std::vector<Int> k{Int(1), Int(1), Int(1)};
  std::vector<Poly> f = random_full_system(R, P, k, rng);
  PhiMatrix M = build_phi(P, k, f, {0, 1});
  const RingPtr& total = M.jacobian.ring();

  // Elements of the ideal in the critical degree have residue zero.
  for (std::size_t block = 0; block < 3; ++block) {
    std::vector<Term> terms;
    for (const PhiColumn& col : M.layout.columns) {
      if (col.kind != PhiColumn::Kind::Multiplier || col.block != block)
        continue;
      terms.push_back({col.exps, BigRational(rng.nonzero(30))});
    }
    Poly lambda = Poly::from_terms(total, std::move(terms));
    RationalFunction res = toric_residue(M, lambda * M.F[block]);
    CHECK(res.is_zero());
  }

  // Linearity over the row monomials.
  Poly h1 = Poly::monomial(total, M.layout.rows[2].exps);
  Poly h2 = Poly::monomial(total, M.layout.rows[7].exps);
  BigRational c1(3), c2(BigRational(-5) / BigRational(2));
  RationalFunction lhs = toric_residue(M, c1 * h1 + c2 * h2);
  RationalFunction rhs =
      RationalFunction(Poly::constant(M.entries.ring(), c1)) *
          toric_residue(M, h1) +
      RationalFunction(Poly::constant(M.entries.ring(), c2)) *
          toric_residue(M, h2);
  CHECK(lhs == rhs);

  // Adding an ideal element does not change the residue.
  Poly shift = Poly::monomial(total, M.layout.columns[4].exps);
  CHECK(toric_residue(M, h1 + shift * M.F[1]) == toric_residue(M, h1));
}

TEST_CASE("univariate symbolic residues match the trace oracle") {
  RingPtr R = base_ring({"t"}, {"a0", "a1", "a2"});
  Poly f = var(R, "a0") + var(R, "a1") * mono(R, {1}) +
           var(R, "a2") * mono(R, {2});
  UnmixedResidueTable table({f}, {0});

  for (long m = -3; m <= 5; ++m) {
    RationalFunction got = table.residue(pt({m}));
    RationalFunction want = univariate_residue_oracle(f, 0, Int(m));
    CHECK(got == want);

    ResidueValue rv = table.residue_value(pt({m}));
    CHECK(rv.value == got);
    std::vector<std::pair<LatticePoint, Int>> expect;
    if (m - 1 > 0) expect.emplace_back(pt({-1}), Int(m - 1));
    if (1 - m > 0) expect.emplace_back(pt({1}), Int(1 - m));
    CHECK(rv.denominator == expect);
  }

  // Spot value: residue of t^2 for a quadratic is 1/a2.
  CHECK(table.residue(pt({2})) ==
        RationalFunction(Poly::constant(R, BigRational(1)), var(R, "a2")));
}

TEST_CASE("conic residue reproduces the closed-form rational function") {
  RingPtr R = conic_ring();
  Poly f1 = conic(R, "a"), f2 = conic(R, "b");
  UnmixedResidueTable table({f1, f2}, {0, 1});

  auto a = [&](int i) { return var(R, "a" + std::to_string(i)); };
  auto b = [&](int i) { return var(R, "b" + std::to_string(i)); };
  Poly rinf = quadratic_pair_resultant(a(0), a(1), a(2), b(0), b(1), b(2));

  ResidueValue rv = table.residue_value(pt({3, 2}));
  CHECK(rv.value == RationalFunction(conic_p32(R), rinf * rinf));
  REQUIRE(rv.denominator.size() == 1);
  CHECK(rv.denominator[0].first == pt({-1, -1}));
  CHECK(rv.denominator[0].second == Int(2));
  CHECK(rv.certified);

  // The numerator produced by the reduction matches the closed form up to
  // the shared normalization of the facet resultant.
  RationalFunction rebuilt(rv.numerator,
                           table.facet_set().by_normal(pt({-1, -1})).resultant *
                               table.facet_set().by_normal(pt({-1, -1})).resultant);
  CHECK(rebuilt == rv.value);
}

TEST_CASE("conic residues across the monomial grid") {
  RingPtr R = conic_ring();
  Poly f1 = conic(R, "a"), f2 = conic(R, "b");
  UnmixedResidueTable table({f1, f2}, {0, 1});

  auto a = [&](int i) { return var(R, "a" + std::to_string(i)); };
  auto b = [&](int i) { return var(R, "b" + std::to_string(i)); };
  Poly rx = quadratic_pair_resultant(a(0), a(3), a(5), b(0), b(3), b(5));
  Poly ry = quadratic_pair_resultant(a(2), a(4), a(5), b(2), b(4), b(5));

  SUBCASE("poles of the constant monomial sit on the axis facets") {
    ResidueValue rv = table.residue_value(pt({0, 0}));
    REQUIRE(rv.denominator.size() == 2);
    CHECK(rv.denominator[0].first == pt({0, 1}));
    CHECK(rv.denominator[0].second == Int(1));
    CHECK(rv.denominator[1].first == pt({1, 0}));
    CHECK(rv.denominator[1].second == Int(1));
    CHECK(divides(rx, rv.value.den()));
    CHECK(divides(ry, rv.value.den()));
  }

  SUBCASE("interior monomials have residue zero") {
    CHECK(table.residue(pt({1, 1})).is_zero());
    CHECK(table.residue(pt({2, 1})).is_zero());
    CHECK(table.residue(pt({1, 2})).is_zero());
  }

  SUBCASE("raised levels stay within the infinity-facet bound") {
    ResidueValue rv = table.residue_value(pt({4, 4}));
    REQUIRE(rv.denominator.size() == 1);
    CHECK(rv.denominator[0].first == pt({-1, -1}));
    CHECK(rv.denominator[0].second >= Int(3));
    CHECK(rv.denominator[0].second <= Int(5));
  }

  SUBCASE("residues annihilate the ideal across raised levels") {
    // residue_of(t^w * f1) = sum_p coeff_p(f1) * residue(w + p) = 0,
    // pulling in raised values.
    Poly q = mono(R, {2, 2}) * f1;
    CHECK(table.residue_of(q).is_zero());
  }
}

TEST_CASE("mixed pentagon residue matches the closed form") {
  auto R = base_ring({"t1", "t2"}, {"a0", "a1", "a2", "b0", "b1", "b2"});
  auto a = [&](int i) { return var(R, "a" + std::to_string(i)); };
  auto b = [&](int i) { return var(R, "b" + std::to_string(i)); };
  Poly f1 = a(0) * mono(R, {1, 0}) + a(1) * mono(R, {1, 1}) +
            a(2) * mono(R, {0, 2});
  Poly f2 = b(0) * mono(R, {0, 1}) + b(1) * mono(R, {1, 1}) +
            b(2) * mono(R, {2, 0});
  Poly golden_num = a(0) * a(1) * a(2) * b(0) * b(1) * b(2) +
                    a(0) * a(2) * a(2) * b(0) * b(2) * b(2) -
                    a(1) * a(1) * a(1) * b(0) * b(0) * b(2) -
                    a(0) * a(0) * a(2) * b(1) * b(1) * b(1);
  Poly core = a(1) * b(1) - a(2) * b(2);
  Poly golden_den = a(2) * b(2) * core * core * core;

  SUBCASE("numeric specializations agree with the golden value") {
    Rng rng(5);
    for (int trial = 0; trial < 3; ++trial) {
      auto vals = random_param_values(R, rng);
      auto point = as_point(R, vals);
      if (golden_den.evaluate(point) == 0) continue;
      std::vector<Poly> fnum{f1.substitute(vals), f2.substitute(vals)};
      MixedResidueOptions opts;
      opts.seed = 91 + static_cast<std::uint64_t>(trial);
      ResidueValue rv = global_residue_mixed(fnum, {0, 1}, pt({3, 3}), opts);
      CHECK(rv.value.num().constant_value() /
                rv.value.den().constant_value() ==
            golden_num.evaluate(point) / golden_den.evaluate(point));
      CHECK(rv.certified);
    }
  }

  SUBCASE("symbolic interpolation recovers the rational function") {
    MixedResidueOptions opts;
    opts.seed = 17;
    ResidueValue rv = global_residue_mixed({f1, f2}, {0, 1}, pt({3, 3}), opts);
    CHECK(rv.value == RationalFunction(golden_num, golden_den));
    REQUIRE(rv.denominator.size() == 3);
    CHECK(rv.denominator[0].first == pt({-1, -1}));
    CHECK(rv.denominator[0].second == Int(3));
    CHECK(rv.denominator[1].first == pt({-1, 0}));
    CHECK(rv.denominator[1].second == Int(1));
    CHECK(rv.denominator[2].first == pt({0, -1}));
    CHECK(rv.denominator[2].second == Int(1));
  }
}

TEST_CASE("generic multiplier path agrees with the unmixed table") {
  RingPtr R = conic_ring();
  Rng rng(2024);
  auto vals = random_param_values(R, rng);
  std::vector<Poly> fnum{conic(R, "a").substitute(vals),
                         conic(R, "b").substitute(vals)};
  UnmixedResidueTable table(fnum, {0, 1});
  for (const LatticePoint& m : {pt({3, 2}), pt({0, 0}), pt({4, 1})}) {
    MixedResidueOptions opts;
    opts.seed = 7;
    opts.force_generic_multiplier = true;
    ResidueValue mixed = global_residue_mixed(fnum, {0, 1}, m, opts);
    CHECK(mixed.value == table.residue(m));
  }
}

TEST_CASE("degree completions are valid and completion-independent") {
  SUBCASE("completion properties on the doubled simplex") {
    LatticePolytope P = doubled_simplex();
    std::vector<Int> b{Int(2), Int(0), Int(0)};
    std::vector<Int> minus{Int(2), Int(0), Int(1)};
    Completion comp = completion_vector(P, b, minus);
    CHECK(comp.k0 >= 1);
    REQUIRE(comp.p.size() == 2);
    CHECK(P.contains(comp.p, to_long(comp.k0)));
    for (std::size_t i = 0; i < 3; ++i) {
      Int lhs(0);
      for (std::size_t d = 0; d < 2; ++d)
        lhs += comp.p[d] * P.facets()[i].normal[d];
      lhs += comp.k0 * b[i];
      CHECK(lhs == minus[i] + comp.c[i]);
      CHECK(comp.c[i] >= 0);
    }
    CompletionOptions avoid;
    avoid.avoid_index = 0;
    Completion comp0 = completion_vector(P, b, minus, avoid);
    CHECK(comp0.c[0] == Int(0));
  }

  SUBCASE("the residue does not depend on the chosen completion") {
    RingPtr R = base_ring({"t"}, {"a0", "a1", "a2"});
    Poly f = var(R, "a0") + var(R, "a1") * mono(R, {1}) +
             var(R, "a2") * mono(R, {2});
    UnmixedResidueTable table({f}, {0});
    RationalFunction base = table.residue(pt({3}));

    LatticePolytope P = convex_hull({pt({0}), pt({2})});
    std::vector<Int> b{Int(2), Int(0)};
    MuSplit ms = mu_split(pt({3}), P.facets(), {Int(2), Int(0)});
    for (Int k0 = 2; k0 <= 3; k0 += 1) {
      Completion comp = completion_vector(P, b, ms.minus, {k0, k0, {}});
      std::vector<Poly> fs{mono(R, {to_long(comp.p[0])}), f};
      PhiMatrix M = build_phi(P, {comp.k0, Int(1)}, fs, {0});
      Poly H = M.cox.homogenize(
          mono(R, {3 + to_long(comp.p[0])}),
          M.cox.beta_offsets(comp.k0 + 1, Int(-1)));
      CHECK(toric_residue(M, H) == base);
    }
  }
}

TEST_CASE("facet systems with monomial resultants give monomial denominators") {
  auto R = base_ring({"t1", "t2"}, {"a0", "a1", "a2", "b0", "b1"});
  Poly f1 = var(R, "a0") + var(R, "a1") * mono(R, {1, 0}) +
            var(R, "a2") * mono(R, {0, 1});
  Poly f2 = var(R, "b0") + var(R, "b1") * mono(R, {1, 1});

  FacetResultantSet fr = facet_resultants({f1, f2}, {0, 1});
  for (const FacetResultant& e : fr.entries) CHECK(e.resultant.is_monomial());

  MixedResidueOptions opts;
  opts.seed = 3;
  for (const LatticePoint& m : {pt({0, -1}), pt({-1, 0}), pt({-1, -1})}) {
    ResidueValue rv = global_residue_mixed({f1, f2}, {0, 1}, m, opts);
    CHECK(rv.value.den().is_monomial());
    CHECK(rv.certified);
  }

  // Monomials whose pole bound misses one coefficient group force a zero
  // residue by homogeneity.
  CHECK(global_residue_mixed({f1, f2}, {0, 1}, pt({2, 2}), opts)
            .value.is_zero());
  CHECK(global_residue_mixed({f1, f2}, {0, 1}, pt({1, 1}), opts)
            .value.is_zero());
}

TEST_CASE("global residue of the toric Jacobian counts the roots") {
  SUBCASE("two generic conics have four roots") {
    RingPtr R = conic_ring();
    Poly f1 = conic(R, "a"), f2 = conic(R, "b");
    UnmixedResidueTable table({f1, f2}, {0, 1});
    RationalFunction res = table.residue_of(toric_jacobian2(f1, f2));
    CHECK(res == RationalFunction(Poly::constant(R, BigRational(4))));
  }

  SUBCASE("the mixed pentagon system has three roots") {
    auto R = base_ring({"t1", "t2"}, {"a0", "a1", "a2", "b0", "b1", "b2"});
    auto a = [&](int i) { return var(R, "a" + std::to_string(i)); };
    auto b = [&](int i) { return var(R, "b" + std::to_string(i)); };
    Poly f1 = a(0) * mono(R, {1, 0}) + a(1) * mono(R, {1, 1}) +
              a(2) * mono(R, {0, 2});
    Poly f2 = b(0) * mono(R, {0, 1}) + b(1) * mono(R, {1, 1}) +
              b(2) * mono(R, {2, 0});
    Rng rng(6);
    auto vals = random_param_values(R, rng);
    std::vector<Poly> fnum{f1.substitute(vals), f2.substitute(vals)};
    Poly jac = toric_jacobian2(fnum[0], fnum[1]);
    BigRational total(0);
    for (const Term& t : jac.terms()) {
      LatticePoint m = pt({t.exp[0], t.exp[1]});
      MixedResidueOptions opts;
      opts.seed = 11;
      ResidueValue rv = global_residue_mixed(fnum, {0, 1}, m, opts);
      total += t.coeff * rv.value.num().constant_value() /
               rv.value.den().constant_value();
    }
    CHECK(total == BigRational(3));
  }
}

TEST_CASE("vanishing facet resultants are rejected") {
  RingPtr R = conic_ring();
  std::map<std::size_t, BigRational> vals;
  // Both restrictions to the x-axis share the double root of u^2 + 2u + 1.
  auto set = [&](const std::string& n, long v) {
    vals[static_cast<std::size_t>(R->find(n))] = BigRational(v);
  };
  set("a0", 1), set("a3", 2), set("a5", 1);
  set("b0", 1), set("b3", 2), set("b5", 1);
  set("a1", 3), set("a2", 5), set("a4", 7);
  set("b1", 2), set("b2", 9), set("b4", 4);
  std::vector<Poly> fnum{conic(R, "a").substitute(vals),
                         conic(R, "b").substitute(vals)};
  try {
    UnmixedResidueTable table(fnum, {0, 1});
    FAIL("expected a vanishing facet resultant to be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FacetResultantVanishes);
  }
}
