#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "tres/cox.hpp"
#include "tres/error.hpp"
#include "tres/gcd.hpp"
#include "tres/matrix.hpp"
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

std::vector<std::size_t> torus_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
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

LatticePolytope doubled_simplex() {
  return convex_hull({pt({0, 0}), pt({2, 0}), pt({0, 2})});
}

LatticePolytope scroll_quadrangle() {
  return convex_hull({pt({0, 0}), pt({1, 0}), pt({2, 0}), pt({3, 0}),
                      pt({0, 1}), pt({1, 1})});
}

bool equal_up_to_sign(const Poly& p, const Poly& q) {
  return p == q || p == -q;
}

/// Two generic conics with the labels of the quadratic example:
/// f = a0 t1^2 + a1 t1 t2 + a2 t2^2 + a3 t1 + a4 t2 + a5.
Poly conic(const RingPtr& R, const std::string& prefix) {
  auto c = [&](int i) { return var(R, prefix + std::to_string(i)); };
  return c(0) * mono(R, {2, 0}) + c(1) * mono(R, {1, 1}) +
         c(2) * mono(R, {0, 2}) + c(3) * mono(R, {1, 0}) +
         c(4) * mono(R, {0, 1}) + c(5);
}

RingPtr conic_ring() {
  return base_ring({"t1", "t2"},
                   {"a0", "a1", "a2", "a3", "a4", "a5", "b0", "b1", "b2", "b3",
                    "b4", "b5"});
}

/// Resultant of two generic quadratics with coefficient triples
/// (p0, p1, p2) and (q0, q1, q2), leading coefficient first.
Poly quadratic_pair_resultant(const Poly& p0, const Poly& p1, const Poly& p2,
                              const Poly& q0, const Poly& q1, const Poly& q2) {
  Poly d02 = p0 * q2 - p2 * q0;
  return d02 * d02 - (p0 * q1 - p1 * q0) * (p1 * q2 - p2 * q1);
}

}  // namespace

TEST_CASE("generic systems enumerate supports in descending graded order") {
  LatticePolytope P = doubled_simplex();
  GenericSystem sys = generic_system(P, {Int(1), Int(1)}, {"a", "b"});

  REQUIRE(sys.f.size() == 2);
  CHECK(sys.ring->size() == 14);
  CHECK(sys.torus_vars == std::vector<std::size_t>{0, 1});
  CHECK(sys.ring->name(0) == "t1");
  CHECK(sys.ring->name(2) == "a0");
  CHECK(sys.ring->name(8) == "b0");

  const SupportSet expected = {pt({2, 0}), pt({1, 1}), pt({0, 2}),
                               pt({1, 0}), pt({0, 1}), pt({0, 0})};
  REQUIRE(sys.coeffs[0].size() == 6);
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK(sys.coeffs[0][j].first == expected[j]);
    CHECK(sys.ring->name(sys.coeffs[0][j].second) ==
          "a" + std::to_string(j));
  }
  CHECK(sys.f[0] == conic(sys.ring, "a"));
  CHECK(sys.f[1] == conic(sys.ring, "b"));

  // Default prefixes skip 't'.
  GenericSystem defaults = generic_system(P, {Int(1), Int(1)});
  CHECK(defaults.ring->name(2) == "a0");
  CHECK(defaults.ring->name(8) == "b0");

  GenericSystem mixed = generic_mixed_system(
      {{pt({1, 0}), pt({1, 1}), pt({0, 2})}, {pt({0, 1}), pt({1, 1}), pt({2, 0})}});
  CHECK(mixed.coeffs[0].size() == 3);
  CHECK(mixed.coeffs[0][0].first == pt({1, 1}));  // degree 2 before degree 1
  CHECK(mixed.coeffs[1][0].first == pt({2, 0}));
}

TEST_CASE("critical degree layout matches the interior point counts") {
  SUBCASE("scroll quadrangle, all degrees one") {
    LatticePolytope P = scroll_quadrangle();
    GenericSystem sys =
        generic_system(P, {Int(1), Int(1), Int(1)}, {"a", "b", "c"});
    PhiMatrix M =
        build_phi(P, {Int(1), Int(1), Int(1)}, sys.f, sys.torus_vars);
    CHECK(M.rows() == 10);
    CHECK(M.cols() == 10);
    CHECK(M.layout.kappa == 3);
    CHECK_FALSE(M.numeric);

    const std::vector<LatticePoint> rows_m = {
        pt({1, 1}), pt({2, 1}), pt({3, 1}), pt({4, 1}), pt({5, 1}),
        pt({6, 1}), pt({1, 2}), pt({2, 2}), pt({3, 2}), pt({4, 2})};
    REQUIRE(M.layout.rows.size() == 10);
    for (std::size_t r = 0; r < 10; ++r)
      CHECK(M.layout.rows[r].m == rows_m[r]);

    // Three multiplier columns per block, Jacobian last.
    std::vector<std::size_t> blocks;
    for (const PhiColumn& c : M.layout.columns)
      if (c.kind == PhiColumn::Kind::Multiplier) blocks.push_back(c.block);
    CHECK(blocks == std::vector<std::size_t>{0, 0, 0, 1, 1, 1, 2, 2, 2});
    CHECK(M.layout.columns.back().kind == PhiColumn::Kind::Jacobian);
    const std::vector<LatticePoint> mult_m = {pt({1, 1}), pt({2, 1}),
                                              pt({3, 1})};
    for (std::size_t c = 0; c < 3; ++c)
      CHECK(M.layout.columns[c].m == mult_m[c]);
  }

  SUBCASE("doubled simplex, all degrees one") {
    LatticePolytope P = doubled_simplex();
    GenericSystem sys = generic_system(P, {Int(1), Int(1), Int(1)});
    PhiMatrix M =
        build_phi(P, {Int(1), Int(1), Int(1)}, sys.f, sys.torus_vars);
    CHECK(M.rows() == 10);
    CHECK(M.cols() == 10);
  }

  SUBCASE("unit interval gives the two-by-two linear resultant") {
    LatticePolytope P = convex_hull({pt({0}), pt({1})});
    GenericSystem sys = generic_system(P, {Int(1), Int(1)}, {"a", "b"});
    PhiMatrix M = build_phi(P, {Int(1), Int(1)}, sys.f, sys.torus_vars);
    CHECK(M.rows() == 1);
    CHECK(M.cols() == 1);
    CHECK(M.layout.columns[0].kind == PhiColumn::Kind::Jacobian);
    ResultantOutput R = resultant_via_det(M);
    const RingPtr& A = sys.ring;
    // a0 <-> t, a1 <-> 1.
    CHECK(equal_up_to_sign(R.polynomial,
                           var(A, "a0") * var(A, "b1") -
                               var(A, "a1") * var(A, "b0")));
    CHECK(R.certified);
    CHECK(R.predicted_degree == 2);
  }

  SUBCASE("unit square with a doubled block is not square") {
    LatticePolytope P =
        convex_hull({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
    GenericSystem sys = generic_system(P, {Int(2), Int(1), Int(1)});
    PhiMatrix M =
        build_phi(P, {Int(2), Int(1), Int(1)}, sys.f, sys.torus_vars);
    CHECK(M.rows() == 9);
    CHECK(M.cols() == 10);
  }
}

TEST_CASE("phi matrix reproduces the scroll coefficient pattern") {
  auto B = base_ring({"t1", "t2"},
                     {"a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "b3",
                      "b4", "b5", "b6", "c1", "c2", "c3", "c4", "c5", "c6"});
  LatticePolytope P = scroll_quadrangle();
  CoxRing cox = CoxRing::create(B, torus_indices(2), P);
  const RingPtr& T = cox.total_ring();

  // Support labels 1..6 in the order x1^3 x2, x1^2 x2 x4, x1 x2 x4^2,
  // x2 x4^3, x1 x3, x3 x4.
  auto make_F = [&](const std::string& p) {
    auto c = [&](int i) { return var(T, p + std::to_string(i)); };
    auto xm = [&](long e1, long e2, long e3, long e4) {
      ExponentVector e(T->size(), 0);
      e[static_cast<std::size_t>(T->find("x1"))] = e1;
      e[static_cast<std::size_t>(T->find("x2"))] = e2;
      e[static_cast<std::size_t>(T->find("x3"))] = e3;
      e[static_cast<std::size_t>(T->find("x4"))] = e4;
      return Poly::monomial(T, e, BigRational(1));
    };
    return c(1) * xm(3, 1, 0, 0) + c(2) * xm(2, 1, 0, 1) +
           c(3) * xm(1, 1, 0, 2) + c(4) * xm(0, 1, 0, 3) + c(5) * xm(1, 0, 1, 0) +
           c(6) * xm(0, 0, 1, 1);
  };
  std::vector<Poly> F = {make_F("a"), make_F("b"), make_F("c")};
  PhiMatrix M = build_phi(cox, F);
  REQUIRE(M.rows() == 10);
  REQUIRE(M.cols() == 10);

  // Multiplier blocks: banded coefficient columns.
  auto p = [&](const std::string& name) { return var(B, name); };
  const Poly z = Poly::zero(B);
  const char* groups[3] = {"a", "b", "c"};
  for (std::size_t g = 0; g < 3; ++g) {
    auto c = [&](int i) { return p(groups[g] + std::to_string(i)); };
    std::vector<std::vector<Poly>> cols = {
        {c(1), c(2), c(3), c(4), z, z, c(5), c(6), z, z},
        {z, c(1), c(2), c(3), c(4), z, z, c(5), c(6), z},
        {z, z, c(1), c(2), c(3), c(4), z, z, c(5), c(6)}};
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < 10; ++r)
        CHECK(M.entries.at(r, 3 * g + j) == cols[j][r]);
  }

  // Jacobian column: bracket sums, compared up to one global sign.
  auto br = [&](int i, int j, int k) {
    PolyMatrix m3(B, 3, 3);
    const char* rows[3] = {"a", "b", "c"};
    for (int r = 0; r < 3; ++r) {
      m3.at(r, 0) = p(rows[r] + std::to_string(i));
      m3.at(r, 1) = p(rows[r] + std::to_string(j));
      m3.at(r, 2) = p(rows[r] + std::to_string(k));
    }
    return fraction_free_det(m3);
  };
  const BigRational two(2), three(3);
  std::vector<Poly> jac = {br(1, 2, 5),
                           br(1, 2, 6) + two * br(1, 3, 5),
                           br(2, 3, 5) + two * br(1, 3, 6) + three * br(1, 4, 5),
                           br(2, 3, 6) + two * br(2, 4, 5) + three * br(1, 4, 6),
                           br(3, 4, 5) + two * br(2, 4, 6),
                           br(3, 4, 6),
                           -br(1, 5, 6),
                           -br(2, 5, 6),
                           -br(3, 5, 6),
                           -br(4, 5, 6)};
  bool plus = M.entries.at(0, 9) == jac[0];
  for (std::size_t r = 0; r < 10; ++r)
    CHECK(M.entries.at(r, 9) == (plus ? jac[r] : -jac[r]));

  // Exactness: each column recombines to multiplier * F_i resp. J(F).
  for (std::size_t c = 0; c < M.cols(); ++c) {
    Poly sum = Poly::zero(T);
    for (std::size_t r = 0; r < M.rows(); ++r)
      sum += M.entries.at(r, c).embed(T) *
             Poly::monomial(T, M.layout.rows[r].exps, BigRational(1));
    const PhiColumn& col = M.layout.columns[c];
    if (col.kind == PhiColumn::Kind::Multiplier)
      CHECK(sum == Poly::monomial(T, col.exps, BigRational(1)) * F[col.block]);
    else
      CHECK(sum == M.jacobian);
  }

  // Row coefficient extraction inverts the row basis.
  std::vector<Poly> coeffs = phi_row_coefficients(M, M.jacobian);
  for (std::size_t r = 0; r < 10; ++r)
    CHECK(coeffs[r] == M.entries.at(r, 9));
  CHECK_THROWS_AS(phi_row_coefficients(M, F[0]), Error);
}

TEST_CASE("determinant path certifies the scroll resultant degree") {
  LatticePolytope P = scroll_quadrangle();
  std::vector<Int> k = {Int(1), Int(1), Int(1)};
  GenericSystem sys = generic_system(P, k, {"a", "b", "c"});
  PhiMatrix M = build_phi(P, k, sys.f, sys.torus_vars);
  ResultantOutput R = resultant_via_det(M);

  CHECK(R.ell == 1);
  CHECK(R.certified);
  CHECK(R.computed_degree == 12);
  CHECK(R.predicted_degree == 12);
  CHECK(determinant_total_degree(P, k) == 12);
  CHECK(determinant_degree_alternating(P, k) == 12);
  for (std::size_t i = 0; i < 3; ++i) CHECK(resultant_degree(P, k, i) == 4);

  // Degree four in each coefficient group.
  for (std::size_t g = 0; g < 3; ++g) {
    std::int64_t deg = 0;
    for (const Term& t : R.polynomial.terms()) {
      std::int64_t d = 0;
      for (std::size_t j = 0; j < 6; ++j) d += t.exp[2 + 6 * g + j];
      deg = std::max(deg, d);
    }
    CHECK(deg == 4);
  }

  // Specializations with a constructed torus root make the determinant
  // vanish and drop the rank; random ones do not.
  Rng rng(20260814);
  for (int trial = 0; trial < 5; ++trial) {
    std::map<std::size_t, BigRational> vals;
    BigRational xi1(rng.nonzero(7)), xi2(rng.nonzero(7));
    std::vector<BigRational> point = {xi1, xi2};
    for (std::size_t i = 0; i < 3; ++i) {
      BigRational partial(0);
      std::vector<BigRational> monos;
      for (const auto& [m, idx] : sys.coeffs[i]) {
        BigRational v = pow(xi1, to_long(m[0])) * pow(xi2, to_long(m[1]));
        monos.push_back(v);
      }
      for (std::size_t j = 0; j + 1 < sys.coeffs[i].size(); ++j) {
        BigRational c(rng.nonzero(9));
        vals[sys.coeffs[i][j].second] = c;
        partial += c * monos[j];
      }
      vals[sys.coeffs[i].back().second] = -partial / monos.back();
    }
    PolyMatrix spec = M.entries.substitute(vals);
    QMatrix Q = QMatrix::from_poly(spec);
    CHECK(qrank(Q) < 10);
    CHECK(fraction_free_det(spec).is_zero());
    CHECK(R.polynomial.substitute(vals).is_zero());

    // Left kernel certificate: the vector of row monomial values at the
    // common root annihilates every column.
    for (std::size_t c = 0; c < M.cols(); ++c) {
      BigRational s(0);
      for (std::size_t r = 0; r < M.rows(); ++r) {
        const LatticePoint& m = M.layout.rows[r].m;
        s += pow(xi1, to_long(m[0])) * pow(xi2, to_long(m[1])) * Q.at(r, c);
      }
      CHECK(s == 0);
    }
  }
  for (int trial = 0; trial < 5; ++trial) {
    std::map<std::size_t, BigRational> vals;
    for (std::size_t v = 2; v < sys.ring->size(); ++v)
      vals[v] = BigRational(rng.nonzero(9));
    QMatrix Q = QMatrix::from_poly(M.entries.substitute(vals));
    bool full = qrank(Q) == 10;
    bool nonzero = !R.polynomial.substitute(vals).is_zero();
    CHECK(full == nonzero);
    CHECK(nonzero);
  }
}

TEST_CASE("minor gcd certifies a non-square layout") {
  LatticePolytope P =
      convex_hull({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
  std::vector<Int> k = {Int(2), Int(1), Int(1)};
  GenericSystem sys = generic_system(P, k);
  PhiMatrix M = build_phi(P, k, sys.f, sys.torus_vars);
  REQUIRE(M.rows() == 9);
  REQUIRE(M.cols() == 10);

  ResultantOutput R = resultant_via_minor_gcd(M);
  CHECK(R.certified);
  CHECK(R.ell == 1);
  CHECK(R.computed_degree == 10);
  CHECK(R.predicted_degree == determinant_total_degree(P, k));

  // Vanishing oracle on the certified gcd.
  Rng rng(7);
  for (int trial = 0; trial < 2; ++trial) {
    std::map<std::size_t, BigRational> vals;
    BigRational xi1(rng.nonzero(5)), xi2(rng.nonzero(5));
    for (std::size_t i = 0; i < 3; ++i) {
      BigRational partial(0);
      std::vector<BigRational> monos;
      for (const auto& [m, idx] : sys.coeffs[i])
        monos.push_back(pow(xi1, to_long(m[0])) * pow(xi2, to_long(m[1])));
      for (std::size_t j = 0; j + 1 < sys.coeffs[i].size(); ++j) {
        BigRational c(rng.nonzero(9));
        vals[sys.coeffs[i][j].second] = c;
        partial += c * monos[j];
      }
      vals[sys.coeffs[i].back().second] = -partial / monos.back();
    }
    CHECK(R.polynomial.substitute(vals).is_zero());
  }
  std::map<std::size_t, BigRational> vals;
  for (std::size_t v = 2; v < sys.ring->size(); ++v)
    vals[v] = BigRational(rng.nonzero(9));
  CHECK_FALSE(R.polynomial.substitute(vals).is_zero());
}

TEST_CASE("square minor gcd agrees with the determinant and sylvester") {
  LatticePolytope P = convex_hull({pt({0}), pt({1})});
  std::vector<Int> k = {Int(2), Int(1)};
  GenericSystem sys = generic_system(P, k, {"a", "b"});
  PhiMatrix M = build_phi(P, k, sys.f, sys.torus_vars);
  REQUIRE(M.rows() == M.cols());

  ResultantOutput D = resultant_via_det(M);
  ResultantOutput G = resultant_via_minor_gcd(M);
  CHECK(D.certified);
  CHECK(G.certified);
  CHECK(G.polynomial == normalize(D.polynomial, false));

  Poly syl = univariate_sylvester(sys.f[0], sys.f[1], 0);
  CHECK(equal_up_to_sign(normalize(syl, false), G.polynomial));
  // a0 t^2 + a1 t + a2 against b0 t + b1.
  const RingPtr& A = sys.ring;
  Poly expected = var(A, "a0") * var(A, "b1") * var(A, "b1") -
                  var(A, "a1") * var(A, "b0") * var(A, "b1") +
                  var(A, "a2") * var(A, "b0") * var(A, "b0");
  CHECK(equal_up_to_sign(D.polynomial, expected));
}

TEST_CASE("sylvester resultant structure") {
  auto R = base_ring({"t"}, {"a0", "a1", "a2", "b0", "b1", "b2"});
  Poly t = var(R, "t");
  Poly f = var(R, "a0") * t * t + var(R, "a1") * t + var(R, "a2");
  Poly g = var(R, "b0") * t * t + var(R, "b1") * t + var(R, "b2");

  CHECK(univariate_sylvester(f, g, 0) ==
        quadratic_pair_resultant(var(R, "a0"), var(R, "a1"), var(R, "a2"),
                                 var(R, "b0"), var(R, "b1"), var(R, "b2")));
  CHECK(univariate_sylvester(f, f, 0).is_zero());

  // Laurent inputs are translated to minimal exponent zero.
  ExponentVector down(R->size(), 0);
  down[0] = -3;
  CHECK(univariate_sylvester(f.shift(down), g, 0) ==
        univariate_sylvester(f, g, 0));

  // Degree-zero input: resultant is that constant to the other degree.
  Poly c = var(R, "a2");
  CHECK(univariate_sylvester(c, g, 0) == c * c);
  CHECK(univariate_sylvester(c, var(R, "b2"), 0) ==
        Poly::constant(R, BigRational(1)));
  CHECK_THROWS_AS(univariate_sylvester(Poly::zero(R), g, 0), Error);
}

TEST_CASE("facet resultants of two generic conics") {
  RingPtr R = conic_ring();
  Poly f1 = conic(R, "a"), f2 = conic(R, "b");
  FacetResultantSet fs = facet_resultants({f1, f2}, {0, 1});

  REQUIRE(fs.entries.size() == 3);
  CHECK(fs.sum.facets()[0].normal == pt({-1, -1}));
  CHECK(fs.sum_offsets == std::vector<Int>{Int(4), Int(0), Int(0)});

  auto a = [&](int i) { return var(R, "a" + std::to_string(i)); };
  auto b = [&](int i) { return var(R, "b" + std::to_string(i)); };
  Poly Rinf = quadratic_pair_resultant(a(0), a(1), a(2), b(0), b(1), b(2));
  Poly Rx = quadratic_pair_resultant(a(0), a(3), a(5), b(0), b(3), b(5));
  Poly Ry = quadratic_pair_resultant(a(2), a(4), a(5), b(2), b(4), b(5));

  CHECK(equal_up_to_sign(fs.by_normal(pt({-1, -1})).resultant, Rinf));
  CHECK(equal_up_to_sign(fs.by_normal(pt({0, 1})).resultant, Rx));
  CHECK(equal_up_to_sign(fs.by_normal(pt({1, 0})).resultant, Ry));
  for (const FacetResultant& e : fs.entries) {
    CHECK(e.ell == 1);
    CHECK(e.faces.face_points[0].size() == 3);
  }

  // The three facet resultants are pairwise coprime.
  CHECK(multipoly_gcd(Rinf, Rx).is_constant());
  CHECK(multipoly_gcd(Rinf, Ry).is_constant());
  CHECK(multipoly_gcd(Rx, Ry).is_constant());
}

TEST_CASE("facet resultants of the mixed pentagon system") {
  auto R = base_ring({"t1", "t2"}, {"a0", "a1", "a2", "b0", "b1", "b2"});
  auto a = [&](int i) { return var(R, "a" + std::to_string(i)); };
  auto b = [&](int i) { return var(R, "b" + std::to_string(i)); };
  Poly f1 = a(0) * mono(R, {1, 0}) + a(1) * mono(R, {1, 1}) +
            a(2) * mono(R, {0, 2});
  Poly f2 = b(0) * mono(R, {0, 1}) + b(1) * mono(R, {1, 1}) +
            b(2) * mono(R, {2, 0});
  FacetResultantSet fs = facet_resultants({f1, f2}, {0, 1});

  REQUIRE(fs.entries.size() == 5);
  CHECK(fs.by_normal(pt({-1, -1})).resultant == a(1) * b(1) - a(2) * b(2));
  CHECK(fs.by_normal(pt({-1, 0})).resultant == b(2));
  CHECK(fs.by_normal(pt({0, -1})).resultant == a(2));
  CHECK(fs.by_normal(pt({1, 2})).resultant == a(0));
  CHECK(fs.by_normal(pt({2, 1})).resultant == b(0));
  for (const FacetResultant& e : fs.entries) CHECK(e.ell == 1);

  CHECK(mixed_volume({support_of(f1, {0, 1}), support_of(f2, {0, 1})}) == 3);
}

TEST_CASE("single input facet data on a segment") {
  auto R = base_ring({"t"}, {"u0", "u1", "u2"});
  Poly f = var(R, "u0") + var(R, "u1") * mono(R, {2}) +
           var(R, "u2") * mono(R, {5});
  FacetResultantSet fs = facet_resultants({f}, {0});
  REQUIRE(fs.entries.size() == 2);
  CHECK(fs.by_normal(pt({1})).resultant == var(R, "u0"));   // min exponent
  CHECK(fs.by_normal(pt({-1})).resultant == var(R, "u2"));  // max exponent
}

TEST_CASE("degree bookkeeping and lattice indices") {
  SUBCASE("unit simplex behaves like dense Bezout") {
    LatticePolytope P =
        convex_hull({pt({0, 0}), pt({1, 0}), pt({0, 1})});
    std::vector<Int> k = {Int(2), Int(3), Int(4)};
    CHECK(resultant_index(P, k) == 1);
    CHECK(resultant_degree(P, k, 0) == 12);
    CHECK(resultant_degree(P, k, 1) == 8);
    CHECK(resultant_degree(P, k, 2) == 6);
    CHECK(determinant_total_degree(P, k) == 26);
    CHECK(determinant_degree_alternating(P, k) == 26);
  }

  SUBCASE("interior ehrhart of the doubled simplex") {
    std::vector<BigRational> p = interior_ehrhart(doubled_simplex());
    CHECK(p == std::vector<BigRational>{BigRational(1), BigRational(-3),
                                        BigRational(2)});
    CHECK(koszul_ranks(doubled_simplex(), {Int(1), Int(1), Int(1)}) ==
          std::vector<Int>{Int(0), Int(0), Int(9), Int(10)});
  }

  SUBCASE("alternating rank sums match the volume formula") {
    CHECK(determinant_degree_alternating(doubled_simplex(),
                                         {Int(2), Int(1), Int(1)}) ==
          determinant_total_degree(doubled_simplex(), {Int(2), Int(1), Int(1)}));
    CHECK(determinant_degree_alternating(scroll_quadrangle(),
                                         {Int(1), Int(2), Int(2)}) ==
          determinant_total_degree(scroll_quadrangle(),
                                   {Int(1), Int(2), Int(2)}));
  }

  SUBCASE("lattice index of the Reeve simplex") {
    LatticePolytope P = convex_hull(
        {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({1, 1, 2})});
    std::vector<Int> k = {Int(1), Int(1), Int(1), Int(1)};
    CHECK(resultant_index(P, k) == 2);
    CHECK(determinant_total_degree(P, k) == 8);
    CHECK(resultant_degree(P, k, 0) == 1);
    // Dilating by two picks up interior points and the index drops.
    CHECK(resultant_index(P, {Int(2), Int(1), Int(1), Int(1)}) == 1);
  }
}

TEST_CASE("monomial specialization of the resultant factors over facets") {
  RingPtr R = conic_ring();
  Poly f1 = conic(R, "a"), f2 = conic(R, "b");
  FacetResultantSet fs = facet_resultants({f1, f2}, {0, 1});
  const std::vector<Int> bP = {Int(2), Int(0), Int(0)};  // doubled simplex

  auto a = [&](int i) { return var(R, "a" + std::to_string(i)); };
  auto b = [&](int i) { return var(R, "b" + std::to_string(i)); };
  Poly Rinf = quadratic_pair_resultant(a(0), a(1), a(2), b(0), b(1), b(2));
  Poly Rx = quadratic_pair_resultant(a(0), a(3), a(5), b(0), b(3), b(5));
  Poly Ry = quadratic_pair_resultant(a(2), a(4), a(5), b(2), b(4), b(5));

  FactoredPoly origin = monomial_specialized_resultant(pt({0, 0}), fs, 1, bP);
  CHECK(equal_up_to_sign(origin.expand(R), Rinf * Rinf));
  FactoredPoly center = monomial_specialized_resultant(pt({1, 1}), fs, 1, bP);
  CHECK(equal_up_to_sign(center.expand(R), Rx * Ry));
  CHECK_THROWS_AS(monomial_specialized_resultant(pt({3, 2}), fs, 1, bP),
                  Error);
}

TEST_CASE("monomial sections specialize the determinant to facet products") {
  // The determinant with a monomial first block is a constant multiple of
  // the product of facet resultants with exponents <m, eta> + b, and the
  // constant depends only on the layout, not on the section chosen.
  LatticePolytope P = doubled_simplex();
  GenericSystem sys = generic_system(P, {Int(1), Int(1)}, {"a", "b"});
  FacetResultantSet fs = facet_resultants(sys.f, sys.torus_vars);
  const std::vector<Int> bP = {Int(2), Int(0), Int(0)};

  Poly unit = Poly::zero(sys.ring);
  for (const LatticePoint& m :
       {pt({0, 0}), pt({1, 1}), pt({2, 0})}) {
    ExponentVector e(sys.ring->size(), 0);
    e[0] = to_long(m[0]);
    e[1] = to_long(m[1]);
    std::vector<Poly> triple = {Poly::monomial(sys.ring, e, BigRational(1)),
                                sys.f[0], sys.f[1]};
    PhiMatrix M = build_phi(P, {Int(1), Int(1), Int(1)}, triple,
                            sys.torus_vars);
    REQUIRE(M.rows() == M.cols());
    Poly det = fraction_free_det(M.entries);
    Poly expected = monomial_specialized_resultant(m, fs, 1, bP)
                        .expand(sys.ring);
    Poly ratio = exact_divide(det, expected);
    REQUIRE(ratio.is_constant());
    CHECK_FALSE(ratio.is_zero());
    if (unit.is_zero())
      unit = ratio;
    else
      CHECK(ratio == unit);
    // The normalized determinant is the facet product on the nose.
    ResultantOutput R = resultant_via_det(M);
    CHECK(equal_up_to_sign(R.polynomial, normalize(expected, false)));
  }
}

TEST_CASE("column replacement determinant matches direct replacement") {
  auto R = base_ring({}, {"p", "q"});
  Rng rng(42);
  for (int trial = 0; trial < 4; ++trial) {
    PolyMatrix M(R, 4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        ExponentVector e(2, 0);
        e[0] = rng.uniform(0, 1);
        e[1] = rng.uniform(0, 1);
        M.at(r, c) = Poly::monomial(R, e, BigRational(rng.uniform(-3, 3)));
      }
    std::vector<Poly> col;
    for (std::size_t r = 0; r < 4; ++r)
      col.push_back(var(R, "p") * BigRational(rng.uniform(-2, 2)) +
                    Poly::constant(R, BigRational(rng.uniform(-2, 2))));
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(det_with_replaced_column(M, c, col) ==
            fraction_free_det(M.with_column(c, col)));
  }
}
