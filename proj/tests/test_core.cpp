#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tres/gcd.hpp"
#include "tres/matrix.hpp"
#include "tres/polynomial.hpp"
#include "tres/ratfunc.hpp"
#include "tres/rng.hpp"
#include "tres/smith.hpp"

using namespace tres;

namespace {

RingPtr param_ring(std::vector<std::string> names) {
  std::vector<VarKind> kinds(names.size(), VarKind::Param);
  return make_ring(std::move(names), std::move(kinds));
}

RingPtr torus_ring(std::vector<std::string> names) {
  std::vector<VarKind> kinds(names.size(), VarKind::Torus);
  return make_ring(std::move(names), std::move(kinds));
}

Poly var(const RingPtr& R, const std::string& name) {
  int i = R->find(name);
  REQUIRE(i >= 0);
  return Poly::variable(R, static_cast<std::size_t>(i));
}

Poly random_poly(const RingPtr& R, Rng& rng, int max_terms, int max_deg,
                 std::int64_t coeff_bound) {
  std::vector<Term> ts;
  int nt = static_cast<int>(rng.uniform(1, max_terms));
  for (int t = 0; t < nt; ++t) {
    ExponentVector e(R->size());
    for (std::size_t v = 0; v < R->size(); ++v)
      e[v] = rng.uniform(0, max_deg);
    ts.push_back({e, BigRational(static_cast<long>(
                         rng.uniform(-coeff_bound, coeff_bound)))});
  }
  return Poly::from_terms(R, std::move(ts));
}

}  // namespace

TEST_CASE("graded lex order puts earlier variables first") {
  auto R = param_ring({"a0", "a1", "a2", "b0", "b1", "b2"});
  auto a0 = var(R, "a0"), a1 = var(R, "a1"), a2 = var(R, "a2");
  auto b0 = var(R, "b0"), b1 = var(R, "b1"), b2 = var(R, "b2");
  Poly p = a2 * a2 * b0 * b0 + a0 * a0 * b2 * b2 - a0 * a1 * b1 * b2 +
           a0 * a2 * b1 * b1 - BigRational(2) * a0 * a2 * b0 * b2 +
           a1 * a1 * b0 * b2 - a1 * a2 * b0 * b1;
  CHECK(p.to_string() ==
        "a0^2*b2^2 - a0*a1*b1*b2 - 2*a0*a2*b0*b2 + a0*a2*b1^2 + a1^2*b0*b2 - "
        "a1*a2*b0*b1 + a2^2*b0^2");
}

TEST_CASE("basic arithmetic and calculus") {
  auto R = param_ring({"x", "y"});
  auto x = var(R, "x"), y = var(R, "y");
  CHECK((x + y) * (x + y) == x * x + BigRational(2) * x * y + y * y);
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x * x * y).derivative(0) == BigRational(2) * x * y);
  CHECK((x * x * y).derivative(1) == x * x);
  Poly p = x * x + BigRational(3) * y;
  CHECK(p.evaluate({BigRational(2), BigRational(5)}) == BigRational(19));
  CHECK(p.substitute({{0, BigRational(2)}}) ==
        BigRational(3) * y + Poly::constant(R, BigRational(4)));
  CHECK(p.pow(0) == Poly::constant(R, BigRational(1)));
  CHECK(p.pow(2) == p * p);
}

TEST_CASE("laurent terms live on torus variables") {
  auto R = torus_ring({"t"});
  Poly t = var(R, "t");
  Poly inv = Poly::monomial(R, {-1});
  CHECK(t * inv == Poly::constant(R, BigRational(1)));
  CHECK((t + inv).log_derivative(0) == t - inv);
  CHECK(inv.evaluate({BigRational(4)}) == BigRational(1, 4));
}

TEST_CASE("content and primitive part") {
  auto R = param_ring({"x"});
  auto x = var(R, "x");
  Poly p = BigRational(6) * x + BigRational(4) * x * x;
  CHECK(p.content() == BigRational(2));
  CHECK(p.primitive_part() == BigRational(2) * x * x + BigRational(3) * x);
  Poly q = -p;
  CHECK(q.content() == BigRational(-2));
  CHECK(q.primitive_part() == p.primitive_part());
  Poly h = x * BigRational(1, 2) + Poly::constant(R, BigRational(1, 3));
  CHECK(h.content() == BigRational(1, 6));
  CHECK(h.primitive_part() == BigRational(3) * x + Poly::constant(R, BigRational(2)));
}

TEST_CASE("exact division") {
  auto R = param_ring({"x", "y"});
  auto x = var(R, "x"), y = var(R, "y");
  CHECK(exact_divide(x * x - y * y, x - y) == x + y);
  CHECK(exact_divide(Poly::zero(R), x) == Poly::zero(R));
  CHECK_THROWS_AS((void)exact_divide(x * x + y * y, x - y), Error);
  CHECK_THROWS_AS((void)exact_divide(x, Poly::zero(R)), Error);
  CHECK(!divides(x - y, x * x + y * y));
  CHECK(divides(x + y, x * x - y * y));

  // quotient would need x^-1, which only exists for torus variables
  CHECK_THROWS_AS((void)exact_divide(y * x + y, x * x + x), Error);
  auto T = torus_ring({"x", "y"});
  auto tx = var(T, "x"), ty = var(T, "y");
  CHECK(exact_divide(ty * tx + ty, tx * tx + tx) ==
        ty * Poly::monomial(T, {-1, 0}));
}

TEST_CASE("multivariate gcd with scalar content convention") {
  auto R = param_ring({"x", "y", "z"});
  auto x = var(R, "x"), y = var(R, "y"), z = var(R, "z");
  CHECK(multipoly_gcd(BigRational(6) * x, BigRational(4) * x * x) ==
        BigRational(2) * x);
  Poly a = (x + y) * (x + y) * (x - y);
  Poly b = (x + y) * (x - y) * (x - y);
  CHECK(multipoly_gcd(a, b) == x * x - y * y);
  CHECK(multipoly_gcd(Poly::zero(R), BigRational(-3) * x) == BigRational(3) * x);
  Poly c = (x * y + z) * (x + y + BigRational(7) * z);
  Poly d = (x * y + z) * (x - y);
  CHECK(multipoly_gcd(c, d) == x * y + z);
  CHECK(multipoly_gcd(x + y, x - y).is_constant());
}

TEST_CASE("gcd and division random properties") {
  auto R = param_ring({"u", "v", "w"});
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    Poly p = random_poly(R, rng, 4, 3, 5);
    Poly q = random_poly(R, rng, 4, 3, 5);
    Poly r = random_poly(R, rng, 3, 2, 5);
    if (q.is_zero()) continue;
    CHECK(exact_divide(p * q, q) == p);
    if (r.is_zero() || p.is_zero() || q.is_zero()) continue;
    Poly g = multipoly_gcd(p * r, q * r);
    CHECK(divides(normalize(r), g));
    CHECK(divides(g, p * r));
    CHECK(divides(g, q * r));
  }
}

TEST_CASE("rational functions reduce to canonical form") {
  auto R = param_ring({"x", "y"});
  auto x = var(R, "x"), y = var(R, "y");
  RationalFunction f(x * x - y * y, x - y);
  CHECK(f.is_polynomial());
  CHECK(f.num() == x + y);
  RationalFunction g(x, BigRational(2) * (x + y));
  CHECK(g.den() == x + y);
  CHECK(g.num() == BigRational(1, 2) * x);
  CHECK(f + g == RationalFunction((x + y) * (x + y) * BigRational(2) + x,
                                  BigRational(2) * (x + y)));
  CHECK(f * g == RationalFunction(x * BigRational(1, 2)) *
                     RationalFunction(Poly::constant(R, BigRational(1))));
  CHECK_THROWS_AS(RationalFunction(x, Poly::zero(R)), Error);
}

TEST_CASE("determinants: known values") {
  auto R = param_ring({"a", "b", "c", "d"});
  auto a = var(R, "a"), b = var(R, "b"), c = var(R, "c"), d = var(R, "d");
  PolyMatrix M(R, 2, 2);
  M.at(0, 0) = a;
  M.at(0, 1) = b;
  M.at(1, 0) = c;
  M.at(1, 1) = d;
  CHECK(fraction_free_det(M) == a * d - b * c);

  PolyMatrix N(R, 3, 3);
  long vals[3][3] = {{2, 0, 1}, {1, 3, 2}, {1, 1, 3}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      N.at(i, j) = Poly::constant(R, BigRational(vals[i][j]));
  CHECK(fraction_free_det(N).constant_value() == BigRational(12));

  // singular symbolic matrix
  PolyMatrix S(R, 2, 2);
  S.at(0, 0) = a;
  S.at(0, 1) = b;
  S.at(1, 0) = a;
  S.at(1, 1) = b;
  CHECK(fraction_free_det(S, DetAlgorithm::Bareiss).is_zero());
  CHECK(fraction_free_det(S, DetAlgorithm::SubsetDP).is_zero());
}

TEST_CASE("determinant algorithms agree on random matrices") {
  auto R = param_ring({"s", "t"});
  Rng rng(2026);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
    bool symbolic = trial % 5 == 0;
    PolyMatrix M(R, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        M.at(i, j) = symbolic ? random_poly(R, rng, 2, 1, 3)
                              : Poly::constant(
                                    R, BigRational(static_cast<long>(
                                           rng.uniform(-9, 9))));
    Poly ref = det_cofactor_serial(M);
    CHECK(fraction_free_det(M, DetAlgorithm::SubsetDP) == ref);
    CHECK(fraction_free_det(M, DetAlgorithm::Bareiss) == ref);
    CHECK(fraction_free_det(M, DetAlgorithm::SubsetDP, false) == ref);
    if (!symbolic) CHECK(fraction_free_det(M, DetAlgorithm::NumericGauss) == ref);
  }
}

TEST_CASE("cramer solve") {
  auto R = param_ring({"a", "b"});
  auto a = var(R, "a"), b = var(R, "b");
  PolyMatrix M(R, 2, 2);
  M.at(0, 0) = a;
  M.at(0, 1) = Poly::constant(R, BigRational(1));
  M.at(1, 0) = Poly::constant(R, BigRational(1));
  M.at(1, 1) = b;
  // solve M x = (1, 0): x = (b, -1)/(ab - 1)
  auto x = cramer_solve(M, {Poly::constant(R, BigRational(1)), Poly::zero(R)});
  CHECK(x[0] == RationalFunction(b, a * b - Poly::constant(R, BigRational(1))));
  CHECK(x[1] == RationalFunction(-Poly::constant(R, BigRational(1)),
                                 a * b - Poly::constant(R, BigRational(1))));
  PolyMatrix S(R, 2, 2);
  S.at(0, 0) = a;
  S.at(0, 1) = a;
  S.at(1, 0) = b;
  S.at(1, 1) = b;
  CHECK_THROWS_AS(cramer_solve(S, {a, b}), Error);
}

TEST_CASE("smith normal form and lattice reduction") {
  SmithDecomposition S = smith_normal_form({{Int(2), Int(4)}, {Int(6), Int(8)}});
  REQUIRE(S.rank == 2);
  CHECK(S.diag[0] == 2);
  CHECK(S.diag[1] == 4);
  CHECK(S.diag[1] % S.diag[0] == 0);

  // U*A*V = D must hold exactly
  IntMatrix A = {{Int(2), Int(4)}, {Int(6), Int(8)}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Int v(0);
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) v += S.U[i][k] * A[k][l] * S.V[l][j];
      CHECK(v == (i == j ? S.diag[i] : Int(0)));
    }

  HermiteBasis H = hermite_column_basis({{Int(2), Int(0)}, {Int(0), Int(3)}});
  auto r1 = reduce_mod_lattice(H, {Int(5), Int(7)});
  auto r2 = reduce_mod_lattice(H, {Int(1), Int(1)});
  CHECK(r1 == r2);
  auto r3 = reduce_mod_lattice(H, {Int(0), Int(1)});
  CHECK(r1 != r3);

  auto K = kernel_basis_of_row({Int(2), Int(3)});
  REQUIRE(K.size() == 2);
  REQUIRE(K[0].size() == 1);
  CHECK(Int(2) * K[0][0] + Int(3) * K[1][0] == 0);
  CHECK(gcd(K[0][0], K[1][0]) == 1);

  auto sol = solve_integral_full_rank({{Int(2)}, {Int(3)}}, {Int(4), Int(6)});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == 2);
  CHECK(!solve_integral_full_rank({{Int(2)}, {Int(3)}}, {Int(4), Int(7)}));
  CHECK(!solve_integral_full_rank({{Int(2)}, {Int(4)}}, {Int(1), Int(2)}));
}

TEST_CASE("rref and rank") {
  QMatrix A(3, 4);
  long rows[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) A.at(i, j) = BigRational(rows[i][j]);
  CHECK(qrank(A) == 2);
  QMatrix B(2, 2);
  B.at(0, 0) = BigRational(2);
  B.at(0, 1) = BigRational(1);
  B.at(1, 0) = BigRational(1);
  B.at(1, 1) = BigRational(1);
  auto x = qsolve(B, {BigRational(3), BigRational(2)});
  CHECK(x[0] == BigRational(1));
  CHECK(x[1] == BigRational(1));
}
