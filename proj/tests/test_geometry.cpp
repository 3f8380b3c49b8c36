#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "tres/error.hpp"
#include "tres/polytope.hpp"

using namespace tres;

namespace {

LatticePoint pt(std::initializer_list<long> cs) {
  LatticePoint p;
  for (long c : cs) p.push_back(Int(c));
  return p;
}

SupportSet twice_simplex2() {
  return {pt({0, 0}), pt({1, 0}), pt({2, 0}), pt({0, 1}), pt({1, 1}),
          pt({0, 2})};
}

bool has_facet(const LatticePolytope& P, std::initializer_list<long> normal,
               long offset) {
  HalfSpace h{LatticePoint(), Int(offset)};
  for (long c : normal) h.normal.push_back(Int(c));
  return std::find(P.facets().begin(), P.facets().end(), h) !=
         P.facets().end();
}

}  // namespace

TEST_CASE("hull of the doubled unit triangle") {
  LatticePolytope P = convex_hull(twice_simplex2());
  CHECK(P.facets().size() == 3);
  CHECK(has_facet(P, {1, 0}, 0));
  CHECK(has_facet(P, {0, 1}, 0));
  CHECK(has_facet(P, {-1, -1}, 2));
  CHECK(P.vertices() ==
        std::vector<LatticePoint>{pt({0, 0}), pt({0, 2}), pt({2, 0})});
  CHECK(volume(P) == BigRational(2));
  CHECK(P.contains(pt({1, 1})));
  CHECK(!P.contains(pt({2, 1})));
}

TEST_CASE("hull of the scroll quadrangle") {
  SupportSet pts = {pt({0, 0}), pt({1, 0}), pt({2, 0}),
                    pt({3, 0}), pt({0, 1}), pt({1, 1})};
  LatticePolytope P = convex_hull(pts);
  REQUIRE(P.facets().size() == 4);
  CHECK(has_facet(P, {0, -1}, 1));
  CHECK(has_facet(P, {-1, -2}, 3));
  CHECK(has_facet(P, {0, 1}, 0));
  CHECK(has_facet(P, {1, 0}, 0));
  CHECK(P.vertices() == std::vector<LatticePoint>{pt({0, 0}), pt({0, 1}),
                                                  pt({1, 1}), pt({3, 0})});
  CHECK(volume(P) == BigRational(2));
  // interior lattice points of 3P: 10 of them (the critical-degree count)
  CHECK(interior_count(P, Int(3)) == 10);
  CHECK(scaled_lattice_points(P, Int(1)).size() == 6);
}

TEST_CASE("hull input validation") {
  CHECK_THROWS_AS(convex_hull({}), Error);
  CHECK_THROWS_AS(convex_hull({pt({0, 0}), pt({1, 0})}), Error);  // not full-dim
  CHECK_THROWS_AS(convex_hull({pt({0, 0, 0, 0}), pt({1, 0, 0, 0}),
                               pt({0, 1, 0, 0}), pt({0, 0, 1, 0}),
                               pt({0, 0, 0, 1})}),
                  Error);  // dimension 4 unsupported
  CHECK(affine_rank({pt({0, 0}), pt({1, 0})}) == 1);
  CHECK(affine_rank({pt({0, 0}), pt({1, 0}), pt({0, 1})}) == 2);
}

TEST_CASE("one-dimensional hulls") {
  LatticePolytope P = convex_hull({pt({2}), pt({5}), pt({3})});
  CHECK(P.vertices() == std::vector<LatticePoint>{pt({2}), pt({5})});
  CHECK(volume(P) == BigRational(3));
  CHECK(scaled_lattice_points(P, Int(1)).size() == 4);
  CHECK(scaled_lattice_points(P, Int(2)).size() == 7);
  CHECK(interior_count(P, Int(1)) == 2);
}

TEST_CASE("three-dimensional hulls and volume") {
  SupportSet cube;
  for (long x = 0; x <= 1; ++x)
    for (long y = 0; y <= 1; ++y)
      for (long z = 0; z <= 1; ++z) cube.push_back(pt({x, y, z}));
  LatticePolytope C = convex_hull(cube);
  CHECK(C.facets().size() == 6);
  CHECK(volume(C) == BigRational(1));
  CHECK(scaled_lattice_points(C, Int(2)).size() == 27);

  LatticePolytope S = convex_hull(
      {pt({0, 0, 0}), pt({2, 0, 0}), pt({0, 2, 0}), pt({0, 0, 2})});
  CHECK(S.facets().size() == 4);
  CHECK(volume(S) == BigRational(4, 3));
  CHECK(scaled_lattice_points(S, Int(1)).size() == 10);
  CHECK(interior_count(S, Int(2)) == 1);  // only (1,1,1)
}

TEST_CASE("minkowski sum of the mixed pair gives the pentagon") {
  SupportSet d1 = {pt({1, 0}), pt({1, 1}), pt({0, 2})};
  SupportSet d2 = {pt({0, 1}), pt({1, 1}), pt({2, 0})};
  MinkowskiSum M = minkowski_sum({d1, d2});
  const LatticePolytope& P = M.sum;
  REQUIRE(P.facets().size() == 5);
  CHECK(has_facet(P, {-1, 0}, 3));
  CHECK(has_facet(P, {-1, -1}, 4));
  CHECK(has_facet(P, {0, -1}, 3));
  CHECK(has_facet(P, {2, 1}, -3));
  CHECK(has_facet(P, {1, 2}, -3));
  CHECK(P.vertices() == std::vector<LatticePoint>{pt({0, 3}), pt({1, 1}),
                                                  pt({1, 3}), pt({3, 0}),
                                                  pt({3, 1})});
  CHECK(volume(P) == BigRational(4));
  CHECK(interior_count(P, Int(1)) == 2);
  // interior Ehrhart values 4j^2 - 3j + 1
  CHECK(interior_count(P, Int(2)) == 11);
  CHECK(interior_count(P, Int(3)) == 28);

  // summand support offsets, indexed like the (sorted) facet list
  for (std::size_t i = 0; i < P.facets().size(); ++i) {
    CHECK(M.offsets[i][0] + M.offsets[i][1] == P.facets()[i].offset);
    for (int j = 0; j < 2; ++j) {
      const SupportSet& S = j == 0 ? d1 : d2;
      Int mn = Int(1) << 30;
      for (const auto& m : S) {
        Int v(0);
        for (int c = 0; c < 2; ++c) v += m[c] * P.facets()[i].normal[c];
        mn = std::min(mn, v);
      }
      CHECK(M.offsets[i][j] == -mn);
    }
  }
}

TEST_CASE("mixed volumes") {
  SupportSet conic = twice_simplex2();
  CHECK(mixed_volume({conic, conic}) == 4);
  SupportSet d1 = {pt({1, 0}), pt({1, 1}), pt({0, 2})};
  SupportSet d2 = {pt({0, 1}), pt({1, 1}), pt({2, 0})};
  CHECK(mixed_volume({d1, d2}) == 3);
  // MV(P, P) = 2 vol(P) for the quadrangle
  SupportSet quad = {pt({0, 0}), pt({3, 0}), pt({0, 1}), pt({1, 1})};
  CHECK(mixed_volume({quad, quad}) == 4);
  // degenerate: parallel segments
  SupportSet seg = {pt({0, 0}), pt({1, 0})};
  CHECK(mixed_volume({seg, seg}) == 0);
  SupportSet segy = {pt({0, 0}), pt({0, 1})};
  CHECK(mixed_volume({seg, segy}) == 1);
  // 3D: MV of three unit simplices = 1
  SupportSet s3 = {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})};
  CHECK(mixed_volume({s3, s3, s3}) == 1);
}

TEST_CASE("face supports") {
  SupportSet conic = twice_simplex2();
  LatticePolytope P = convex_hull(conic);
  HalfSpace inf{{Int(-1), Int(-1)}, Int(2)};
  FaceData F = face_support({conic, conic}, inf);
  CHECK(F.support_offsets == std::vector<Int>{Int(2), Int(2)});
  CHECK(F.face_points[0] ==
        SupportSet{pt({0, 2}), pt({1, 1}), pt({2, 0})});
  HalfSpace ex{{Int(1), Int(0)}, Int(0)};
  FaceData Fx = face_support({conic}, ex);
  CHECK(Fx.face_points[0] == SupportSet{pt({0, 0}), pt({0, 1}), pt({0, 2})});
  CHECK(Fx.support_offsets[0] == 0);
}

TEST_CASE("lattice indices") {
  CHECK(lattice_index({pt({0, 0}), pt({1, 0}), pt({0, 1})}) == 1);
  CHECK(lattice_index({pt({0, 0}), pt({2, 0}), pt({0, 2})}) == 4);
  CHECK(lattice_index({pt({1, 1}), pt({3, 1}), pt({1, 3})}) == 4);
  // Reeve simplex: vertices span a sublattice of index 2
  CHECK(lattice_index({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}),
                       pt({1, 1, 2})}) == 2);
  CHECK_THROWS_AS(lattice_index({pt({0, 0}), pt({1, 0})}), Error);
  CHECK(!lattice_index_opt({pt({0, 0}), pt({1, 0})}).has_value());
  CHECK(lattice_index_opt({pt({0, 0}), pt({1, 0}), pt({0, 1})}).value() == 1);
}

TEST_CASE("hpoly helpers handle empty and flat regions") {
  // x >= 1 and -x >= 0 is empty
  std::vector<HalfSpace> empty_hs = {{{Int(1)}, Int(-1)}, {{Int(-1)}, Int(0)}};
  CHECK(hpoly_vertices(empty_hs, 1).empty());
  CHECK(hpoly_lattice_points(empty_hs, 1).empty());
  // a single point: x >= 2, -x >= -2
  std::vector<HalfSpace> point_hs = {{{Int(1)}, Int(-2)}, {{Int(-1)}, Int(2)}};
  auto pts = hpoly_lattice_points(point_hs, 1);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == pt({2}));
  // a segment inside the plane: 0 <= x <= 2, 1 <= y <= 1
  std::vector<HalfSpace> seg_hs = {{{Int(1), Int(0)}, Int(0)},
                                   {{Int(-1), Int(0)}, Int(2)},
                                   {{Int(0), Int(1)}, Int(-1)},
                                   {{Int(0), Int(-1)}, Int(1)}};
  CHECK(hpoly_lattice_points(seg_hs, 2).size() == 3);

  // parallel enumeration must match serial exactly
  LatticePolytope P = convex_hull(twice_simplex2());
  CHECK(scaled_lattice_points(P, Int(5), 0, true) ==
        scaled_lattice_points(P, Int(5), 0, false));
  CHECK(scaled_lattice_points(P, Int(5)).size() == 66);  // C(12,2)
}
