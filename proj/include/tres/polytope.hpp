#ifndef TRES_POLYTOPE_HPP
#define TRES_POLYTOPE_HPP

#include <optional>
#include <vector>

#include "tres/rational.hpp"
#include "tres/smith.hpp"

namespace tres {

using LatticePoint = std::vector<Int>;

/// Set of lattice points (typically the support of a Laurent polynomial).
using SupportSet = std::vector<LatticePoint>;

/// Half-space { m : <m, normal> + offset >= 0 } with primitive inner normal.
struct HalfSpace {
  std::vector<Int> normal;
  Int offset;

  bool operator==(const HalfSpace& o) const {
    return normal == o.normal && offset == o.offset;
  }
};

/// Full-dimensional lattice polytope with exact V- and H-representations.
/// Facets are sorted lexicographically by (normal, offset); vertices are
/// sorted lexicographically.  Ambient dimensions 1..3 are supported for
/// hull construction.
class LatticePolytope {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  const std::vector<HalfSpace>& facets() const { return facets_; }

  bool contains(const LatticePoint& m, std::int64_t scale = 1) const;

  /// P scaled by a nonnegative integer factor.
  LatticePolytope scaled(const Int& k) const;

  friend LatticePolytope convex_hull(const SupportSet& points);

 private:
  std::size_t dim_ = 0;
  std::vector<LatticePoint> vertices_;
  std::vector<HalfSpace> facets_;
};

/// Exact convex hull; requires affinely full-dimensional input (EmptyInput /
/// Unsupported otherwise).  Dimensions 1..3.
LatticePolytope convex_hull(const SupportSet& points);

/// Affine rank of a point set (dimension of its affine hull).
std::size_t affine_rank(const SupportSet& points);

/// Rational vertices of { m : <m, h.normal> + h.offset >= 0 for all h }.
/// The region must be bounded (guaranteed when the normals positively span
/// the space); returns an empty list for an empty region.
std::vector<std::vector<BigRational>> hpoly_vertices(
    const std::vector<HalfSpace>& hs, std::size_t dim);

/// All lattice points of the H-polytope, sorted lexicographically.  The
/// enumeration scans an exact bounding box; slices run in parallel and are
/// spliced back in order, so results do not depend on thread count.
std::vector<LatticePoint> hpoly_lattice_points(const std::vector<HalfSpace>& hs,
                                               std::size_t dim,
                                               bool parallel = true);

/// Lattice points of k*P (k >= 0).  `interior_shift` = 1 gives the interior
/// points of k*P instead.
std::vector<LatticePoint> scaled_lattice_points(const LatticePolytope& P,
                                                const Int& k,
                                                int interior_shift = 0,
                                                bool parallel = true);

/// Euclidean volume (length / area / volume) of the hull of the points;
/// 0 when the hull is lower-dimensional.
BigRational volume_of_points(const SupportSet& points);

BigRational volume(const LatticePolytope& P);

/// Minkowski sum data: the sum polytope together with the facet-wise
/// support offsets of each summand.
struct MinkowskiSum {
  LatticePolytope sum;
  /// offsets[i][j] = a_i^j = -min_{m in S_j} <m, eta_i>, indexed by facet i
  /// of `sum` and summand j; the facet offset of the sum is the row sum.
  std::vector<std::vector<Int>> offsets;
};

MinkowskiSum minkowski_sum(const std::vector<SupportSet>& summands);

/// Normalized mixed volume MV(S_1, ..., S_n) via inclusion-exclusion over
/// subset sums; MV(P, ..., P) = n! vol(P).  Always a nonnegative integer.
Int mixed_volume(const std::vector<SupportSet>& supports);

/// Points of each support lying on the face minimizing <., normal>, plus
/// the face offsets.
struct FaceData {
  HalfSpace facet;                        ///< facet of the reference polytope
  std::vector<Int> support_offsets;       ///< a_i^j per support set
  std::vector<SupportSet> face_points;    ///< minimizing points per support
};

FaceData face_support(const std::vector<SupportSet>& supports,
                      const HalfSpace& facet);

/// Index of the affine lattice generated by the points inside Z^n; throws
/// InfiniteIndex when the points do not affinely span.
Int lattice_index(const SupportSet& points);

/// Same, but returns nullopt instead of throwing when rank-deficient.
std::optional<Int> lattice_index_opt(const SupportSet& points);

/// Interior lattice point counts of k*P for k = 1..samples, fitted to the
/// interior Ehrhart polynomial is left to callers; this just counts.
Int interior_count(const LatticePolytope& P, const Int& k);

}  // namespace tres

#endif  // TRES_POLYTOPE_HPP
