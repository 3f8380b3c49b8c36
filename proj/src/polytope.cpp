#include "tres/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tres/error.hpp"
#include "tres/matrix.hpp"

namespace tres {

namespace {

std::vector<Int> point_sub(const LatticePoint& a, const LatticePoint& b) {
  assert(a.size() == b.size());
  std::vector<Int> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  assert(a.size() == b.size());
  Int s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void make_primitive(std::vector<Int>& v) {
  Int g(0);
  for (const Int& e : v) g = gcd(g, e);
  if (g == 0) fail(ErrorCode::Internal, "primitive of zero vector");
  if (g > 1)
    for (Int& e : v) e /= g;
}

SupportSet dedupe(SupportSet pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Int det3(const std::vector<Int>& a, const std::vector<Int>& b,
         const std::vector<Int>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) -
         a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

/// Exact counterclockwise-from-positive-x angular order on nonzero integer
/// 2-vectors.
bool angle_less(const std::vector<Int>& u, const std::vector<Int>& v) {
  auto half = [](const std::vector<Int>& w) {
    if (w[1] != 0) return w[1] > 0 ? 0 : 1;
    return w[0] > 0 ? 0 : 1;
  };
  int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv;
  return u[0] * v[1] - u[1] * v[0] > 0;
}

/// Scales rational direction vectors to integers and angularly sorts the
/// index set.
std::vector<std::size_t> angular_order(
    const std::vector<std::vector<BigRational>>& dirs) {
  std::vector<std::vector<Int>> scaled(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    Int l(1);
    for (const auto& q : dirs[i]) l = lcm(l, denominator(q));
    scaled[i].resize(dirs[i].size());
    for (std::size_t j = 0; j < dirs[i].size(); ++j)
      scaled[i][j] = numerator(dirs[i][j]) * (l / denominator(dirs[i][j]));
  }
  std::vector<std::size_t> order(dirs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return angle_less(scaled[a], scaled[b]);
  });
  return order;
}

/// Vertices of the polygon/polyhedron facet in convex-cycle order.
std::vector<LatticePoint> polygon_cycle(const std::vector<LatticePoint>& pts2d,
                                        const std::vector<LatticePoint>& orig) {
  assert(pts2d.size() == orig.size() && pts2d.size() >= 3);
  std::vector<BigRational> centroid(2, BigRational(0));
  for (const auto& p : pts2d)
    for (int j = 0; j < 2; ++j) centroid[j] += BigRational(p[j]);
  for (int j = 0; j < 2; ++j)
    centroid[j] /= BigRational(static_cast<long>(pts2d.size()));
  std::vector<std::vector<BigRational>> dirs(pts2d.size());
  for (std::size_t i = 0; i < pts2d.size(); ++i) {
    dirs[i] = {BigRational(pts2d[i][0]) - centroid[0],
               BigRational(pts2d[i][1]) - centroid[1]};
  }
  std::vector<LatticePoint> cycle;
  for (std::size_t idx : angular_order(dirs)) cycle.push_back(orig[idx]);
  return cycle;
}

}  // namespace

std::size_t affine_rank(const SupportSet& points) {
  if (points.empty()) return 0;
  const std::size_t n = points[0].size();
  QMatrix M(points.size() - 1 > 0 ? points.size() - 1 : 1, n);
  for (std::size_t i = 1; i < points.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      M.at(i - 1, j) = BigRational(points[i][j] - points[0][j]);
  return points.size() == 1 ? 0 : qrank(M);
}

bool LatticePolytope::contains(const LatticePoint& m, std::int64_t scale) const {
  if (m.size() != dim_) fail(ErrorCode::DimensionMismatch, "contains");
  for (const HalfSpace& h : facets_)
    if (dot(m, h.normal) + Int(scale) * h.offset < 0) return false;
  return true;
}

LatticePolytope LatticePolytope::scaled(const Int& k) const {
  assert(k >= 0);
  LatticePolytope Q = *this;
  for (auto& v : Q.vertices_)
    for (auto& c : v) c *= k;
  for (auto& h : Q.facets_) h.offset *= k;
  Q.vertices_ = dedupe(std::move(Q.vertices_));
  return Q;
}

LatticePolytope convex_hull(const SupportSet& raw_points) {
  if (raw_points.empty()) fail(ErrorCode::EmptyInput, "convex_hull");
  SupportSet pts = dedupe(raw_points);
  const std::size_t n = pts[0].size();
  for (const auto& p : pts)
    if (p.size() != n) fail(ErrorCode::DimensionMismatch, "convex_hull");
  if (n < 1 || n > 3)
    fail(ErrorCode::Unsupported, "convex_hull supports dimensions 1..3");
  if (affine_rank(pts) != n)
    fail(ErrorCode::Unsupported,
         "convex_hull requires full-dimensional input");

  std::set<std::pair<std::vector<Int>, Int>> facet_set;
  auto consider = [&](std::vector<Int> eta) {
    bool zero = true;
    for (const Int& e : eta) zero = zero && e == 0;
    if (zero) return;
    make_primitive(eta);
    Int mn = dot(pts[0], eta);
    for (const auto& p : pts) mn = std::min(mn, dot(p, eta));
    SupportSet eq;
    for (const auto& p : pts)
      if (dot(p, eta) == mn) eq.push_back(p);
    if (affine_rank(eq) == n - 1) facet_set.insert({eta, -mn});
  };

  if (n == 1) {
    consider({Int(1)});
    consider({Int(-1)});
  } else if (n == 2) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i == j) continue;
        std::vector<Int> d = point_sub(pts[j], pts[i]);
        consider({-d[1], d[0]});
      }
  } else {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          std::vector<Int> u = point_sub(pts[j], pts[i]);
          std::vector<Int> v = point_sub(pts[k], pts[i]);
          std::vector<Int> c = {u[1] * v[2] - u[2] * v[1],
                                u[2] * v[0] - u[0] * v[2],
                                u[0] * v[1] - u[1] * v[0]};
          consider(c);
          consider({-c[0], -c[1], -c[2]});
        }
  }

  LatticePolytope P;
  P.dim_ = n;
  for (const auto& [eta, b] : facet_set) P.facets_.push_back({eta, b});
  // facet_set orders by (normal, offset) already

  // Vertices: points whose active facet normals span the space.
  for (const auto& p : pts) {
    IntMatrix active;
    for (const HalfSpace& h : P.facets_)
      if (dot(p, h.normal) + h.offset == 0) active.push_back(h.normal);
    if (active.empty()) continue;
    QMatrix M(active.size(), n);
    for (std::size_t r = 0; r < active.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) M.at(r, c) = BigRational(active[r][c]);
    if (qrank(M) == n) P.vertices_.push_back(p);
  }
  P.vertices_ = dedupe(std::move(P.vertices_));
  if (P.vertices_.empty()) fail(ErrorCode::Internal, "hull without vertices");
  return P;
}

std::vector<std::vector<BigRational>> hpoly_vertices(
    const std::vector<HalfSpace>& hs, std::size_t dim) {
  std::vector<std::vector<BigRational>> verts;
  if (hs.size() < dim) return verts;
  // enumerate all dim-subsets of the halfspaces
  std::vector<std::size_t> comb(dim);
  for (std::size_t i = 0; i < dim; ++i) comb[i] = i;
  for (;;) {
    QMatrix A(dim, dim);
    std::vector<BigRational> b(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c)
        A.at(r, c) = BigRational(hs[comb[r]].normal[c]);
      b[r] = BigRational(-hs[comb[r]].offset);
    }
    if (qdet(A) != 0) {
      std::vector<BigRational> x = qsolve(A, b);
      bool feasible = true;
      for (const HalfSpace& h : hs) {
        BigRational v(h.offset);
        for (std::size_t c = 0; c < dim; ++c)
          v += BigRational(h.normal[c]) * x[c];
        if (v < 0) {
          feasible = false;
          break;
        }
      }
      if (feasible) verts.push_back(std::move(x));
    }
    // next combination
    bool advanced = false;
    for (std::size_t i = dim; i-- > 0;) {
      if (comb[i] < i + hs.size() - dim) {
        ++comb[i];
        for (std::size_t j = i + 1; j < dim; ++j) comb[j] = comb[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  std::sort(verts.begin(), verts.end(), [](const auto& a, const auto& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] < b[k]) return true;
      if (b[k] < a[k]) return false;
    }
    return false;
  });
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

std::vector<LatticePoint> hpoly_lattice_points(const std::vector<HalfSpace>& hs,
                                               std::size_t dim, bool parallel) {
  std::vector<LatticePoint> out;
  auto verts = hpoly_vertices(hs, dim);
  if (verts.empty()) return out;
  std::vector<Int> lo(dim), hi(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    BigRational mn = verts[0][c], mx = verts[0][c];
    for (const auto& v : verts) {
      mn = std::min(mn, v[c]);
      mx = std::max(mx, v[c]);
    }
    lo[c] = floor_div(numerator(mn), denominator(mn));
    hi[c] = -floor_div(-numerator(mx), denominator(mx));  // ceil
  }

  auto satisfies = [&](const LatticePoint& p) {
    for (const HalfSpace& h : hs)
      if (dot(p, h.normal) + h.offset < 0) return false;
    return true;
  };
  auto enumerate_slice = [&](const Int& x0, std::vector<LatticePoint>& dst) {
    LatticePoint p(dim);
    p[0] = x0;
    if (dim == 1) {
      if (satisfies(p)) dst.push_back(p);
      return;
    }
    // odometer over remaining coordinates, lexicographic
    std::vector<Int> cur(dim - 1);
    for (std::size_t c = 1; c < dim; ++c) cur[c - 1] = lo[c];
    for (;;) {
      for (std::size_t c = 1; c < dim; ++c) p[c] = cur[c - 1];
      if (satisfies(p)) dst.push_back(p);
      std::size_t c = dim - 1;
      for (;;) {
        cur[c - 1] += 1;
        if (cur[c - 1] <= hi[c]) break;
        cur[c - 1] = lo[c];
        if (c == 1) return;
        --c;
      }
    }
  };

  std::int64_t slices = to_long(hi[0] - lo[0]) + 1;
  if (slices <= 0) return out;
  std::vector<std::vector<LatticePoint>> buckets(
      static_cast<std::size_t>(slices));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && slices > 2)
#endif
  for (std::int64_t s = 0; s < slices; ++s)
    enumerate_slice(lo[0] + Int(s), buckets[static_cast<std::size_t>(s)]);
  for (auto& b : buckets)
    out.insert(out.end(), std::make_move_iterator(b.begin()),
               std::make_move_iterator(b.end()));
  return out;
}

std::vector<LatticePoint> scaled_lattice_points(const LatticePolytope& P,
                                                const Int& k, int interior_shift,
                                                bool parallel) {
  if (k < 0) fail(ErrorCode::EmptyInput, "negative dilation");
  if (P.facets().empty()) fail(ErrorCode::Unsupported, "polytope without H-rep");
  std::vector<HalfSpace> hs = P.facets();
  for (auto& h : hs) h.offset = h.offset * k - interior_shift;
  return hpoly_lattice_points(hs, P.dim(), parallel);
}

BigRational volume(const LatticePolytope& P) {
  const std::size_t n = P.dim();
  const auto& verts = P.vertices();
  if (n == 1) {
    Int mn = verts.front()[0], mx = verts.front()[0];
    for (const auto& v : verts) {
      mn = std::min(mn, v[0]);
      mx = std::max(mx, v[0]);
    }
    return BigRational(mx - mn);
  }
  if (n == 2) {
    std::vector<LatticePoint> pts2d = verts;
    std::vector<LatticePoint> cycle = polygon_cycle(pts2d, verts);
    Int twice(0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const auto& a = cycle[i];
      const auto& b = cycle[(i + 1) % cycle.size()];
      twice += a[0] * b[1] - a[1] * b[0];
    }
    return make_rational(abs(twice), Int(2));
  }
  assert(n == 3);
  Int six(0);
  for (const HalfSpace& f : P.facets()) {
    std::vector<LatticePoint> on_facet;
    for (const auto& v : verts)
      if (dot(v, f.normal) + f.offset == 0) on_facet.push_back(v);
    assert(on_facet.size() >= 3);
    // 2D coordinates in a lattice basis of the facet plane
    IntMatrix B = kernel_basis_of_row(f.normal);
    std::vector<LatticePoint> coords;
    for (const auto& v : on_facet) {
      std::vector<Int> d = point_sub(v, on_facet[0]);
      auto x = solve_integral_full_rank(B, d);
      if (!x) fail(ErrorCode::Internal, "facet coordinates not integral");
      coords.push_back(*x);
    }
    std::vector<LatticePoint> cycle = polygon_cycle(coords, on_facet);
    // Orient triangles outward (opposite the inner normal).
    for (std::size_t i = 1; i + 1 < cycle.size(); ++i) {
      std::vector<Int> u = point_sub(cycle[i], cycle[0]);
      std::vector<Int> w = point_sub(cycle[i + 1], cycle[0]);
      std::vector<Int> cr = {u[1] * w[2] - u[2] * w[1],
                             u[2] * w[0] - u[0] * w[2],
                             u[0] * w[1] - u[1] * w[0]};
      if (dot(cr, f.normal) > 0)
        six += det3(cycle[0], cycle[i + 1], cycle[i]);
      else
        six += det3(cycle[0], cycle[i], cycle[i + 1]);
    }
  }
  return make_rational(abs(six), Int(6));
}

BigRational volume_of_points(const SupportSet& points) {
  if (points.empty()) fail(ErrorCode::EmptyInput, "volume_of_points");
  const std::size_t n = points[0].size();
  if (affine_rank(points) < n) return BigRational(0);
  return volume(convex_hull(points));
}

MinkowskiSum minkowski_sum(const std::vector<SupportSet>& summands) {
  if (summands.empty()) fail(ErrorCode::EmptyInput, "minkowski_sum");
  for (const SupportSet& S : summands)
    if (S.empty()) fail(ErrorCode::EmptyInput, "empty summand");
  SupportSet total = {LatticePoint(summands[0][0].size(), Int(0))};
  for (const SupportSet& S : summands) {
    SupportSet next;
    next.reserve(total.size() * S.size());
    for (const auto& a : total)
      for (const auto& b : S) {
        LatticePoint p(a.size());
        for (std::size_t c = 0; c < a.size(); ++c) p[c] = a[c] + b[c];
        next.push_back(std::move(p));
      }
    total = dedupe(std::move(next));
  }
  MinkowskiSum out{convex_hull(total), {}};
  for (const HalfSpace& h : out.sum.facets()) {
    std::vector<Int> row;
    Int rowsum(0);
    for (const SupportSet& S : summands) {
      Int mn = dot(S[0], h.normal);
      for (const auto& p : S) mn = std::min(mn, dot(p, h.normal));
      row.push_back(-mn);
      rowsum += -mn;
    }
    assert(rowsum == h.offset);
    out.offsets.push_back(std::move(row));
  }
  return out;
}

Int mixed_volume(const std::vector<SupportSet>& supports) {
  if (supports.empty()) fail(ErrorCode::EmptyInput, "mixed_volume");
  const std::size_t n = supports.size();
  for (const auto& S : supports) {
    if (S.empty()) fail(ErrorCode::EmptyInput, "mixed_volume empty support");
    if (S[0].size() != n)
      fail(ErrorCode::DimensionMismatch,
           "mixed_volume needs as many polytopes as dimensions");
  }
  BigRational mv(0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    SupportSet sum = {LatticePoint(n, Int(0))};
    int bits = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      ++bits;
      SupportSet next;
      next.reserve(sum.size() * supports[j].size());
      for (const auto& a : sum)
        for (const auto& b : supports[j]) {
          LatticePoint p(n);
          for (std::size_t c = 0; c < n; ++c) p[c] = a[c] + b[c];
          next.push_back(std::move(p));
        }
      sum = dedupe(std::move(next));
    }
    BigRational v = volume_of_points(sum);
    if ((n - static_cast<std::size_t>(bits)) % 2 == 1) v = -v;
    mv += v;
  }
  if (!is_integer(mv) || mv < 0)
    fail(ErrorCode::Internal, "mixed volume must be a nonnegative integer");
  return numerator(mv);
}

FaceData face_support(const std::vector<SupportSet>& supports,
                      const HalfSpace& facet) {
  FaceData out;
  out.facet = facet;
  for (const SupportSet& S : supports) {
    if (S.empty()) fail(ErrorCode::EmptyInput, "face_support empty support");
    Int mn = dot(S[0], facet.normal);
    for (const auto& p : S) mn = std::min(mn, dot(p, facet.normal));
    SupportSet face;
    for (const auto& p : S)
      if (dot(p, facet.normal) == mn) face.push_back(p);
    out.support_offsets.push_back(-mn);
    out.face_points.push_back(dedupe(std::move(face)));
  }
  return out;
}

std::optional<Int> lattice_index_opt(const SupportSet& points) {
  if (points.empty()) fail(ErrorCode::EmptyInput, "lattice_index");
  const std::size_t n = points[0].size();
  IntMatrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.push_back(point_sub(points[i], points[0]));
  if (diffs.empty()) return n == 0 ? std::optional<Int>(Int(1)) : std::nullopt;
  return lattice_span_index(diffs, n);
}

Int lattice_index(const SupportSet& points) {
  auto idx = lattice_index_opt(points);
  if (!idx)
    fail(ErrorCode::InfiniteIndex,
         "points do not affinely span the ambient lattice");
  return *idx;
}

Int interior_count(const LatticePolytope& P, const Int& k) {
  return Int(static_cast<long>(scaled_lattice_points(P, k, 1).size()));
}

}  // namespace tres
