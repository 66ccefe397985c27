#include "exclab/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace exclab::lattice {

namespace {

constexpr geom::Axis kHexAxes[2] = {geom::Axis::XpR3Y, geom::Axis::XmR3Y};
constexpr geom::Axis kDiamondAxes[2] = {geom::Axis::XpY, geom::Axis::XmY};

bool bond_horizontal(CellId c) { return (c.a & 1) != 0; }

}  // namespace

geom::Pt cell_center(Model m, CellId c) {
  if (m == Model::TriangularSite) {
    return {geom::rational(12LL * c.a + 6LL * c.b), geom::Q3{0, 6LL * c.b}};
  }
  return {geom::rational(6LL * c.a), geom::rational(6LL * c.b)};
}

geom::Tile cell_tile(Model m, CellId c) {
  geom::Tile t;
  geom::Pt ctr = cell_center(m, c);
  if (m == Model::TriangularSite) {
    // Regular hexagon, inradius 1/2, circumradius 1/sqrt(3); edges face the
    // six lattice directions.
    std::int64_t cx = ctr.x.u, cv = ctr.y.v;
    t.v[0] = {geom::rational(cx + 6), geom::Q3{0, cv + 2}};
    t.v[1] = {geom::rational(cx), geom::Q3{0, cv + 4}};
    t.v[2] = {geom::rational(cx - 6), geom::Q3{0, cv + 2}};
    t.v[3] = {geom::rational(cx - 6), geom::Q3{0, cv - 2}};
    t.v[4] = {geom::rational(cx), geom::Q3{0, cv - 4}};
    t.v[5] = {geom::rational(cx + 6), geom::Q3{0, cv - 2}};
    t.nv = 6;
    t.extra_axes = kHexAxes;
    t.n_extra = 2;
  } else {
    // Diagonal unit square: two corners at the edge's endpoints, two at the
    // adjacent face centers.
    std::int64_t cx = ctr.x.u, cy = ctr.y.u;
    t.v[0] = {geom::rational(cx + 6), geom::rational(cy)};
    t.v[1] = {geom::rational(cx), geom::rational(cy + 6)};
    t.v[2] = {geom::rational(cx - 6), geom::rational(cy)};
    t.v[3] = {geom::rational(cx), geom::rational(cy - 6)};
    t.nv = 4;
    t.extra_axes = kDiamondAxes;
    t.n_extra = 2;
  }
  return t;
}

void neighbors(Model m, bool closed_side, CellId c, CellId out[kDegree]) {
  if (m == Model::TriangularSite) {
    out[0] = {c.a + 1, c.b};
    out[1] = {c.a - 1, c.b};
    out[2] = {c.a, c.b + 1};
    out[3] = {c.a, c.b - 1};
    out[4] = {c.a + 1, c.b - 1};
    out[5] = {c.a - 1, c.b + 1};
    return;
  }
  // Open clusters join edges through shared endpoints, closed clusters
  // through shared faces; the two patterns swap with the edge orientation.
  bool along_x = bond_horizontal(c) != closed_side;
  if (along_x) {
    out[0] = {c.a + 2, c.b};
    out[1] = {c.a - 2, c.b};
  } else {
    out[0] = {c.a, c.b + 2};
    out[1] = {c.a, c.b - 2};
  }
  out[2] = {c.a + 1, c.b + 1};
  out[3] = {c.a + 1, c.b - 1};
  out[4] = {c.a - 1, c.b + 1};
  out[5] = {c.a - 1, c.b - 1};
}

void bond_endpoints(CellId edge, VertexId out[2]) {
  if (bond_horizontal(edge)) {
    out[0] = {edge.a - 1, edge.b};
    out[1] = {edge.a + 1, edge.b};
  } else {
    out[0] = {edge.a, edge.b - 1};
    out[1] = {edge.a, edge.b + 1};
  }
}

void vertex_edges(VertexId v, CellId out[4]) {
  out[0] = {v.a + 1, v.b};
  out[1] = {v.a - 1, v.b};
  out[2] = {v.a, v.b + 1};
  out[3] = {v.a, v.b - 1};
}

Region Region::window(Model m, double R) {
  if (!(R >= 0) || !std::isfinite(R)) throw InvalidParameter("window: R must be >= 0");
  Region r;
  r.model_ = m;
  r.torus_ = false;
  r.window_R_ = R;
  r.scaled_R_ = geom::scale_coord(R);
  geom::Box box = geom::Box::square(0, 0, r.scaled_R_);
  if (m == Model::TriangularSite) {
    long smax = std::lround(std::ceil((R + 0.6) / 0.8660254)) + 1;
    for (long s = -smax; s <= smax; ++s) {
      long qlo = std::lround(std::floor(-R - 1.1 - 0.5 * s));
      long qhi = std::lround(std::ceil(R + 1.1 - 0.5 * s));
      for (long q = qlo; q <= qhi; ++q) {
        CellId c{static_cast<std::int32_t>(q), static_cast<std::int32_t>(s)};
        if (geom::tile_intersects_box(cell_tile(m, c), box)) r.cells_.push_back(c);
      }
    }
  } else {
    long bound = std::lround(std::ceil(2 * R)) + 2;
    for (long b = -bound; b <= bound; ++b)
      for (long a = -bound; a <= bound; ++a) {
        if (((a ^ b) & 1) == 0) continue;  // exactly one odd component
        CellId c{static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)};
        if (geom::tile_intersects_box(cell_tile(m, c), box)) r.cells_.push_back(c);
      }
  }
  if (r.cells_.size() > (1u << 26)) throw SizeCap("window: too many cells");
  std::sort(r.cells_.begin(), r.cells_.end());
  r.build_index_and_adj();
  return r;
}

Region Region::torus(Model m, int L) {
  if (L < 2 || (L % 2) != 0) throw InvalidParameter("torus: L must be even and >= 2");
  if (L > 4096) throw SizeCap("torus: L too large");
  Region r;
  r.model_ = m;
  r.torus_ = true;
  r.L_ = L;
  if (m == Model::TriangularSite) {
    r.cells_.reserve(static_cast<std::size_t>(L) * L);
    for (int s = 0; s < L; ++s)
      for (int q = 0; q < L; ++q) r.cells_.push_back({q, s});
  } else {
    r.cells_.reserve(2 * static_cast<std::size_t>(L) * L);
    for (int b = 0; b < 2 * L; ++b)
      for (int a = (b % 2 == 0) ? 1 : 0; a < 2 * L; a += 2) r.cells_.push_back({a, b});
  }
  r.direct_index_ = true;
  r.build_index_and_adj();
  return r;
}

CellId Region::canon(CellId c) const {
  if (!torus_) return c;
  int mod = (model_ == Model::TriangularSite) ? L_ : 2 * L_;
  auto wrap = [mod](std::int32_t x) {
    std::int32_t m = x % mod;
    return m < 0 ? m + mod : m;
  };
  return {wrap(c.a), wrap(c.b)};
}

std::optional<std::uint32_t> Region::find(CellId c) const {
  c = canon(c);
  if (direct_index_) {
    if (model_ == Model::TriangularSite) {
      if (c.a < 0 || c.a >= L_ || c.b < 0 || c.b >= L_) return std::nullopt;
      return static_cast<std::uint32_t>(c.b) * L_ + c.a;
    }
    if (c.a < 0 || c.a >= 2 * L_ || c.b < 0 || c.b >= 2 * L_ || ((c.a ^ c.b) & 1) == 0)
      return std::nullopt;
    return static_cast<std::uint32_t>(c.b) * L_ + (static_cast<std::uint32_t>(c.a) >> 1);
  }
  auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
  if (it == cells_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::uint32_t>(it - cells_.begin());
}

std::uint32_t Region::index_of(CellId c) const {
  auto i = find(c);
  if (!i) throw InvalidParameter("cell not in region");
  return *i;
}

const std::uint32_t* Region::adj(bool closed_side, std::uint32_t i) const {
  const auto& v = (closed_side && model_ == Model::SquareBond) ? adj_closed_ : adj_open_;
  return v.data() + static_cast<std::size_t>(i) * kDegree;
}

void Region::build_index_and_adj() {
  const std::size_t n = cells_.size();
  adj_open_.assign(n * kDegree, kNoCell);
  bool two_relations = (model_ == Model::SquareBond);
  if (two_relations) adj_closed_.assign(n * kDegree, kNoCell);
  CellId nb[kDegree];
  for (std::size_t i = 0; i < n; ++i) {
    neighbors(model_, false, cells_[i], nb);
    for (int k = 0; k < kDegree; ++k)
      if (auto j = find(nb[k])) adj_open_[i * kDegree + k] = *j;
    if (two_relations) {
      neighbors(model_, true, cells_[i], nb);
      for (int k = 0; k < kDegree; ++k)
        if (auto j = find(nb[k])) adj_closed_[i * kDegree + k] = *j;
    }
  }
}

Region cells_in_window(Model m, double R) { return Region::window(m, R); }

std::int64_t tri_dist2(std::int64_t dq, std::int64_t ds) {
  return dq * dq + dq * ds + ds * ds;
}

std::int64_t bond_dist2_doubled(std::int64_t da, std::int64_t db) { return da * da + db * db; }

double distance(const Region& r, CellId a, CellId b) {
  std::int64_t d1 = b.a - static_cast<std::int64_t>(a.a);
  std::int64_t d2 = b.b - static_cast<std::int64_t>(a.b);
  if (!r.is_torus()) {
    if (r.model() == Model::TriangularSite)
      return std::sqrt(static_cast<double>(tri_dist2(d1, d2)));
    return 0.5 * std::sqrt(static_cast<double>(bond_dist2_doubled(d1, d2)));
  }
  std::int64_t period = (r.model() == Model::TriangularSite) ? r.L() : 2 * r.L();
  std::int64_t best = INT64_MAX;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) {
      std::int64_t q = d1 + i * period, s = d2 + j * period;
      std::int64_t d2v = (r.model() == Model::TriangularSite) ? tri_dist2(q, s)
                                                              : bond_dist2_doubled(q, s);
      if (d2v < best) best = d2v;
    }
  double d = std::sqrt(static_cast<double>(best));
  return (r.model() == Model::TriangularSite) ? d : 0.5 * d;
}

Shape Shape::rect(double x0, double y0, double x1, double y1) {
  Shape s;
  std::int64_t sx0 = geom::scale_coord(x0), sy0 = geom::scale_coord(y0);
  std::int64_t sx1 = geom::scale_coord(x1), sy1 = geom::scale_coord(y1);
  if (sx0 > sx1 || sy0 > sy1) throw InvalidParameter("rect: empty");
  s.box = geom::Box{sx0, sy0, sx1, sy1};
  s.is_rect = true;
  return s;
}

Shape Shape::annulus(double cx, double cy, double rin, double rout) {
  Shape s;
  s.ann.cx = geom::scale_coord(cx);
  s.ann.cy = geom::scale_coord(cy);
  s.ann.rin = geom::scale_coord(rin);
  s.ann.rout = geom::scale_coord(rout);
  if (s.ann.rout < 0) throw InvalidParameter("annulus: rout must be >= 0");
  s.is_rect = false;
  return s;
}

namespace {

geom::Box shape_bounds(const Shape& s) { return s.is_rect ? s.box : s.ann.outer(); }

bool tile_meets_shape(const geom::Tile& t, const Shape& s) {
  if (s.is_rect) return geom::tile_intersects_box(t, s.box);
  return geom::tile_intersects_annulus(t, s.ann);
}

}  // namespace

bool percolation_disjoint(Model m, const Shape& A, const Shape& B) {
  constexpr std::int64_t kMargin = 16;  // > tile diameter (14 scaled for hexagons)
  geom::Box ba = shape_bounds(A), bb = shape_bounds(B);
  geom::Box cand = geom::intersect(
      geom::Box{ba.x0 - kMargin, ba.y0 - kMargin, ba.x1 + kMargin, ba.y1 + kMargin},
      geom::Box{bb.x0 - kMargin, bb.y0 - kMargin, bb.x1 + kMargin, bb.y1 + kMargin});
  if (cand.empty()) return true;
  if (m == Model::TriangularSite) {
    long slo = static_cast<long>(std::floor(cand.y0 / (6.0 * 1.7320508))) - 1;
    long shi = static_cast<long>(std::ceil(cand.y1 / (6.0 * 1.7320508))) + 1;
    for (long s = slo; s <= shi; ++s) {
      long qlo = static_cast<long>(std::floor((cand.x0 - 6.0 * s) / 12.0)) - 1;
      long qhi = static_cast<long>(std::ceil((cand.x1 - 6.0 * s) / 12.0)) + 1;
      for (long q = qlo; q <= qhi; ++q) {
        geom::Tile t = cell_tile(m, {static_cast<std::int32_t>(q), static_cast<std::int32_t>(s)});
        if (tile_meets_shape(t, A) && tile_meets_shape(t, B)) return false;
      }
    }
  } else {
    long alo = static_cast<long>(std::floor(cand.x0 / 6.0)) - 1;
    long ahi = static_cast<long>(std::ceil(cand.x1 / 6.0)) + 1;
    long blo = static_cast<long>(std::floor(cand.y0 / 6.0)) - 1;
    long bhi = static_cast<long>(std::ceil(cand.y1 / 6.0)) + 1;
    for (long b = blo; b <= bhi; ++b)
      for (long a = alo; a <= ahi; ++a) {
        if (((a ^ b) & 1) == 0) continue;
        geom::Tile t = cell_tile(m, {static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)});
        if (tile_meets_shape(t, A) && tile_meets_shape(t, B)) return false;
      }
  }
  return true;
}

std::vector<std::uint32_t> half_plane_mask(const Region& r, geom::HalfPlane h,
                                           bool include_straddle) {
  if (r.is_torus()) throw InvalidParameter("half_plane_mask: window regions only");
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < r.size(); ++i) {
    geom::Tile t = cell_tile(r.model(), r.cell(i));
    bool keep = include_straddle ? geom::tile_touches_closed_halfplane(t, h, 0)
                                 : geom::tile_inside_closed_halfplane(t, h, 0);
    if (keep) out.push_back(i);
  }
  return out;
}

}  // namespace exclab::lattice
