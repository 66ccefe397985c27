#include "exclab/geom.hpp"

#include <cmath>

namespace exclab::geom {

namespace {

struct Interval {
  Q3 lo, hi;
};

Interval project_tile(const Tile& t, Axis a) {
  Interval iv{project(t.v[0], a), project(t.v[0], a)};
  for (int i = 1; i < t.nv; ++i) {
    Q3 p = project(t.v[i], a);
    if (lt(p, iv.lo)) iv.lo = p;
    if (lt(iv.hi, p)) iv.hi = p;
  }
  return iv;
}

Interval project_box(const Box& b, Axis a) {
  switch (a) {
    case Axis::X: return {rational(b.x0), rational(b.x1)};
    case Axis::Y: return {rational(b.y0), rational(b.y1)};
    case Axis::XpY: return {rational(b.x0 + b.y0), rational(b.x1 + b.y1)};
    case Axis::XmY: return {rational(b.x0 - b.y1), rational(b.x1 - b.y0)};
    case Axis::XpR3Y: return {{b.x0, b.y0}, {b.x1, b.y1}};
    default: return {{b.x0, -b.y1}, {b.x1, -b.y0}};  // XmR3Y
  }
}

}  // namespace

bool tile_intersects_box(const Tile& t, const Box& b) {
  if (b.empty()) return false;
  constexpr Axis base[2] = {Axis::X, Axis::Y};
  for (Axis a : base) {
    Interval ti = project_tile(t, a);
    Interval bi = project_box(b, a);
    if (lt(ti.hi, bi.lo) || lt(bi.hi, ti.lo)) return false;
  }
  for (int i = 0; i < t.n_extra; ++i) {
    Axis a = t.extra_axes[i];
    Interval ti = project_tile(t, a);
    Interval bi = project_box(b, a);
    if (lt(ti.hi, bi.lo) || lt(bi.hi, ti.lo)) return false;
  }
  return true;
}

bool tile_inside_open_box(const Tile& t, const Box& b) {
  if (b.empty()) return false;
  for (int i = 0; i < t.nv; ++i) {
    const Pt& p = t.v[i];
    if (!(lt(rational(b.x0), p.x) && lt(p.x, rational(b.x1)) && lt(rational(b.y0), p.y) &&
          lt(p.y, rational(b.y1))))
      return false;
  }
  return true;
}

bool tile_inside_closed_box(const Tile& t, const Box& b) {
  if (b.empty()) return false;
  for (int i = 0; i < t.nv; ++i) {
    const Pt& p = t.v[i];
    if (!(le(rational(b.x0), p.x) && le(p.x, rational(b.x1)) && le(rational(b.y0), p.y) &&
          le(p.y, rational(b.y1))))
      return false;
  }
  return true;
}

bool tile_inside_closed_halfplane(const Tile& t, HalfPlane h, std::int64_t c) {
  for (int i = 0; i < t.nv; ++i) {
    const Pt& p = t.v[i];
    bool ok = false;
    switch (h) {
      case HalfPlane::Lower: ok = le(p.y, rational(c)); break;
      case HalfPlane::Upper: ok = le(rational(c), p.y); break;
      case HalfPlane::Left: ok = le(p.x, rational(c)); break;
      case HalfPlane::Right: ok = le(rational(c), p.x); break;
    }
    if (!ok) return false;
  }
  return true;
}

bool tile_touches_closed_halfplane(const Tile& t, HalfPlane h, std::int64_t c) {
  for (int i = 0; i < t.nv; ++i) {
    const Pt& p = t.v[i];
    bool ok = false;
    switch (h) {
      case HalfPlane::Lower: ok = le(p.y, rational(c)); break;
      case HalfPlane::Upper: ok = le(rational(c), p.y); break;
      case HalfPlane::Left: ok = le(p.x, rational(c)); break;
      case HalfPlane::Right: ok = le(rational(c), p.x); break;
    }
    if (ok) return true;
  }
  return false;
}

bool tile_intersects_annulus(const Tile& t, const SquareAnnulus& a, const Box& clip) {
  if (a.rout < 0 || a.rin > a.rout) return false;
  Box outer = intersect(a.outer(), clip);
  if (outer.empty()) return false;
  if (a.rin <= 0) return tile_intersects_box(t, outer);
  Box hole = a.hole();
  // The annulus is the union of the four closed slabs of `outer` on each side
  // of the open hole; a convex tile meets it iff it meets one of them.
  Box s0 = {outer.x0, outer.y0, hole.x0, outer.y1};  // x <= hole.x0
  Box s1 = {hole.x1, outer.y0, outer.x1, outer.y1};  // x >= hole.x1
  Box s2 = {outer.x0, outer.y0, outer.x1, hole.y0};  // y <= hole.y0
  Box s3 = {outer.x0, hole.y1, outer.x1, outer.y1};  // y >= hole.y1
  for (const Box& s : {s0, s1, s2, s3}) {
    Box ss = intersect(s, outer);
    if (!ss.empty() && tile_intersects_box(t, ss)) return true;
  }
  return false;
}

bool tile_intersects_annulus(const Tile& t, const SquareAnnulus& a) {
  return tile_intersects_annulus(t, a, kEverything);
}

std::int64_t scale_coord(double x) {
  double s = x * static_cast<double>(kScale);
  double r = std::nearbyint(s);
  if (std::abs(s - r) > 1e-9 || std::abs(r) > 9.0e15)
    throw GeometryError("coordinate not representable on the 1/12 grid");
  return static_cast<std::int64_t>(r);
}

}  // namespace exclab::geom
