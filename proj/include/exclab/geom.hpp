#pragma once

#include <array>
#include <cstdint>

#include "exclab/errors.hpp"

namespace exclab::geom {

// All plane coordinates are rationals with denominator 12, stored scaled by 12.
// Triangular-lattice geometry also needs multiples of sqrt(3); numbers are
// represented as u + v*sqrt(3) in scaled units with exact sign tests, so every
// tile/box predicate below is decided without floating point.
inline constexpr std::int64_t kScale = 12;

struct Q3 {
  std::int64_t u = 0;  // rational part (scaled)
  std::int64_t v = 0;  // sqrt(3) part (scaled)

  friend Q3 operator+(Q3 a, Q3 b) { return {a.u + b.u, a.v + b.v}; }
  friend Q3 operator-(Q3 a, Q3 b) { return {a.u - b.u, a.v - b.v}; }
  friend Q3 operator-(Q3 a) { return {-a.u, -a.v}; }
  friend bool operator==(Q3 a, Q3 b) { return a.u == b.u && a.v == b.v; }
};

inline Q3 rational(std::int64_t u) { return {u, 0}; }

// Exact sign of u + v*sqrt(3).
inline int sign(Q3 a) {
  if (a.u == 0 && a.v == 0) return 0;
  if (a.u >= 0 && a.v >= 0) return 1;
  if (a.u <= 0 && a.v <= 0) return -1;
  __int128 uu = static_cast<__int128>(a.u) * a.u;
  __int128 vv3 = 3 * static_cast<__int128>(a.v) * a.v;
  if (a.u > 0) return uu > vv3 ? 1 : -1;  // v < 0; equality impossible (sqrt3 irrational)
  return uu < vv3 ? 1 : -1;               // u < 0, v > 0
}

inline bool lt(Q3 a, Q3 b) { return sign(a - b) < 0; }
inline bool le(Q3 a, Q3 b) { return sign(a - b) <= 0; }

struct Pt {
  Q3 x, y;
};

// Closed axis-aligned box with rational (scaled) bounds. x0 > x1 or y0 > y1
// denotes the empty box.
struct Box {
  std::int64_t x0 = 0, y0 = 0, x1 = -1, y1 = -1;
  bool empty() const { return x0 > x1 || y0 > y1; }
  static Box square(std::int64_t cx, std::int64_t cy, std::int64_t half) {
    return {cx - half, cy - half, cx + half, cy + half};
  }
};

inline Box intersect(const Box& a, const Box& b) {
  return {a.x0 > b.x0 ? a.x0 : b.x0, a.y0 > b.y0 ? a.y0 : b.y0,
          a.x1 < b.x1 ? a.x1 : b.x1, a.y1 < b.y1 ? a.y1 : b.y1};
}

// Separating axes used by the two tile shapes. Projections stay in Q3:
// X+sqrt(3)Y of (xu+xv√3, yu+yv√3) is (xu+3yv) + (xv+yu)√3.
enum class Axis : std::uint8_t { X, Y, XpY, XmY, XpR3Y, XmR3Y };

inline Q3 project(Pt p, Axis a) {
  switch (a) {
    case Axis::X: return p.x;
    case Axis::Y: return p.y;
    case Axis::XpY: return p.x + p.y;
    case Axis::XmY: return p.x - p.y;
    case Axis::XpR3Y: return {p.x.u + 3 * p.y.v, p.x.v + p.y.u};
    default: return {p.x.u - 3 * p.y.v, p.x.v - p.y.u};  // XmR3Y
  }
}

// Convex tile: a regular hexagon (triangular-lattice site) or a diagonal
// square (Z^2 bond). extra_axes lists the edge normals beyond X and Y.
struct Tile {
  std::array<Pt, 6> v;
  int nv = 0;
  const Axis* extra_axes = nullptr;
  int n_extra = 0;
};

// Closed-closed intersection; touching counts.
bool tile_intersects_box(const Tile& t, const Box& b);
bool tile_inside_open_box(const Tile& t, const Box& b);
bool tile_inside_closed_box(const Tile& t, const Box& b);

enum class HalfPlane : std::uint8_t { Lower, Upper, Left, Right };  // y<=c, y>=c, x<=c, x>=c

bool tile_inside_closed_halfplane(const Tile& t, HalfPlane h, std::int64_t c);
bool tile_touches_closed_halfplane(const Tile& t, HalfPlane h, std::int64_t c);

// Square annulus [c±rout]^2 \ (c±rin)^2 (closed outer, open inner hole).
// rin <= 0 means no hole; rin > rout denotes the empty shape.
struct SquareAnnulus {
  std::int64_t cx = 0, cy = 0, rin = 0, rout = -1;
  Box outer() const { return Box::square(cx, cy, rout); }
  Box hole() const { return rin > 0 ? Box::square(cx, cy, rin) : Box{}; }
};

// Does the tile meet (outer ∩ clip) \ hole?  Decided exactly by testing the
// four closed slabs around the hole; clip may be the everything-box.
bool tile_intersects_annulus(const Tile& t, const SquareAnnulus& a, const Box& clip);
bool tile_intersects_annulus(const Tile& t, const SquareAnnulus& a);

inline constexpr Box kEverything = {INT64_MIN / 4, INT64_MIN / 4, INT64_MAX / 4, INT64_MAX / 4};

// Validates that x is representable on the 1/12 grid and returns x*12.
std::int64_t scale_coord(double x);

}  // namespace exclab::geom
