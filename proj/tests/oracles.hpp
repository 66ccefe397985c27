// Independent brute-force reference implementations used only by tests.
// Everything here favors clarity over speed and avoids the library's exact
// geometry so the two can disagree.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "exclab/config.hpp"
#include "exclab/lattice.hpp"
#include "exclab/percolation.hpp"

namespace oracles {

inline constexpr double kSqrt3 = 1.7320508075688772;

struct FpPoly {
  std::vector<std::array<double, 2>> v;
};

inline FpPoly fp_tile(exclab::lattice::Model m, exclab::lattice::CellId c) {
  using exclab::lattice::Model;
  FpPoly p;
  if (m == Model::TriangularSite) {
    double cx = c.a + 0.5 * c.b, cy = 0.5 * kSqrt3 * c.b;
    p.v = {{cx + 0.5, cy + kSqrt3 / 6}, {cx, cy + kSqrt3 / 3},  {cx - 0.5, cy + kSqrt3 / 6},
           {cx - 0.5, cy - kSqrt3 / 6}, {cx, cy - kSqrt3 / 3},  {cx + 0.5, cy - kSqrt3 / 6}};
  } else {
    double cx = 0.5 * c.a, cy = 0.5 * c.b;
    p.v = {{cx + 0.5, cy}, {cx, cy + 0.5}, {cx - 0.5, cy}, {cx, cy - 0.5}};
  }
  return p;
}

// Signed SAT margin between a convex polygon and the closed box
// [x0,x1]x[y0,y1]: positive when they overlap on every axis by at least the
// returned amount, negative when some axis separates them by at least |m|.
inline double fp_box_margin(const FpPoly& p, double x0, double y0, double x1, double y1) {
  std::vector<std::array<double, 2>> axes = {{1, 0}, {0, 1}};
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    auto a = p.v[i], b = p.v[(i + 1) % p.v.size()];
    axes.push_back({-(b[1] - a[1]), b[0] - a[0]});
  }
  double margin = 1e300;
  for (auto ax : axes) {
    double n = std::hypot(ax[0], ax[1]);
    if (n < 1e-12) continue;
    double plo = 1e300, phi = -1e300;
    for (auto q : p.v) {
      double t = (q[0] * ax[0] + q[1] * ax[1]) / n;
      plo = std::min(plo, t);
      phi = std::max(phi, t);
    }
    double blo = 1e300, bhi = -1e300;
    for (double bx : {x0, x1})
      for (double by : {y0, y1}) {
        double t = (bx * ax[0] + by * ax[1]) / n;
        blo = std::min(blo, t);
        bhi = std::max(bhi, t);
      }
    margin = std::min(margin, std::min(phi, bhi) - std::max(plo, blo));
  }
  return margin;
}

// All cells whose tile meets [-R,R]^2, found by scanning a generous index
// range and asking the exact predicate cell by cell.
inline std::vector<exclab::lattice::CellId> brute_window(exclab::lattice::Model m, double R,
                                                         int scan) {
  using namespace exclab;
  std::vector<lattice::CellId> out;
  geom::Box box = geom::Box::square(0, 0, geom::scale_coord(R));
  for (int b = -scan; b <= scan; ++b)
    for (int a = -scan; a <= scan; ++a) {
      if (m == lattice::Model::SquareBond && ((a ^ b) & 1) == 0) continue;
      lattice::CellId c{a, b};
      if (geom::tile_intersects_box(lattice::cell_tile(m, c), box)) out.push_back(c);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy longest alternating subsequence of a binary word starting with
// `start`; the classic scan is exact for alternation.
inline int greedy_alternating(const std::vector<int>& w, int start) {
  int need = start, count = 0;
  for (int s : w)
    if (s == need) {
      ++count;
      need = 1 - need;
    }
  return count;
}

// Does the word admit k alternating symbols: in cyclic order (any rotation,
// any starting state) or linearly starting with `start`?
inline bool brute_alternating(const std::vector<int>& w, int k, bool cyclic, int start) {
  if (k <= 0) return true;
  const int m = static_cast<int>(w.size());
  if (m == 0) return false;
  if (!cyclic) return greedy_alternating(w, start) >= k;
  if (k == 1) {
    for (int s : w)
      if (s == start) return true;
    return false;
  }
  for (int off = 0; off < m; ++off) {
    std::vector<int> rot(m);
    for (int i = 0; i < m; ++i) rot[i] = w[(off + i) % m];
    if (greedy_alternating(rot, 0) >= k || greedy_alternating(rot, 1) >= k) return true;
  }
  return false;
}

// Full-scan union-find arm evaluator: rebuilds the annulus complex from the
// query, clusters every cell with its state's relation, and answers the arm
// event through brute_alternating. Independent of ArmContext's lazy growth
// and run counting.
struct BruteArm {
  std::vector<exclab::lattice::CellId> cells;
  std::vector<std::vector<std::uint32_t>> adj_open, adj_closed;
  std::vector<std::uint32_t> ring;  // angular order
  std::vector<char> outer;
  bool cyclic = true;

  static BruteArm build(const exclab::perc::ArmQuery& q) {
    using namespace exclab;
    BruteArm o;
    o.cyclic = (q.geometry == perc::Geometry::Plane);
    std::int64_t sr = geom::scale_coord(q.r), sR = geom::scale_coord(q.R);
    geom::SquareAnnulus ann{0, 0, sr, sR};
    geom::Box inner = geom::Box::square(0, 0, sr);
    geom::Box outer_box = geom::Box::square(0, 0, sR);
    int scan = static_cast<int>(q.R) * 2 + 6;
    for (int b = -scan; b <= scan; ++b)
      for (int a = -scan; a <= scan; ++a) {
        if (q.model == lattice::Model::SquareBond && ((a ^ b) & 1) == 0) continue;
        lattice::CellId c{a, b};
        geom::Tile t = lattice::cell_tile(q.model, c);
        if (!geom::tile_intersects_annulus(t, ann)) continue;
        if (q.geometry != perc::Geometry::Plane &&
            !geom::tile_inside_closed_halfplane(t, geom::HalfPlane::Upper, 0))
          continue;
        if (q.geometry == perc::Geometry::QuarterPlane &&
            !geom::tile_inside_closed_halfplane(t, geom::HalfPlane::Right, 0))
          continue;
        o.cells.push_back(c);
      }
    std::sort(o.cells.begin(), o.cells.end());
    const std::uint32_t n = static_cast<std::uint32_t>(o.cells.size());
    o.adj_open.resize(n);
    o.adj_closed.resize(n);
    auto local = [&o](lattice::CellId c) -> std::int64_t {
      auto it = std::lower_bound(o.cells.begin(), o.cells.end(), c);
      if (it == o.cells.end() || !(*it == c)) return -1;
      return it - o.cells.begin();
    };
    for (std::uint32_t i = 0; i < n; ++i) {
      lattice::CellId nb[lattice::kDegree];
      lattice::neighbors(q.model, false, o.cells[i], nb);
      for (auto c : nb)
        if (auto j = local(c); j >= 0) o.adj_open[i].push_back(static_cast<std::uint32_t>(j));
      lattice::neighbors(q.model, true, o.cells[i], nb);
      for (auto c : nb)
        if (auto j = local(c); j >= 0) o.adj_closed[i].push_back(static_cast<std::uint32_t>(j));
    }
    struct Key {
      double ang, r2;
      std::uint32_t i;
    };
    std::vector<Key> keys;
    o.outer.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      geom::Tile t = lattice::cell_tile(q.model, o.cells[i]);
      o.outer[i] = geom::tile_inside_open_box(t, outer_box) ? 0 : 1;
      if (geom::tile_intersects_box(t, inner)) {
        double x = q.model == lattice::Model::TriangularSite ? o.cells[i].a + 0.5 * o.cells[i].b
                                                             : 0.5 * o.cells[i].a;
        double y = q.model == lattice::Model::TriangularSite ? 0.5 * kSqrt3 * o.cells[i].b
                                                             : 0.5 * o.cells[i].b;
        keys.push_back({std::atan2(y, x), x * x + y * y, i});
      }
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
      if (a.ang != b.ang) return a.ang < b.ang;
      if (a.r2 != b.r2) return a.r2 < b.r2;
      return a.i < b.i;
    });
    for (auto& k : keys) o.ring.push_back(k.i);
    return o;
  }

  std::vector<int> word(const exclab::Config& bits) const {
    const std::uint32_t n = static_cast<std::uint32_t>(cells.size());
    std::vector<std::uint32_t> parent(n);
    for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::uint32_t i = 0; i < n; ++i) {
      bool col = bits.get(i);
      const auto& adj = col ? adj_open[i] : adj_closed[i];
      for (std::uint32_t j : adj)
        if (bits.get(j) == col) parent[find(i)] = find(j);
    }
    std::vector<char> reach(n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
      if (outer[i]) reach[find(i)] = 1;
    std::vector<int> w;
    for (std::uint32_t i : ring)
      if (reach[find(i)]) w.push_back(bits.get(i) ? 1 : 0);
    return w;
  }

  bool event(const exclab::Config& bits, int k, bool start_open) const {
    return brute_alternating(word(bits), k, cyclic, start_open ? 1 : 0);
  }
};

// Literal event: k pairwise disjoint monochromatic paths, one per colour of
// the alternating pattern, each from a ring cell to an outer cell, with the
// ring start cells in increasing ring order (any rotation when cyclic).
// Each arm may be truncated at its first outer cell, so the search only
// extends paths through non-outer cells.
struct DisjointArms {
  const BruteArm& o;
  const exclab::Config& bits;

  bool extend(std::uint32_t cell, int arm, int k, std::uint32_t next_pos,
              std::uint64_t used, bool col) const {
    used |= std::uint64_t{1} << cell;
    if (o.outer[cell]) return place(arm + 1, k, next_pos, used, !col);
    const auto& adj = col ? o.adj_open[cell] : o.adj_closed[cell];
    for (std::uint32_t v : adj)
      if (!(used >> v & 1) && bits.get(v) == col &&
          extend(v, arm, k, next_pos, used, col))
        return true;
    return false;
  }

  bool place(int arm, int k, std::uint32_t from_pos, std::uint64_t used,
             bool col) const {
    if (arm == k) return true;
    for (std::uint32_t p = from_pos; p < o.ring.size(); ++p) {
      std::uint32_t s = o.ring[p];
      if ((used >> s & 1) || bits.get(s) != col) continue;
      if (extend(s, arm, k, p + 1, used, col)) return true;
    }
    return false;
  }

  bool event(int k, bool start_open) const {
    if (o.cells.size() > 64) throw std::runtime_error("mask too small");
    if (!o.cyclic) return place(0, k, 0, 0, start_open);
    // anchor the first arm at every ring position; an alternating cycle is
    // colour-blind for even k, while a lone arm keeps its queried colour
    for (std::uint32_t p = 0; p < o.ring.size(); ++p) {
      std::uint32_t s = o.ring[p];
      if (k == 1 && bits.get(s) != start_open) continue;
      if (extend(s, 0, k, p + 1, 0, bits.get(s))) return true;
    }
    return false;
  }
};

}  // namespace oracles
