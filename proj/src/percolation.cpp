#include "exclab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace exclab::perc {

namespace {

// open-bit threshold on 53 bits: exact for dyadic p (1/2, 1/4, 0, 1)
std::uint64_t bit_threshold(double p) {
  if (!(p >= 0 && p <= 1)) throw InvalidParameter("p outside [0,1]");
  return static_cast<std::uint64_t>(std::llround(std::ldexp(p, 53)));
}

double cell_cx(lattice::Model m, lattice::CellId c) {
  return m == lattice::Model::TriangularSite ? c.a + 0.5 * c.b : 0.5 * c.a;
}
double cell_cy(lattice::Model m, lattice::CellId c) {
  return m == lattice::Model::TriangularSite ? 0.8660254037844386 * c.b : 0.5 * c.b;
}

// strand end kinds; kVert marks a still-unclipped segment endpoint
constexpr std::uint8_t kJunc = 0, kInnerEnd = 1, kOuterEnd = 2, kWallEnd = 3, kVert = 4;

int end_rank(std::uint8_t k) {
  switch (k) {
    case kInnerEnd: return 3;  // a point on the inner curve is never on the outer one
    case kOuterEnd: return 2;
    case kWallEnd: return 1;
    default: return 0;
  }
}

// exact parameter along a segment, num/den with den > 0; magnitudes stay tiny
struct TFrac {
  geom::Q3 n{0, 0};
  std::int64_t d = 1;
};

int tf_cmp(const TFrac& a, const TFrac& b) {
  return geom::sign({a.n.u * b.d - b.n.u * a.d, a.n.v * b.d - b.n.v * a.d});
}

// parameter where from + t*delta == c; delta is purely rational or a pure
// sqrt(3) multiple (lattice segments vary each coordinate in one field only)
TFrac seg_param(geom::Q3 from, geom::Q3 delta, std::int64_t c) {
  geom::Q3 num = geom::rational(c) - from;
  TFrac t;
  if (delta.v == 0) {
    t.n = num;
    t.d = delta.u;
  } else {
    t.n = {3 * num.v, num.u};  // rationalised by sqrt(3)
    t.d = 3 * delta.v;
  }
  if (t.d < 0) {
    t.n = -t.n;
    t.d = -t.d;
  }
  return t;
}

// Clips a tiling edge to {|x| < R, |y| < R} (walls intersected, the closed
// square {|x|,|y| <= r} removed). That set is exactly the open annulus
// {r < |x|_inf < R} restricted to the half/quarter plane, so a surviving end
// is either a strict-interior vertex or a boundary attachment. At each end
// the most specific boundary wins: inner curve, then outer curve, then wall.
struct SegmentClipper {
  std::int64_t sr, sR;
  bool wall_y, wall_x;
  geom::Pt P0, P1;
  geom::Q3 dx, dy;

  struct Out {
    TFrac lo, hi;
    std::uint8_t lo_k, hi_k;
  };

  int clip(Out out[2]) const {
    TFrac lo{geom::rational(0), 1}, hi{geom::rational(1), 1};
    std::uint8_t lo_k = kVert, hi_k = kVert;
    bool dead = false;
    auto shrink = [&](int s0, int s1, geom::Q3 from, geom::Q3 delta, std::int64_t c,
                      std::uint8_t kind) {
      // keeps {t : side(t) > 0}; sign pair decides without dividing
      if (dead || (s0 > 0 && s1 > 0)) return;
      if (s0 <= 0 && s1 <= 0) {
        dead = true;  // covers segments lying on the line itself
        return;
      }
      TFrac t = seg_param(from, delta, c);
      if (s0 > 0) {
        int cp = tf_cmp(t, hi);
        if (cp < 0) {
          hi = t;
          hi_k = kind;
        } else if (cp == 0 && end_rank(kind) > end_rank(hi_k)) {
          hi_k = kind;
        }
      } else {
        int cp = tf_cmp(t, lo);
        if (cp > 0) {
          lo = t;
          lo_k = kind;
        } else if (cp == 0 && end_rank(kind) > end_rank(lo_k)) {
          lo_k = kind;
        }
      }
    };
    auto xs = [&](const geom::Pt& P, std::int64_t c) { return geom::sign(P.x - geom::rational(c)); };
    auto ys = [&](const geom::Pt& P, std::int64_t c) { return geom::sign(P.y - geom::rational(c)); };
    shrink(-xs(P0, sR), -xs(P1, sR), P0.x, dx, sR, kOuterEnd);
    shrink(xs(P0, -sR), xs(P1, -sR), P0.x, dx, -sR, kOuterEnd);
    shrink(-ys(P0, sR), -ys(P1, sR), P0.y, dy, sR, kOuterEnd);
    shrink(ys(P0, -sR), ys(P1, -sR), P0.y, dy, -sR, kOuterEnd);
    if (wall_y) shrink(ys(P0, 0), ys(P1, 0), P0.y, dy, 0, kWallEnd);
    if (wall_x) shrink(xs(P0, 0), xs(P1, 0), P0.x, dx, 0, kWallEnd);
    if (dead || tf_cmp(lo, hi) >= 0) return 0;
    // closed hole: a single parameter interval, possibly a point
    TFrac h0{geom::rational(0), 1}, h1{geom::rational(1), 1};
    bool has_hole = true;
    auto hole_bound = [&](int s0, int s1, geom::Q3 from, geom::Q3 delta, std::int64_t c) {
      if (!has_hole || (s0 >= 0 && s1 >= 0)) return;
      if (s0 < 0 && s1 < 0) {
        has_hole = false;
        return;
      }
      TFrac t = seg_param(from, delta, c);
      if (s0 < 0) {
        if (tf_cmp(t, h0) > 0) h0 = t;
      } else {
        if (tf_cmp(t, h1) < 0) h1 = t;
      }
    };
    hole_bound(-xs(P0, sr), -xs(P1, sr), P0.x, dx, sr);
    hole_bound(xs(P0, -sr), xs(P1, -sr), P0.x, dx, -sr);
    hole_bound(-ys(P0, sr), -ys(P1, sr), P0.y, dy, sr);
    hole_bound(ys(P0, -sr), ys(P1, -sr), P0.y, dy, -sr);
    if (has_hole && tf_cmp(h0, h1) <= 0 && tf_cmp(h0, hi) <= 0 && tf_cmp(h1, lo) >= 0) {
      int n = 0;
      if (tf_cmp(lo, h0) < 0) out[n++] = {lo, h0, lo_k, kInnerEnd};
      if (tf_cmp(h1, hi) < 0) out[n++] = {h1, hi, kInnerEnd, hi_k};
      return n;
    }
    out[0] = {lo, hi, lo_k, hi_k};
    return 1;
  }
};

}  // namespace

ArmContext::ArmContext(const ArmQuery& q) : q_(q) {
  using lattice::CellId;
  using lattice::Model;
  if (q.k < 1) throw InvalidParameter("arm count must be >= 1");
  cyclic_ = (q.geometry == Geometry::Plane);
  if (cyclic_ && q.k > 1 && (q.k % 2) != 0)
    throw InvalidParameter("odd alternating arm cycles are ill-defined in the plane");
  std::int64_t sr = geom::scale_coord(q.r), sR = geom::scale_coord(q.R);
  if (sr < 0 || sR < 0) throw InvalidParameter("radii must be >= 0");
  if (sr >= sR) {
    trivial_ = true;  // crossing a void annulus holds by convention
    return;
  }
  geom::SquareAnnulus ann{0, 0, sr, sR};
  geom::Box inner = geom::Box::square(0, 0, sr);
  geom::Box outer_box = geom::Box::square(0, 0, sR);
  lattice::Region win = lattice::Region::window(q.model, q.R);
  for (std::uint32_t i = 0; i < win.size(); ++i) {
    CellId c = win.cell(i);
    geom::Tile t = lattice::cell_tile(q.model, c);
    if (!geom::tile_intersects_annulus(t, ann)) continue;
    if (q.geometry != Geometry::Plane &&
        !geom::tile_inside_closed_halfplane(t, geom::HalfPlane::Upper, 0))
      continue;
    if (q.geometry == Geometry::QuarterPlane &&
        !geom::tile_inside_closed_halfplane(t, geom::HalfPlane::Right, 0))
      continue;
    cells_.push_back(c);
  }
  const std::uint32_t n = static_cast<std::uint32_t>(cells_.size());
  auto local = [this](CellId c) -> std::uint32_t {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
    if (it == cells_.end() || !(*it == c)) return lattice::kNoCell;
    return static_cast<std::uint32_t>(it - cells_.begin());
  };
  const bool bond = (q.model == Model::SquareBond);
  adj_open_.assign(std::size_t{6} * n, lattice::kNoCell);
  if (bond) adj_closed_.assign(std::size_t{6} * n, lattice::kNoCell);
  CellId nb[lattice::kDegree];
  for (std::uint32_t i = 0; i < n; ++i) {
    lattice::neighbors(q.model, false, cells_[i], nb);
    for (int t = 0; t < 6; ++t) adj_open_[std::size_t{6} * i + t] = local(nb[t]);
    if (bond) {
      lattice::neighbors(q.model, true, cells_[i], nb);
      for (int t = 0; t < 6; ++t) adj_closed_[std::size_t{6} * i + t] = local(nb[t]);
    }
  }
  outer_.assign(n, 0);
  struct RingKey {
    double angle, rad2;
    std::uint32_t idx;
  };
  std::vector<RingKey> keys;
  for (std::uint32_t i = 0; i < n; ++i) {
    geom::Tile t = lattice::cell_tile(q.model, cells_[i]);
    outer_[i] = geom::tile_inside_open_box(t, outer_box) ? 0 : 1;
    if (geom::tile_intersects_box(t, inner)) {
      double x = cell_cx(q.model, cells_[i]), y = cell_cy(q.model, cells_[i]);
      keys.push_back({std::atan2(y, x), x * x + y * y, i});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const RingKey& a, const RingKey& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    if (a.rad2 != b.rad2) return a.rad2 < b.rad2;
    return a.idx < b.idx;
  });
  ring_.reserve(keys.size());
  for (const RingKey& k : keys) ring_.push_back(k.idx);
  if (q.k >= 2) {
    if (sr <= 0) throw InvalidParameter("multi-arm events need a positive inner radius");
    build_strands(sr, sR);
  }
}

// Builds the interface pieces: every tiling edge between two context cells is
// clipped to the open annulus, junctions are the tiling vertices that survive
// unclipped. A vertex strictly inside the annulus always sees all its edges,
// so every junction slot between two present cells ends up wired.
void ArmContext::build_strands(std::int64_t sr, std::int64_t sR) {
  using lattice::CellId;
  using lattice::kNoCell;
  const bool bond = (q_.model == lattice::Model::SquareBond);
  auto local = [this](CellId c) -> std::uint32_t {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
    if (it == cells_.end() || !(*it == c)) return kNoCell;
    return static_cast<std::uint32_t>(it - cells_.begin());
  };
  std::unordered_map<std::uint64_t, std::uint32_t> vmap;
  vmap.reserve(2 * cells_.size());
  auto vkey = [](geom::Pt P) {
    // one of y.u, y.v is always zero (rational on bonds, sqrt(3) on sites)
    std::uint64_t a = static_cast<std::uint64_t>(P.x.u + (1 << 24));
    std::uint64_t b = static_cast<std::uint64_t>(P.y.u + P.y.v + (1 << 24));
    return (a << 32) | b;
  };
  auto junc_site = [&](geom::Pt P, std::uint32_t ca, std::uint32_t cb, CellId third) {
    auto [it, fresh] = vmap.try_emplace(vkey(P), static_cast<std::uint32_t>(juncs_.size()));
    if (fresh) {
      StrandJunction j;
      j.deg = 3;
      j.cell[0] = ca;
      j.cell[1] = cb;
      j.cell[2] = local(third);
      j.cell[3] = kNoCell;
      for (auto& p : j.piece) p = kNoCell;
      juncs_.push_back(j);
    }
    return it->second;
  };
  auto junc_bond = [&](geom::Pt P) {
    auto [it, fresh] = vmap.try_emplace(vkey(P), static_cast<std::uint32_t>(juncs_.size()));
    if (fresh) {
      std::int32_t wa = static_cast<std::int32_t>(P.x.u / 6);
      std::int32_t wb = static_cast<std::int32_t>(P.y.u / 6);
      StrandJunction j;
      j.deg = 4;
      j.wrap_open = (wa & 1) != 0;  // dual vertex: closed edges connect through it
      j.cell[0] = local({static_cast<std::int32_t>(wa + 1), wb});
      j.cell[1] = local({wa, static_cast<std::int32_t>(wb + 1)});
      j.cell[2] = local({static_cast<std::int32_t>(wa - 1), wb});
      j.cell[3] = local({wa, static_cast<std::int32_t>(wb - 1)});
      for (auto& p : j.piece) p = kNoCell;
      juncs_.push_back(j);
    }
    return it->second;
  };
  auto slot_of = [](const StrandJunction& j, std::uint32_t ca, std::uint32_t cb) {
    for (int s = 0; s < j.deg; ++s) {
      std::uint32_t x = j.cell[s], y = j.cell[(s + 1) % j.deg];
      if ((x == ca && y == cb) || (x == cb && y == ca)) return s;
    }
    throw std::logic_error("junction does not carry the registering edge");
  };
  struct EdgeDef {
    CellId d;        // partner cell
    geom::Pt p0, p1;
    CellId t0, t1;   // third cell at each endpoint (site tiling only)
  };
  SegmentClipper::Out out[2];
  for (std::uint32_t i = 0; i < cells_.size(); ++i) {
    CellId c = cells_[i];
    EdgeDef edges[3];
    int ne;
    if (!bond) {
      std::int64_t cx = 12LL * c.a + 6LL * c.b, cv = 6LL * c.b;
      edges[0] = {{c.a + 1, c.b},
                  {geom::rational(cx + 6), {0, cv - 2}},
                  {geom::rational(cx + 6), {0, cv + 2}},
                  {c.a + 1, c.b - 1},
                  {c.a, c.b + 1}};
      edges[1] = {{c.a, c.b + 1},
                  {geom::rational(cx + 6), {0, cv + 2}},
                  {geom::rational(cx), {0, cv + 4}},
                  {c.a + 1, c.b},
                  {c.a - 1, c.b + 1}};
      edges[2] = {{c.a + 1, c.b - 1},
                  {geom::rational(cx), {0, cv - 4}},
                  {geom::rational(cx + 6), {0, cv - 2}},
                  {c.a, c.b - 1},
                  {c.a + 1, c.b}};
      ne = 3;
    } else {
      std::int64_t cx = 6LL * c.a, cy = 6LL * c.b;
      edges[0] = {{c.a + 1, c.b + 1},
                  {geom::rational(cx + 6), geom::rational(cy)},
                  {geom::rational(cx), geom::rational(cy + 6)},
                  {},
                  {}};
      edges[1] = {{c.a + 1, c.b - 1},
                  {geom::rational(cx), geom::rational(cy - 6)},
                  {geom::rational(cx + 6), geom::rational(cy)},
                  {},
                  {}};
      ne = 2;
    }
    for (int ei = 0; ei < ne; ++ei) {
      const EdgeDef& e = edges[ei];
      std::uint32_t dl = local(e.d);
      if (dl == kNoCell) continue;
      SegmentClipper clipper{sr,
                             sR,
                             q_.geometry != Geometry::Plane,
                             q_.geometry == Geometry::QuarterPlane,
                             e.p0,
                             e.p1,
                             e.p1.x - e.p0.x,
                             e.p1.y - e.p0.y};
      int np = clipper.clip(out);
      for (int pi = 0; pi < np; ++pi) {
        std::uint32_t pid = static_cast<std::uint32_t>(pieces_.size());
        StrandPiece sp;
        sp.c = i;
        sp.d = dl;
        auto resolve = [&](std::uint8_t kind, int side) {
          StrandEnd en;
          if (kind == kVert) {
            geom::Pt V = side == 0 ? e.p0 : e.p1;
            std::uint32_t jid =
                bond ? junc_bond(V) : junc_site(V, i, dl, side == 0 ? e.t0 : e.t1);
            StrandJunction& J = juncs_[jid];
            int s = slot_of(J, i, dl);
            J.piece[s] = pid;
            J.end_bits = static_cast<std::uint8_t>((J.end_bits & ~(1u << s)) |
                                                   (static_cast<unsigned>(side) << s));
            en.kind = kJunc;
            en.link = jid;
            en.slot = static_cast<std::uint8_t>(s);
          } else {
            en.kind = kind;
            if (kind == kInnerEnd) inner_starts_.push_back((pid << 1) | side);
            if (kind == kOuterEnd) outer_starts_.push_back((pid << 1) | side);
          }
          return en;
        };
        sp.end[0] = resolve(out[pi].lo_k, 0);
        sp.end[1] = resolve(out[pi].hi_k, 1);
        pieces_.push_back(sp);
      }
    }
  }
}

// Follows one boundary strand from a curve attachment to its other end.
// Junction rules: on the site tiling the boundary continues along whichever
// pair of the three cells changes colour; on the bond tiling it wraps around
// the maximal same-colour run joined through the vertex (closed runs at a
// primal vertex, open runs at a dual one). An absent tile stops the strand.
template <class F>
int ArmContext::count_strands(F& open_bit, bool from_outer) const {
  const std::vector<std::uint32_t>& starts = from_outer ? outer_starts_ : inner_starts_;
  const std::uint8_t goal = from_outer ? kInnerEnd : kOuterEnd;
  const std::size_t cap = pieces_.size() + 4;
  int m = 0;
  for (std::uint32_t s : starts) {
    const StrandPiece* p = &pieces_[s >> 1];
    int tow = 1 - static_cast<int>(s & 1);
    if (open_bit(p->c) == open_bit(p->d)) continue;
    for (std::size_t steps = 0;;) {
      if (++steps > cap) throw std::logic_error("strand walk failed to terminate");
      const StrandEnd& e = p->end[tow];
      if (e.kind != kJunc) {
        if (e.kind == goal) ++m;
        break;
      }
      const StrandJunction& J = juncs_[e.link];
      int ns;
      if (J.deg == 3) {
        int s0 = e.slot, s1 = (s0 + 1) % 3, s2 = (s0 + 2) % 3;
        std::uint32_t other = J.cell[s2];
        if (other == lattice::kNoCell) break;  // coastline tile
        ns = open_bit(other) == open_bit(J.cell[s0]) ? s1 : s2;
      } else {
        int sA = e.slot, sB = (sA + 1) & 3;
        const bool wrap = J.wrap_open;
        int idx, dir;
        if (open_bit(J.cell[sA]) == wrap) {
          idx = sA;
          dir = 3;
        } else {
          idx = sB;
          dir = 1;
        }
        ns = -1;
        for (int st = 0; st < 3; ++st) {
          int nx = (idx + dir) & 3;
          std::uint32_t cc = J.cell[nx];
          if (cc == lattice::kNoCell) break;
          if (open_bit(cc) == wrap) {
            idx = nx;
            continue;
          }
          ns = dir == 1 ? idx : nx;
          break;
        }
        if (ns < 0) break;  // the run ends on the coastline
      }
      std::uint32_t pid = J.piece[ns];
      if (pid == lattice::kNoCell) throw std::logic_error("junction slot left unwired");
      p = &pieces_[pid];
      tow = 1 - ((J.end_bits >> ns) & 1);
    }
  }
  return m;
}

int ArmContext::crossing_interfaces(const Config& bits, bool from_outer) const {
  if (q_.k < 2 || trivial_)
    throw InvalidParameter("interface tables exist for multi-arm contexts only");
  if (bits.size() != cells_.size()) throw InvalidParameter("config size mismatch");
  auto f = [&bits](std::uint32_t j) { return bits.get(j); };
  return count_strands(f, from_outer);
}

template <class F>
bool ArmContext::grow(std::uint32_t j0, bool col, F& open_bit) const {
  const std::uint32_t* adj =
      (col || adj_closed_.empty()) ? adj_open_.data() : adj_closed_.data();
  bool reach = false;
  stack_.clear();
  painted_.clear();
  epoch_[j0] = cur_epoch_;
  stack_.push_back(j0);
  while (!stack_.empty()) {
    std::uint32_t j = stack_.back();
    stack_.pop_back();
    painted_.push_back(j);
    if (outer_[j]) reach = true;
    const std::uint32_t* nb = adj + std::size_t{6} * j;
    for (int t = 0; t < 6; ++t) {
      std::uint32_t v = nb[t];
      if (v == lattice::kNoCell || epoch_[v] == cur_epoch_) continue;
      if (open_bit(v) == col) {
        epoch_[v] = cur_epoch_;
        stack_.push_back(v);
      }
    }
  }
  // the whole cluster is painted so later attachment cells reuse the flag
  for (std::uint32_t v : painted_) reach_[v] = reach ? 1 : 0;
  return reach;
}

template <class F>
bool ArmContext::eval_impl(F&& open_bit) const {
  if (trivial_) return true;
  if (ring_.empty()) return false;
  if (q_.k >= 2) {
    int m = count_strands(open_bit, false);
    if (cyclic_) return m >= q_.k;
    if (q_.k <= m) return true;
    if (q_.k > m + 1) return false;
    // k == m + 1: the extra arm exists iff the crossing cluster nearest the
    // positive-x end of the inner curve carries the wanted state
  }
  if (epoch_.size() != cells_.size()) {
    epoch_.assign(cells_.size(), 0);
    reach_.assign(cells_.size(), 0);
    cur_epoch_ = 0;
  }
  if (++cur_epoch_ == 0) {
    std::fill(epoch_.begin(), epoch_.end(), 0);
    cur_epoch_ = 1;
  }
  const bool want = q_.start_open;
  for (std::uint32_t j : ring_) {
    bool col = open_bit(j);
    if (q_.k == 1 && col != want) continue;  // only one state can supply the arm
    bool reach = (epoch_[j] == cur_epoch_) ? (reach_[j] != 0) : grow(j, col, open_bit);
    if (!reach) continue;
    return col == want;
  }
  return false;
}

bool ArmContext::eval(const Config& bits) const {
  if (trivial_) return true;
  if (bits.size() != cells_.size()) throw InvalidParameter("config size mismatch");
  return eval_impl([&bits](std::uint32_t j) { return bits.get(j); });
}

bool ArmContext::eval_sampled(const rng::Stream& st, double p) const {
  const std::uint64_t thr = bit_threshold(p);
  return eval_impl([&st, thr](std::uint32_t j) { return (st.at(j) >> 11) < thr; });
}

Estimate ArmContext::estimate(double p, std::uint64_t samples,
                                        std::uint64_t seed) const {
  if (samples == 0) throw InvalidParameter("samples must be >= 1");
  bit_threshold(p);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    rng::Stream st(seed, i);
    if (eval_sampled(st, p)) ++hits;
  }
  return binomial_estimate(hits, samples);
}

Estimate estimate_alpha(const ArmQuery& q, double p, std::uint64_t samples,
                                  std::uint64_t seed) {
  return ArmContext(q).estimate(p, samples, seed);
}

RadialContext::RadialContext(lattice::Model m, double R)
    : reg_(lattice::Region::window(m, R)) {
  geom::Box outer_box = geom::Box::square(0, 0, reg_.scaled_R());
  outer_.assign(reg_.size(), 0);
  for (std::uint32_t i = 0; i < reg_.size(); ++i)
    outer_[i] =
        geom::tile_inside_open_box(lattice::cell_tile(m, reg_.cell(i)), outer_box) ? 0 : 1;
  if (m == lattice::Model::TriangularSite) {
    start_.push_back(reg_.index_of({0, 0}));
  } else {
    for (lattice::CellId e : {lattice::CellId{1, 0}, lattice::CellId{-1, 0},
                              lattice::CellId{0, 1}, lattice::CellId{0, -1}})
      start_.push_back(reg_.index_of(e));
  }
}

template <class F>
bool RadialContext::eval_impl(F&& open_bit) const {
  if (reg_.scaled_R() == 0) return true;  // zero radius is reached by convention
  if (epoch_.size() != reg_.size()) {
    epoch_.assign(reg_.size(), 0);
    cur_epoch_ = 0;
  }
  if (++cur_epoch_ == 0) {
    std::fill(epoch_.begin(), epoch_.end(), 0);
    cur_epoch_ = 1;
  }
  for (std::uint32_t s : start_) {
    if (epoch_[s] == cur_epoch_ || !open_bit(s)) continue;
    epoch_[s] = cur_epoch_;
    stack_.clear();
    stack_.push_back(s);
    while (!stack_.empty()) {
      std::uint32_t j = stack_.back();
      stack_.pop_back();
      if (outer_[j]) return true;
      const std::uint32_t* nb = reg_.adj(false, j);
      for (int t = 0; t < 6; ++t) {
        std::uint32_t v = nb[t];
        if (v == lattice::kNoCell || epoch_[v] == cur_epoch_) continue;
        if (open_bit(v)) {
          epoch_[v] = cur_epoch_;
          stack_.push_back(v);
        }
      }
    }
  }
  return false;
}

bool RadialContext::eval(const Config& bits) const {
  if (bits.size() != reg_.size()) throw InvalidParameter("config size mismatch");
  return eval_impl([&bits](std::uint32_t j) { return bits.get(j); });
}

bool RadialContext::eval_sampled(const rng::Stream& st, double p) const {
  const std::uint64_t thr = bit_threshold(p);
  return eval_impl([&st, thr](std::uint32_t j) { return (st.at(j) >> 11) < thr; });
}

Estimate RadialContext::estimate(double p, std::uint64_t samples,
                                           std::uint64_t seed) const {
  if (samples == 0) throw InvalidParameter("samples must be >= 1");
  bit_threshold(p);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    rng::Stream st(seed, i);
    if (eval_sampled(st, p)) ++hits;
  }
  return binomial_estimate(hits, samples);
}

BoxCrossContext::BoxCrossContext(const lattice::Region& reg, double n)
    : win_(lattice::Region::window(reg.model(), n)) {
  to_region_.resize(win_.size());
  for (std::uint32_t i = 0; i < win_.size(); ++i)
    to_region_[i] = reg.index_of(reg.canon(win_.cell(i)));
  std::vector<std::uint32_t> sorted = to_region_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidParameter("window does not embed injectively in the region");
  std::int64_t sn = win_.scaled_R();
  left_.assign(win_.size(), 0);
  right_.assign(win_.size(), 0);
  for (std::uint32_t i = 0; i < win_.size(); ++i) {
    geom::Tile t = lattice::cell_tile(win_.model(), win_.cell(i));
    left_[i] = geom::tile_intersects_box(t, geom::Box{-sn, -sn, -sn, sn}) ? 1 : 0;
    right_[i] = geom::tile_intersects_box(t, geom::Box{sn, -sn, sn, sn}) ? 1 : 0;
  }
}

bool BoxCrossContext::eval(const Config& region_bits) const {
  if (epoch_.size() != win_.size()) {
    epoch_.assign(win_.size(), 0);
    cur_epoch_ = 0;
  }
  if (++cur_epoch_ == 0) {
    std::fill(epoch_.begin(), epoch_.end(), 0);
    cur_epoch_ = 1;
  }
  auto open = [&](std::uint32_t j) { return region_bits.get(to_region_[j]); };
  for (std::uint32_t s = 0; s < win_.size(); ++s) {
    if (!left_[s] || epoch_[s] == cur_epoch_ || !open(s)) continue;
    epoch_[s] = cur_epoch_;
    stack_.clear();
    stack_.push_back(s);
    while (!stack_.empty()) {
      std::uint32_t j = stack_.back();
      stack_.pop_back();
      if (right_[j]) return true;
      const std::uint32_t* nb = win_.adj(false, j);
      for (int t = 0; t < 6; ++t) {
        std::uint32_t v = nb[t];
        if (v == lattice::kNoCell || epoch_[v] == cur_epoch_) continue;
        if (open(v)) {
          epoch_[v] = cur_epoch_;
          stack_.push_back(v);
        }
      }
    }
  }
  return false;
}

BondRect::BondRect(int w, int h) : w_(w), h_(h) {
  if (w < 1 || h < 1 || w > 4000 || h > 4000) throw InvalidParameter("BondRect: bad size");
  for (int b = 0; b <= 2 * h; ++b)
    for (int a = 0; a <= 2 * w; ++a)
      if (((a ^ b) & 1) != 0) edges_.push_back({a, b});
  const int W = w + 1, H = h + 1;
  auto eidx = [this](lattice::CellId c) -> std::uint32_t {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), c);
    if (it == edges_.end() || !(*it == c)) return lattice::kNoCell;
    return static_cast<std::uint32_t>(it - edges_.begin());
  };
  vert_adj_.assign(std::size_t{4} * W * H, lattice::kNoCell);
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x) {
      lattice::CellId inc[4];
      lattice::vertex_edges({2 * x, 2 * y}, inc);
      for (int t = 0; t < 4; ++t)
        vert_adj_[std::size_t{4} * (static_cast<std::size_t>(y) * W + x) + t] = eidx(inc[t]);
    }
}

bool BondRect::crossing_lr(const Config& bits) const {
  const int W = w_ + 1, H = h_ + 1;
  const std::uint32_t nv = static_cast<std::uint32_t>(W) * H;
  if (epoch_.size() != nv) {
    epoch_.assign(nv, 0);
    cur_epoch_ = 0;
  }
  if (++cur_epoch_ == 0) {
    std::fill(epoch_.begin(), epoch_.end(), 0);
    cur_epoch_ = 1;
  }
  stack_.clear();
  for (int y = 0; y < H; ++y) {
    std::uint32_t v = static_cast<std::uint32_t>(y) * W;
    epoch_[v] = cur_epoch_;
    stack_.push_back(v);
  }
  while (!stack_.empty()) {
    std::uint32_t v = stack_.back();
    stack_.pop_back();
    int x = static_cast<int>(v % W), y = static_cast<int>(v / W);
    if (x == w_) return true;
    for (int t = 0; t < 4; ++t) {
      std::uint32_t e = vert_adj_[std::size_t{4} * v + t];
      if (e == lattice::kNoCell || !bits.get(e)) continue;
      lattice::VertexId ends[2];
      lattice::bond_endpoints(edges_[e], ends);
      lattice::VertexId other = (ends[0].a == 2 * x && ends[0].b == 2 * y) ? ends[1] : ends[0];
      std::uint32_t u = static_cast<std::uint32_t>(other.b / 2) * W + other.a / 2;
      if (epoch_[u] != cur_epoch_) {
        epoch_[u] = cur_epoch_;
        stack_.push_back(u);
      }
    }
  }
  return false;
}

Estimate BondRect::estimate(double p, std::uint64_t samples,
                                      std::uint64_t seed) const {
  if (samples == 0) throw InvalidParameter("samples must be >= 1");
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    rng::Stream st(seed, i);
    Config c = Config::random(edge_count(), p, st);
    if (crossing_lr(c)) ++hits;
  }
  return binomial_estimate(hits, samples);
}

std::vector<AlphaPoint> alpha_ladder(const ArmQuery& base, const std::vector<double>& radii,
                                     std::uint64_t samples, std::uint64_t seed) {
  std::vector<AlphaPoint> out;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    ArmQuery q = base;
    q.r = radii[i];
    out.push_back({q.r, q.R, estimate_alpha(q, 0.5, samples, rng::derive_seed(seed, i))});
  }
  return out;
}

QuasiMult quasi_mult_diag(const ArmQuery& base, double r1, double r2, double r3,
                          std::uint64_t samples, std::uint64_t seed) {
  if (!(r1 < r2 && r2 < r3)) throw InvalidParameter("need r1 < r2 < r3");
  ArmQuery qd = base, qi = base, qo = base;
  qd.r = r1, qd.R = r3;
  qi.r = r1, qi.R = r2;
  qo.r = r2, qo.R = r3;
  QuasiMult qm;
  qm.direct = estimate_alpha(qd, 0.5, samples, rng::derive_seed(seed, 1));
  qm.inner = estimate_alpha(qi, 0.5, samples, rng::derive_seed(seed, 2));
  qm.outer = estimate_alpha(qo, 0.5, samples, rng::derive_seed(seed, 3));
  qm.product = qm.inner.mean * qm.outer.mean;
  qm.product_err = std::sqrt(qm.inner.std_error * qm.inner.std_error * qm.outer.mean *
                                 qm.outer.mean +
                             qm.outer.std_error * qm.outer.std_error * qm.inner.mean *
                                 qm.inner.mean);
  return qm;
}

double rho_of_l(lattice::Model m, double l, const std::vector<double>& grid,
                std::uint64_t samples, std::uint64_t seed) {
  if (l <= 0) throw InvalidParameter("l must be > 0");
  ArmQuery q;
  q.model = m;
  q.k = 4;
  q.r = 1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double r = grid[i];
    if (r <= q.r) continue;
    q.R = r;
    Estimate e = estimate_alpha(q, 0.5, samples, rng::derive_seed(seed, i));
    if (r * r * e.mean >= l) return r;
  }
  throw NotReached("rho: grid exhausted before r^2 alpha4(r) reached l");
}

}  // namespace exclab::perc
