#pragma once

#include <cstdint>
#include <vector>

#include "exclab/config.hpp"
#include "exclab/estimate.hpp"
#include "exclab/lattice.hpp"
#include "exclab/rng.hpp"

namespace exclab::perc {

// Where the arms live: the full plane annulus, its upper half, or the first
// quadrant (corner at the origin). Half/quarter geometries keep only cells
// whose tile lies inside the closed region.
enum class Geometry : std::uint8_t { Plane, HalfPlane, QuarterPlane };

// k arms of alternating states crossing the square annulus [-R,R]^2 minus the
// open hole (-r,r)^2. In the plane k must be 1 or even (an odd alternating
// cycle is ill-defined); in the half/quarter geometries the angular order is
// linear and any k >= 1 works, with start_open fixing the first arm's state.
// For k = 1 start_open picks the arm's state in every geometry; for even
// cyclic patterns it is ignored.
struct ArmQuery {
  lattice::Model model = lattice::Model::TriangularSite;
  Geometry geometry = Geometry::Plane;
  int k = 1;
  bool start_open = true;
  double r = 1;
  double R = 8;
};

// Precomputed annulus cell complex. One-arm queries grow only the clusters
// attached to the inner square, memoizing reach flags per evaluation epoch.
// Multi-arm queries count colour-boundary interfaces instead: every maximal
// boundary curve inside the open annulus {r < |x|_inf < R} is a simple strand
// whose ends lie on the two square curves (or on the half-plane wall), and
// k disjoint alternating arms exist iff enough strands join the inner curve
// to the outer one. The strand graph (pieces clipped exactly in Q(sqrt3),
// junction wiring) is built once; an evaluation only follows links under the
// sampled colours, so the cost per sample stays local to the touched strands.
class ArmContext {
 public:
  explicit ArmContext(const ArmQuery& q);

  const ArmQuery& query() const { return q_; }
  bool trivial() const { return trivial_; }  // r >= R: the event holds by convention
  std::uint32_t cell_count() const { return static_cast<std::uint32_t>(cells_.size()); }
  lattice::CellId local_cell(std::uint32_t j) const { return cells_[j]; }
  std::uint32_t ring_size() const { return static_cast<std::uint32_t>(ring_.size()); }

  bool eval(const Config& bits) const;  // bits indexed by local cell order
  // lazily samples bit j from st.at(j) (< p threshold), touching only needed cells
  bool eval_sampled(const rng::Stream& st, double p) const;

  Estimate estimate(double p, std::uint64_t samples, std::uint64_t seed) const;

  // Number of boundary strands joining the two square curves. Walking from
  // the outer attachments must give the same count as from the inner ones,
  // and in the plane the count is always even. Multi-arm contexts only.
  int crossing_interfaces(const Config& bits, bool from_outer = false) const;

 private:
  // strand piece end: a junction inside the annulus or a boundary attachment
  struct StrandEnd {
    std::uint32_t link = 0;  // junction id when kind == junction
    std::uint8_t kind = 0;
    std::uint8_t slot = 0;  // cyclic pair slot within the junction
  };
  struct StrandPiece {
    std::uint32_t c = 0, d = 0;  // flanking cells; a strand runs iff colours differ
    StrandEnd end[2];
  };
  // tiling vertex strictly inside the annulus; cell[i], piece[i] follow the
  // cyclic order around the vertex, kNoCell marking an absent (wall) tile
  struct StrandJunction {
    std::uint32_t cell[4];
    std::uint32_t piece[4];
    std::uint8_t deg = 0;       // 3 on the triangular lattice, 4 on the bond tiling
    std::uint8_t end_bits = 0;  // which end of piece[i] touches this vertex
    bool wrap_open = false;     // dual vertex: interfaces wrap around open runs
  };

  template <class F>
  bool eval_impl(F&& open_bit) const;
  template <class F>
  bool grow(std::uint32_t j0, bool col, F& open_bit) const;
  void build_strands(std::int64_t sr, std::int64_t sR);
  template <class F>
  int count_strands(F& open_bit, bool from_outer) const;

  ArmQuery q_;
  bool trivial_ = false;
  bool cyclic_ = true;
  std::vector<lattice::CellId> cells_;  // sorted by CellId order
  std::vector<std::uint32_t> adj_open_, adj_closed_;  // 6-stride local indices
  std::vector<std::uint32_t> ring_;  // attachment cells in angular order
  std::vector<std::uint8_t> outer_;

  std::vector<StrandPiece> pieces_;  // built for k >= 2 only
  std::vector<StrandJunction> juncs_;
  std::vector<std::uint32_t> inner_starts_, outer_starts_;  // (piece << 1) | end

  mutable std::vector<std::uint32_t> epoch_, stack_, painted_;
  mutable std::vector<std::uint8_t> reach_;
  mutable std::uint32_t cur_epoch_ = 0;
};

Estimate estimate_alpha(const ArmQuery& q, double p, std::uint64_t samples,
                                  std::uint64_t seed);

// One open arm from the origin itself to the boundary of (-R,R)^2: the origin
// site's cluster (triangular model) or the origin vertex's open edge cluster
// (bond model) leaves the open box.
class RadialContext {
 public:
  RadialContext(lattice::Model m, double R);

  const lattice::Region& region() const { return reg_; }
  std::uint32_t cell_count() const { return reg_.size(); }

  bool eval(const Config& bits) const;
  bool eval_sampled(const rng::Stream& st, double p) const;
  Estimate estimate(double p, std::uint64_t samples, std::uint64_t seed) const;

 private:
  template <class F>
  bool eval_impl(F&& open_bit) const;

  lattice::Region reg_;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint8_t> outer_;
  mutable std::vector<std::uint32_t> epoch_, stack_;
  mutable std::uint32_t cur_epoch_ = 0;
};

// Open left-right crossing of the centered square [-n,n]^2 inside a region
// (typically a torus holding a window); evaluated on full configurations.
class BoxCrossContext {
 public:
  BoxCrossContext(const lattice::Region& reg, double n);

  bool eval(const Config& region_bits) const;

 private:
  lattice::Region win_;
  std::vector<std::uint32_t> to_region_;  // window cell -> region index
  std::vector<std::uint8_t> left_, right_;
  mutable std::vector<std::uint32_t> epoch_, stack_;
  mutable std::uint32_t cur_epoch_ = 0;
};

// Z^2 bond percolation on the rectangle with vertices [0,w] x [0,h]; exposes
// the edge list and the open left-right vertex crossing. At p = 1/2 and
// w = h+1 the crossing probability is exactly 1/2 by self-duality.
class BondRect {
 public:
  BondRect(int w, int h);

  std::uint32_t edge_count() const { return static_cast<std::uint32_t>(edges_.size()); }
  lattice::CellId edge(std::uint32_t j) const { return edges_[j]; }

  bool crossing_lr(const Config& bits) const;
  Estimate estimate(double p, std::uint64_t samples, std::uint64_t seed) const;

 private:
  int w_, h_;
  std::vector<lattice::CellId> edges_;                // doubled coordinates
  std::vector<std::uint32_t> vert_adj_;               // 4-stride: vertex -> edge index
  mutable std::vector<std::uint32_t> epoch_, stack_;  // vertex scratch
  mutable std::uint32_t cur_epoch_ = 0;
};

// alpha_hat(r_i, R) over a ladder of inner radii, p = 1/2.
struct AlphaPoint {
  double r, R;
  Estimate est;
};
std::vector<AlphaPoint> alpha_ladder(const ArmQuery& base, const std::vector<double>& radii,
                                     std::uint64_t samples, std::uint64_t seed);

// Quasi-multiplicativity diagnostic: direct alpha(r1,r3) vs the product
// alpha(r1,r2) * alpha(r2,r3).
struct QuasiMult {
  Estimate direct, inner, outer;
  double product;       // inner.mean * outer.mean
  double product_err;   // first-order error of the product
};
QuasiMult quasi_mult_diag(const ArmQuery& base, double r1, double r2, double r3,
                          std::uint64_t samples, std::uint64_t seed);

// Smallest radius r in `grid` with r^2 * alpha4_hat(r) >= l (first-moment
// inversion of the four-arm ladder); NotReached when the grid never gets
// there. The returned radius always satisfies r >= sqrt(l) up to estimation
// noise since alpha4 <= 1.
double rho_of_l(lattice::Model m, double l, const std::vector<double>& grid,
                std::uint64_t samples, std::uint64_t seed);

}  // namespace exclab::perc
