#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "exclab/geom.hpp"
#include "exclab/rng.hpp"

namespace exclab::lattice {

// TriangularSite: site percolation on the triangular lattice, sites at axial
// (q,s) embedded at (q + s/2, s*sqrt(3)/2), unit edge, hexagonal tiles.
// SquareBond: bond percolation on Z^2, cells are edges identified by their
// midpoint in doubled coordinates (exactly one odd component), tiles are the
// diagonal squares spanned by the edge's endpoints and the two face centers.
enum class Model : std::uint8_t { TriangularSite, SquareBond };

struct CellId {
  std::int32_t a = 0, b = 0;  // tri: (q,s); bond: doubled midpoint (a,b)
  friend bool operator==(CellId x, CellId y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(CellId x, CellId y) { return !(x == y); }
  friend bool operator<(CellId x, CellId y) {
    return x.b != y.b ? x.b < y.b : x.a < y.a;
  }
};

inline std::uint64_t cell_key(CellId c) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.a)) << 32) |
         static_cast<std::uint32_t>(c.b);
}

geom::Pt cell_center(Model m, CellId c);  // scaled by geom::kScale
geom::Tile cell_tile(Model m, CellId c);

// Connectivity relation: open clusters join bond cells through shared
// endpoints, closed clusters through shared faces (the dual path); on the
// triangular lattice both relations are plain site adjacency. Every cell has
// exactly 6 neighbours under its relation.
inline constexpr int kDegree = 6;
void neighbors(Model m, bool closed_side, CellId c, CellId out[kDegree]);

// Z^2 vertices in doubled coordinates (both components even); used for the
// bond model's primal connectivity.
struct VertexId {
  std::int32_t a = 0, b = 0;
  friend bool operator==(VertexId x, VertexId y) { return x.a == y.a && x.b == y.b; }
};
void bond_endpoints(CellId edge, VertexId out[2]);
// The 4 edges incident to a vertex.
void vertex_edges(VertexId v, CellId out[4]);

constexpr std::uint32_t kNoCell = 0xffffffffu;

// A finite cell set carrying the lattice structure: either the window
// I_R = {cells whose tile meets [-R,R]^2} or the L x L torus (L even).
class Region {
 public:
  static Region window(Model m, double R);
  static Region torus(Model m, int L);

  Model model() const { return model_; }
  bool is_torus() const { return torus_; }
  int L() const { return L_; }
  double window_R() const { return window_R_; }
  std::int64_t scaled_R() const { return scaled_R_; }

  std::uint32_t size() const { return static_cast<std::uint32_t>(cells_.size()); }
  CellId cell(std::uint32_t i) const { return cells_[i]; }
  const std::vector<CellId>& cells() const { return cells_; }

  CellId canon(CellId c) const;                  // torus wrap; identity on windows
  std::optional<std::uint32_t> find(CellId c) const;
  std::uint32_t index_of(CellId c) const;        // throws InvalidParameter if absent

  // Fixed-stride adjacency (kDegree entries per cell, kNoCell when the
  // neighbour is outside the region).
  const std::uint32_t* adj(bool closed_side, std::uint32_t i) const;

 private:
  Region() = default;
  void build_index_and_adj();

  Model model_ = Model::TriangularSite;
  bool torus_ = false;
  int L_ = 0;
  double window_R_ = 0;
  std::int64_t scaled_R_ = 0;
  std::vector<CellId> cells_;
  std::vector<std::uint32_t> adj_open_, adj_closed_;
  // torus fast index
  bool direct_index_ = false;
};

Region cells_in_window(Model m, double R);

// Euclidean distance between cell centers (bond cells measured between edge
// midpoints); min-image distance on a torus.
double distance(const Region& r, CellId a, CellId b);

// Exact squared distance helpers in lattice-native units.
std::int64_t tri_dist2(std::int64_t dq, std::int64_t ds);        // q^2+qs+s^2
std::int64_t bond_dist2_doubled(std::int64_t da, std::int64_t db);  // da^2+db^2 (real^2 = /4)

// Plane shape for disjointness tests: a rectangle or a square annulus.
struct Shape {
  geom::SquareAnnulus ann;
  geom::Box box;
  bool is_rect = false;
  static Shape rect(double x0, double y0, double x1, double y1);
  static Shape annulus(double cx, double cy, double rin, double rout);
};

// True iff no tile of the model meets both shapes.
bool percolation_disjoint(Model m, const Shape& A, const Shape& B);

// Cells whose tile lies inside the closed half-plane bounded by the axis line
// through the origin (straddling tiles excluded); include_straddle=true
// instead keeps every tile that touches the closed half-plane.
std::vector<std::uint32_t> half_plane_mask(const Region& r, geom::HalfPlane h,
                                           bool include_straddle = false);

}  // namespace exclab::lattice

template <>
struct std::hash<exclab::lattice::CellId> {
  std::size_t operator()(exclab::lattice::CellId c) const noexcept {
    return static_cast<std::size_t>(exclab::rng::mix64(exclab::lattice::cell_key(c)));
  }
};
