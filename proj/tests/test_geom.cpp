#include "doctest.h"

#include "exclab/geom.hpp"
#include "exclab/lattice.hpp"
#include "exclab/rng.hpp"
#include "oracles.hpp"

using namespace exclab;
using geom::Box;
using geom::Q3;
using lattice::CellId;
using lattice::Model;

TEST_SUITE_BEGIN("geom");

TEST_CASE("exact sign of u + v*sqrt(3)") {
  CHECK(geom::sign(Q3{0, 0}) == 0);
  CHECK(geom::sign(Q3{1, 0}) == 1);
  CHECK(geom::sign(Q3{-1, 0}) == -1);
  CHECK(geom::sign(Q3{0, 1}) == 1);
  CHECK(geom::sign(Q3{0, -1}) == -1);
  // 7 - 4*sqrt(3) = (2 - sqrt(3))^2 > 0, margin ~0.072
  CHECK(geom::sign(Q3{7, -4}) == 1);
  CHECK(geom::sign(Q3{-7, 4}) == -1);
  // 97 - 56*sqrt(3) ~ 0.0103
  CHECK(geom::sign(Q3{97, -56}) == 1);
  CHECK(geom::sign(Q3{-97, 56}) == -1);
  // 1351/780 > sqrt(3) > 265/153 (classic bounds)
  CHECK(geom::sign(Q3{1351, -780}) == 1);
  CHECK(geom::sign(Q3{265, -153}) == -1);
}

TEST_CASE("scale_coord accepts the 1/12 grid only") {
  CHECK(geom::scale_coord(0.0) == 0);
  CHECK(geom::scale_coord(1.0) == 12);
  CHECK(geom::scale_coord(0.5) == 6);
  CHECK(geom::scale_coord(1.0 / 3.0) == 4);
  CHECK(geom::scale_coord(-2.25) == -27);
  CHECK(geom::scale_coord(1e6 + 0.25) == 12000003);
  CHECK_THROWS_AS(geom::scale_coord(0.1), GeometryError);
  CHECK_THROWS_AS(geom::scale_coord(1e16), GeometryError);
}

TEST_CASE("tile/box boundary conventions") {
  geom::Tile hex = lattice::cell_tile(Model::TriangularSite, {0, 0});
  // hexagon spans x in [-1/2,1/2], y in [-sqrt(3)/3, sqrt(3)/3]
  CHECK(geom::tile_intersects_box(hex, Box::square(0, 0, 6)));
  CHECK(geom::tile_intersects_box(hex, Box{6, -6, 20, 6}));      // touch at x = 1/2
  CHECK_FALSE(geom::tile_intersects_box(hex, Box{7, -6, 20, 6}));
  CHECK(geom::tile_intersects_box(hex, Box{-20, -20, 20, -6}));  // crosses y = -1/2 edge region
  CHECK(geom::tile_inside_open_box(hex, Box::square(0, 0, 12)));
  CHECK_FALSE(geom::tile_inside_open_box(hex, Box::square(0, 0, 6)));
  CHECK(geom::tile_inside_closed_box(hex, Box{-6, -7, 6, 7}));
  CHECK_FALSE(geom::tile_inside_closed_box(hex, Box{-5, -7, 6, 7}));
  CHECK_FALSE(geom::tile_intersects_box(hex, Box{0, 0, -1, 0}));  // empty box

  geom::Tile dia = lattice::cell_tile(Model::SquareBond, {1, 0});
  // diamond centered (1/2,0), corners (0,0),(1,0),(1/2,±1/2)
  CHECK(geom::tile_intersects_box(dia, Box::square(0, 0, 0)));   // corner hits the point box
  CHECK_FALSE(geom::tile_intersects_box(dia, Box{-12, 3, -1, 12}));
  // corner-to-corner diagonal touch: diamond corner (0,0) vs box [-1,0]x[-1,0]
  CHECK(geom::tile_intersects_box(dia, Box{-12, -12, 0, 0}));
  // overlaps in x and y alone but separated along the x+y axis
  CHECK_FALSE(geom::tile_intersects_box(dia, Box{-12, -12, 1, -5}));
}

TEST_CASE("annulus membership uses closed outer, open hole") {
  geom::SquareAnnulus ann{0, 0, 24, 48};
  // tile straddling the inner boundary square belongs to the annulus
  geom::Tile hex0 = lattice::cell_tile(Model::TriangularSite, {2, 0});  // center x=2
  CHECK(geom::tile_intersects_annulus(hex0, ann));
  // tile strictly inside the hole does not
  geom::Tile hex1 = lattice::cell_tile(Model::TriangularSite, {0, 0});
  CHECK_FALSE(geom::tile_intersects_annulus(hex1, ann));
  // tile touching the inner boundary from inside counts (closed slab)
  geom::Tile hex2 = lattice::cell_tile(Model::TriangularSite, {-2, 1});  // x-extent [-2,-1]
  CHECK(geom::tile_intersects_annulus(hex2, geom::SquareAnnulus{0, 0, 12, 48}));
  // tile outside the outer square does not
  geom::Tile hex3 = lattice::cell_tile(Model::TriangularSite, {5, 0});
  CHECK_FALSE(geom::tile_intersects_annulus(hex3, geom::SquareAnnulus{0, 0, 12, 48}));
  // degenerate rin == rout keeps the boundary frame
  geom::Tile hex4 = lattice::cell_tile(Model::TriangularSite, {2, 0});
  CHECK(geom::tile_intersects_annulus(hex4, geom::SquareAnnulus{0, 0, 24, 24}));
  CHECK_FALSE(geom::tile_intersects_annulus(hex1, geom::SquareAnnulus{0, 0, 24, 24}));
  // empty when rin > rout
  CHECK_FALSE(geom::tile_intersects_annulus(hex4, geom::SquareAnnulus{0, 0, 48, 24}));
  // clip can cut the slab that the tile would otherwise meet
  Box right_half{0, -1200, 1200, 1200};
  geom::Tile hexL = lattice::cell_tile(Model::TriangularSite, {-3, 0});
  CHECK(geom::tile_intersects_annulus(hexL, ann));
  CHECK_FALSE(geom::tile_intersects_annulus(hexL, ann, right_half));
}

TEST_CASE("halfplane predicates") {
  using geom::HalfPlane;
  geom::Tile hex = lattice::cell_tile(Model::TriangularSite, {0, -1});
  // top vertices sit at y = (-6+4)/12*sqrt(3) < 0
  CHECK(geom::tile_inside_closed_halfplane(hex, HalfPlane::Lower, 0));
  CHECK_FALSE(geom::tile_inside_closed_halfplane(hex, HalfPlane::Upper, 0));
  geom::Tile hex0 = lattice::cell_tile(Model::TriangularSite, {0, 0});
  CHECK_FALSE(geom::tile_inside_closed_halfplane(hex0, HalfPlane::Lower, 0));
  CHECK(geom::tile_touches_closed_halfplane(hex0, HalfPlane::Lower, 0));
  CHECK(geom::tile_touches_closed_halfplane(hex0, HalfPlane::Upper, 0));
  geom::Tile dia = lattice::cell_tile(Model::SquareBond, {0, 1});
  CHECK(geom::tile_touches_closed_halfplane(dia, HalfPlane::Lower, 0));  // corner at y=0
  CHECK_FALSE(geom::tile_inside_closed_halfplane(dia, HalfPlane::Lower, 0));
  CHECK(geom::tile_inside_closed_halfplane(dia, HalfPlane::Upper, 0));
}

TEST_CASE("SAT agrees with a floating-point oracle away from boundaries") {
  rng::Stream st(20240801, 0);
  int checked = 0;
  for (int it = 0; it < 40000; ++it) {
    Model m = (it & 1) ? Model::SquareBond : Model::TriangularSite;
    std::int32_t a = static_cast<std::int32_t>(st.next_below(41)) - 20;
    std::int32_t b = static_cast<std::int32_t>(st.next_below(41)) - 20;
    if (m == Model::SquareBond && ((a ^ b) & 1) == 0) a += 1;
    CellId c{a, b};
    // box corners on the 1/12 grid within [-25,25]
    auto coord = [&st]() { return static_cast<std::int64_t>(st.next_below(601)) - 300; };
    std::int64_t x0 = coord(), x1 = coord(), y0 = coord(), y1 = coord();
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    bool exact = geom::tile_intersects_box(lattice::cell_tile(m, c), Box{x0, y0, x1, y1});
    double margin = oracles::fp_box_margin(oracles::fp_tile(m, c), x0 / 12.0, y0 / 12.0,
                                           x1 / 12.0, y1 / 12.0);
    if (std::abs(margin) < 1e-6) continue;  // oracle unreliable at touch cases
    ++checked;
    CHECK(exact == (margin > 0));
  }
  CHECK(checked > 30000);
}

TEST_SUITE_END();
