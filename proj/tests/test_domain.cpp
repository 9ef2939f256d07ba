#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rectpath/domain.hpp"
#include "rectpath/instancegen.hpp"
#include "rectpath/jsonio.hpp"
#include "rectpath/oracle.hpp"

using namespace rectpath;

namespace {

Domain square10() {
  auto r = Domain::validate({{{0, 0}, {10, 0}, {10, 10}, {0, 10}}});
  return std::get<Domain>(std::move(r));
}

// 10x10 square with the 2x2 hole (4,4)-(6,6).
Domain square_with_hole() {
  auto r = Domain::validate({{{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                             {{4, 4}, {6, 4}, {6, 6}, {4, 6}}});
  return std::get<Domain>(std::move(r));
}

}  // namespace

TEST_CASE("validate accepts simple domains") {
  Domain d = square10();
  CHECK(d.n() == 4);
  CHECK(d.h() == 0);
  Domain dh = square_with_hole();
  CHECK(dh.n() == 8);
  CHECK(dh.h() == 1);
}

TEST_CASE("validate rejections") {
  // Hole edge collinear with the outer x=0 edge.
  auto r = Domain::validate({{{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                             {{0, 4}, {2, 4}, {2, 6}, {0, 6}}});
  REQUIRE(std::holds_alternative<DomainError>(r));
  CHECK(std::get<DomainError>(r).kind == "CollinearEdges");

  // Diagonal edge.
  r = Domain::validate({{{0, 0}, {10, 2}, {10, 10}, {0, 10}}});
  REQUIRE(std::holds_alternative<DomainError>(r));
  CHECK(std::get<DomainError>(r).kind == "NonRectilinearEdge");

  // Hole outside the outer ring.
  r = Domain::validate({{{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                        {{20, 20}, {22, 20}, {22, 22}, {20, 22}}});
  REQUIRE(std::holds_alternative<DomainError>(r));
  CHECK(std::get<DomainError>(r).kind == "HoleOutsideOuter");

  // Crossing rings.
  r = Domain::validate({{{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                        {{4, 1}, {6, 1}, {6, 11}, {4, 11}}});
  REQUIRE(std::holds_alternative<DomainError>(r));
  CHECK(std::get<DomainError>(r).kind == "SelfIntersection");
}

TEST_CASE("containment classes") {
  Domain d = square10();
  CHECK(d.classify_raycast({5, 5}) == Containment::Interior);
  CHECK(d.classify_raycast({0, 5}) == Containment::Boundary);
  CHECK(d.classify_raycast({-1, 5}) == Containment::Outside);
  Domain dh = square_with_hole();
  CHECK(dh.classify_raycast({5, 5}) == Containment::Outside);
  CHECK(dh.classify_raycast({4, 5}) == Containment::Boundary);
  CHECK(dh.classify_raycast({3, 5}) == Containment::Interior);
}

TEST_CASE("segment predicate") {
  Domain d = square10();
  CHECK(d.seg_free({{1, 5}, {9, 5}}));
  Domain dh = square_with_hole();
  CHECK(!dh.seg_free({{1, 5}, {9, 5}}));
  CHECK(dh.seg_free({{1, 4}, {9, 4}}));  // runs along the hole boundary
  CHECK(dh.seg_free({{5, 0}, {5, 4}}));
  CHECK(!dh.seg_free({{5, 0}, {5, 5}}));
}

TEST_CASE("flush predicate") {
  Domain dh = square_with_hole();
  CHECK(dh.flush({{1, 4}, {9, 4}}, Dir::North));   // hole sits above y=4
  CHECK(!dh.flush({{1, 4}, {9, 4}}, Dir::South));
  CHECK(dh.flush({{1, 0}, {9, 0}}, Dir::South));   // outside below the outer edge
  CHECK(!dh.flush({{1, 1}, {9, 1}}, Dir::South));
  CHECK(dh.flush({{4, 5}, {4, 6}}, Dir::East));    // hole right of x=4
  CHECK(!dh.flush({{4, 5}, {4, 6}}, Dir::West));
  // Overlap must have positive length.
  CHECK(!dh.flush({{1, 4}, {4, 4}}, Dir::North));
}

TEST_CASE("vertical decomposition of simple shapes") {
  Domain d = square10();
  auto vd = VerticalDecomposition::build(d);
  CHECK(vd.cells.size() == 1);
  CHECK(vd.diagonals.size() == 0);

  Domain dh = square_with_hole();
  auto vdh = VerticalDecomposition::build(dh);
  CHECK(vdh.cells.size() == 4);
  CHECK(vdh.diagonals.size() == 4);
  CHECK(vdh.cell_area_x2() == dh.free_area_x2());
}

TEST_CASE("decomposition tiles random domains") {
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    GenParams gp;
    gp.n_target = 40;
    gp.h = int(seed % 5);
    gp.seed = seed;
    Domain d = gen_domain(gp);
    auto vd = VerticalDecomposition::build(d);
    CHECK(vd.cell_area_x2() == d.free_area_x2());
    // Diagonal bookkeeping: adjacency is symmetric and cells are rectangles.
    for (const auto& g : vd.diagonals) {
      CHECK(g.y1 < g.y2);
      CHECK(vd.cells[g.left_cell].rect.x2 == g.x);
      CHECK(vd.cells[g.right_cell].rect.x1 == g.x);
    }
  }
}

TEST_CASE("point location agrees with ray casting") {
  std::mt19937_64 rng(7);
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    GenParams gp;
    gp.n_target = 36;
    gp.h = int(seed % 4);
    gp.seed = seed + 100;
    Domain d = gen_domain(gp);
    auto vd = VerticalDecomposition::build(d);
    std::uniform_int_distribution<i64> dx(d.bbox.x1 - 2, d.bbox.x2 + 2);
    std::uniform_int_distribution<i64> dy(d.bbox.y1 - 2, d.bbox.y2 + 2);
    for (int i = 0; i < 1000; ++i) {
      Point p{dx(rng), dy(rng)};
      CHECK(vd.classify(d, p) == d.classify_raycast(p));
      // The oracle's independent predicate must agree as well.
      CHECK((d.classify_raycast(p) != Containment::Outside) ==
            oracle::point_free(d, p));
    }
  }
}

TEST_CASE("l-shaped paths") {
  Domain d = square10();
  auto p = d.l_shaped({1, 1}, {8, 6});
  REQUIRE(p);
  CHECK(p->length() == 12);
  CHECK(p->links() == 2);

  Domain dh = square_with_hole();
  CHECK(!dh.l_shaped({1, 5}, {9, 5}));  // oracle min links is 3 here

  auto same = d.l_shaped({3, 3}, {3, 3});
  REQUIRE(same);
  CHECK(same->length() == 0);
  CHECK(same->links() == 0);
}

TEST_CASE("l-shaped agrees with oracle link bound") {
  std::mt19937_64 rng(11);
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    GenParams gp;
    gp.n_target = 24;
    gp.h = 1 + int(seed % 3);
    gp.seed = seed + 500;
    Domain d = gen_domain(gp);
    for (int i = 0; i < 20; ++i) {
      Point s = random_free_point(d, rng), t = random_free_point(d, rng);
      auto lp = d.l_shaped(s, t);
      Measure m = oracle::measures(d, s, t, Objective::ML);
      CHECK(bool(lp) == (m.links <= 2));
      if (lp) CHECK(lp->length() == manhattan(s, t));
    }
  }
}

TEST_CASE("json round trip") {
  Domain dh = square_with_hole();
  std::string js = domain_to_json(dh);
  auto r = load_domain_json(js);
  REQUIRE(std::holds_alternative<Domain>(r));
  CHECK(std::get<Domain>(r).n() == 8);
  CHECK(std::get<Domain>(r).h() == 1);
  CHECK(std::holds_alternative<DomainError>(load_domain_json("{")));
}
