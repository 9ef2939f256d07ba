#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "rectpath/histogram.hpp"
#include "rectpath/instancegen.hpp"
#include "rectpath/oracle.hpp"

using namespace rectpath;

namespace {

// ---------------------------------------------------------------------------
// Independent brute force: admissible link distances to every grid point of
// the base, over the polygon's induced grid.  Kept deliberately separate
// from the implementation (own predicates).

bool mid_free(const Ring& r, Point a, Point b) {
  i64 sx = a.x + b.x, sy = a.y + b.y;
  bool in = false;
  for (size_t i = 0; i < r.size(); ++i) {
    Point u = r.pts[i], v = r.at(i + 1);
    if (u.y == v.y) {
      if (sy == 2 * u.y && sx >= 2 * std::min(u.x, v.x) &&
          sx <= 2 * std::max(u.x, v.x))
        return true;
      if (2 * std::min(u.x, v.x) <= sx && sx < 2 * std::max(u.x, v.x) &&
          2 * u.y > sy)
        in = !in;
    } else if (sx == 2 * u.x && sy >= 2 * std::min(u.y, v.y) &&
               sy <= 2 * std::max(u.y, v.y)) {
      return true;
    }
  }
  return in;
}

bool seg_ok(const Ring& r, Point a, Point b) {
  if (a == b) return r.contains(a);
  if (!r.contains(a) || !r.contains(b)) return false;
  for (size_t i = 0; i < r.size(); ++i) {
    Point u = r.pts[i], v = r.at(i + 1);
    if (a.y == b.y && u.x == v.x) {
      if (std::min(a.x, b.x) < u.x && u.x < std::max(a.x, b.x) &&
          std::min(u.y, v.y) < a.y && a.y < std::max(u.y, v.y))
        return false;
    } else if (a.x == b.x && u.y == v.y) {
      if (std::min(a.y, b.y) < u.y && u.y < std::max(a.y, b.y) &&
          std::min(u.x, v.x) < a.x && a.x < std::max(u.x, v.x))
        return false;
    }
  }
  return mid_free(r, a, b);
}

bool path_ok(const Ring& r, const RectPath& p) {
  if (p.pts.empty()) return false;
  for (size_t i = 0; i + 1 < p.pts.size(); ++i) {
    Point a = p.pts[i], b = p.pts[i + 1];
    if (a.x != b.x && a.y != b.y) return false;
    if (!seg_ok(r, a, b)) return false;
  }
  return true;
}

struct Brute {
  // admissible link distance to each point on the base line segment
  std::map<Point, i64> adm;  // door grid point -> min links (last link
                             // perpendicular to the door; zero-length final
                             // links permitted)
  i64 ld = -1;               // min over the door
};

// Base assumed vertical or horizontal; grid = ring coords + p.
Brute brute_admissible(const Ring& ring, Seg base, Point p) {
  std::set<i64> xs, ys;
  for (Point q : ring.pts) {
    xs.insert(q.x);
    ys.insert(q.y);
  }
  xs.insert(p.x);
  ys.insert(p.y);
  std::vector<i64> X(xs.begin(), xs.end()), Y(ys.begin(), ys.end());
  int nx = int(X.size()), ny = int(Y.size());
  auto id = [&](int i, int j, int o) { return (j * nx + i) * 2 + o; };
  std::vector<i64> best(size_t(nx) * ny * 2, -1);
  // 0-1-ish BFS on links (uniform +1 on turns) => Dijkstra with small ints
  std::priority_queue<std::tuple<i64, int>, std::vector<std::tuple<i64, int>>,
                      std::greater<>>
      pq;
  int pi = int(std::lower_bound(X.begin(), X.end(), p.x) - X.begin());
  int pj = int(std::lower_bound(Y.begin(), Y.end(), p.y) - Y.begin());
  auto try_push = [&](int st, i64 l) {
    if (best[st] == -1 || l < best[st]) {
      best[st] = l;
      pq.push({l, st});
    }
  };
  auto edge = [&](int i, int j, int dir, int& ni, int& nj) {
    static const int dx[4] = {1, 0, -1, 0}, dy[4] = {0, 1, 0, -1};
    ni = i + dx[dir];
    nj = j + dy[dir];
    if (ni < 0 || nj < 0 || ni >= nx || nj >= ny) return false;
    return seg_ok(ring, {X[i], Y[j]}, {X[ni], Y[nj]});
  };
  for (int dir = 0; dir < 4; ++dir) {
    int ni, nj;
    if (edge(pi, pj, dir, ni, nj)) try_push(id(ni, nj, dir % 2), 1);
  }
  while (!pq.empty()) {
    auto [l, st] = pq.top();
    pq.pop();
    if (best[st] != l) continue;
    int o = st % 2, cell = st / 2, i = cell % nx, j = cell / nx;
    for (int dir = 0; dir < 4; ++dir) {
      int ni, nj;
      if (!edge(i, j, dir, ni, nj)) continue;
      try_push(id(ni, nj, dir % 2), l + ((dir % 2) == o ? 0 : 1));
    }
  }
  Brute out;
  bool vert = base.vertical();
  int perp_o = vert ? 0 : 1;  // admissible last link is perpendicular
  auto consider = [&](Point q, i64 links) {
    if (links < 0) return;
    auto it = out.adm.find(q);
    if (it == out.adm.end() || links < it->second) out.adm[q] = links;
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Point q{X[i], Y[j]};
      if (!base.contains(q)) continue;
      i64 lp = best[id(i, j, perp_o)];
      i64 lo = best[id(i, j, 1 - perp_o)];
      if (lp >= 0) consider(q, lp);
      if (lo >= 0) consider(q, lo + 1);  // flagged zero-length last link
      if (q == p) consider(q, 1);        // start on the door
    }
  for (auto& [q, l] : out.adm)
    out.ld = (out.ld == -1) ? l : std::min(out.ld, l);
  return out;
}

// A ring edge qualifies as a door only if both neighbouring edges turn into
// the region: then, like a maximal free vertical segment, no free space
// continues collinearly past a door endpoint, which the histogram partition
// (and the paper setting it models) requires.
bool door_ok(const Ring& r, size_t e) {
  size_t n = r.size();
  Point a = r.pts[e], b = r.at(e + 1);
  Point prev = r.pts[(e + n - 1) % n], next = r.at(e + 2);
  if (a.x == b.x) {  // vertical; interior west iff travelling north
    int interior = (b.y > a.y) ? -1 : 1;
    return (prev.x - a.x) * interior > 0 && (next.x - b.x) * interior > 0;
  }
  int interior = (b.x > a.x) ? 1 : -1;
  return (prev.y - a.y) * interior > 0 && (next.y - b.y) * interior > 0;
}

size_t pick_door(const Ring& r, std::mt19937_64& rng) {
  std::vector<size_t> ok;
  for (size_t e = 0; e < r.size(); ++e)
    if (door_ok(r, e)) ok.push_back(e);
  REQUIRE(!ok.empty());
  return ok[std::uniform_int_distribution<size_t>(0, ok.size() - 1)(rng)];
}

Ring rect_ring(i64 x1, i64 y1, i64 x2, i64 y2) {
  return Ring{{{x1, y1}, {x2, y1}, {x2, y2}, {x1, y2}}};
}

// The snake corridor: three chained regions, one window each.
Ring snake() {
  return Ring{{{0, 0},
               {10, 0},
               {10, 8},
               {2, 8},
               {2, 6},
               {8, 6},
               {8, 2},
               {0, 2}}};
}

// Wide hall with three chimneys: three windows at the first level.
Ring chimneys() {
  return Ring{{{0, 0},
               {20, 0},
               {20, 6},
               {16, 6},
               {16, 10},
               {14, 10},
               {14, 6},
               {10, 6},
               {10, 10},
               {8, 10},
               {8, 6},
               {4, 6},
               {4, 10},
               {2, 10},
               {2, 6},
               {0, 6}}};
}

}  // namespace

TEST_CASE("a histogram polygon is a single region") {
  Ring r = rect_ring(0, 0, 5, 3);
  auto h = HistogramPartition::build(r, Seg{{0, 0}, {0, 3}});
  CHECK(h.region_count() == 1);
  CHECK(h.windows(0).empty());

  // staircase visible in full from the bottom edge
  Ring st{{{0, 0}, {6, 0}, {6, 6}, {4, 6}, {4, 4}, {2, 4}, {2, 2}, {0, 2}}};
  auto hs = HistogramPartition::build(st, Seg{{0, 0}, {6, 0}});
  CHECK(hs.region_count() == 1);
}

TEST_CASE("three windows at the first level") {
  Ring r = chimneys();
  auto h = HistogramPartition::build(r, Seg{{0, 0}, {0, 6}});
  CHECK(h.windows(0).size() == 3);
  CHECK(h.region_count() == 4);
  for (const Seg& w : h.windows(0)) {
    CHECK(w.horizontal());
    CHECK(w.a.y == 6);
  }
}

TEST_CASE("snake polygon chains one window per level") {
  Ring r = snake();
  auto h = HistogramPartition::build(r, Seg{{0, 0}, {0, 2}});
  CHECK(h.region_count() == 3);
  CHECK(h.windows(0).size() == 1);
  REQUIRE(h.windows(0).size() == 1);
  CHECK(h.windows(0)[0] == Seg{{8, 2}, {10, 2}});

  // depth-2 point, matching the paper-style interval picture with L_d = 3
  DoorIntervals di = h.door_query({3, 7});
  CHECK(di.link_dist == 3);
  CHECK(di.depth == 2);
  CHECK(!di.visible);
  CHECK(di.q == Point{0, 2});
  CHECK(di.lambda1 == Point{8, 2});
  RectPath p1 = h.admissible_path({3, 7}, 1);
  CHECK(p1.length() == 18);
  CHECK(p1.canonical().links() == 3);
  CHECK(path_ok(r, p1));
  RectPath p2 = h.admissible_path({3, 7}, 2);
  CHECK(p2.length() == 18);
  CHECK(path_ok(r, p2));
  CHECK(p2.links() == 4);
}

TEST_CASE("visible and on-door queries") {
  Ring r = rect_ring(0, 0, 8, 5);
  auto h = HistogramPartition::build(r, Seg{{0, 0}, {0, 5}});
  // p horizontally visible at distance 3
  DoorIntervals di = h.door_query({3, 2});
  CHECK(di.link_dist == 1);
  CHECK(di.visible);
  CHECK(di.I1 == Seg{{0, 2}, {0, 2}});
  CHECK(di.q == Point{0, 2});
  // sweep of the connecting segment spans the full side here
  CHECK(di.I2.lo_y() == 0);
  CHECK(di.I2.hi_y() == 5);
  RectPath p1 = h.admissible_path({3, 2}, 1);
  CHECK(p1.pts.size() == 2);
  CHECK(p1.measure() == Measure{3, 1});
  RectPath p2 = h.admissible_path({3, 2}, 2);
  CHECK(p2.length() == 3);
  CHECK(p2.links() == 2);  // flagged zero-length vertical link
  CHECK(p2.flagged_zeros() == 1);
  // p on the door itself
  DoorIntervals dd = h.door_query({0, 3});
  CHECK(dd.link_dist == 1);
  CHECK(dd.I1 == Seg{{0, 3}, {0, 3}});
  CHECK_THROWS(h.door_query({9, 9}));
}

TEST_CASE("interval characterization matches brute force") {
  std::mt19937_64 rng(2026);
  int cases = 0;
  for (uint64_t seed = 1; cases < 500; ++seed) {
    GenParams gp;
    gp.n_target = 26;
    gp.h = 0;
    gp.seed = seed;
    Domain d = gen_domain(gp);
    Ring ring{d.rings[0]};
    size_t e = pick_door(ring, rng);
    Seg base{ring.pts[e], ring.at(e + 1)};
    auto h = HistogramPartition::build(ring, base);
    CHECK(h.region_count() <= ring.size());
    for (int rep = 0; rep < 3 && cases < 500; ++rep, ++cases) {
      Point p = random_free_point(d, rng);
      DoorIntervals di = h.door_query(p);
      Brute br = brute_admissible(ring, base, p);
      REQUIRE(br.ld >= 1);
      CHECK(di.link_dist == br.ld);
      // every door grid point classified by I1/I2 exactly
      for (auto& [q, links] : br.adm) {
        bool in1 = di.I1.contains(q), in2 = di.I2.contains(q);
        CHECK(in1 == (links <= di.link_dist));
        CHECK(in2 == (links <= di.link_dist + 1));
        if (in1) CHECK(in2);
      }
      // paths are valid, have the promised measures, and end at q
      RectPath p1 = h.admissible_path(p, 1);
      RectPath p2 = h.admissible_path(p, 2);
      CHECK(path_ok(ring, p1));
      CHECK(path_ok(ring, p2));
      CHECK(p1.pts.back() == di.q);
      CHECK(p2.pts.back() == di.q);
      CHECK(p1.canonical().links() <= di.link_dist);
      CHECK(p2.links() <= di.link_dist + 1);
      if (!(p == di.q)) {
        RectPath sp = smallest_path(ring, p, di.q);
        CHECK(p1.length() == sp.length());
        CHECK(p2.length() == sp.length());
      }
    }
  }
}

TEST_CASE("dragging the last segment covers I1") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (uint64_t seed = 1; checked < 60; ++seed) {
    GenParams gp;
    gp.n_target = 22;
    gp.h = 0;
    gp.seed = seed + 300;
    Domain d = gen_domain(gp);
    Ring ring{d.rings[0]};
    size_t e = pick_door(ring, rng);
    Seg base{ring.pts[e], ring.at(e + 1)};
    auto h = HistogramPartition::build(ring, base);
    Point p = random_free_point(d, rng);
    DoorIntervals di = h.door_query(p);
    if (di.visible || p == di.q) continue;
    RectPath p1 = h.admissible_path(p, 1);
    REQUIRE(p1.pts.size() >= 2);
    // drag the last segment to each endpoint of I1
    for (Point target : {di.I1.a, di.I1.b}) {
      RectPath dragged = p1;
      size_t m = dragged.pts.size();
      Point delta{target.x - di.q.x, target.y - di.q.y};
      dragged.pts[m - 1] = target;
      dragged.pts[m - 2] = {dragged.pts[m - 2].x + delta.x,
                            dragged.pts[m - 2].y + delta.y};
      CHECK(path_ok(ring, dragged));
      CHECK(dragged.length() == p1.length() + manhattan(di.q, target));
      CHECK(dragged.canonical().links() <= di.link_dist);
      ++checked;
    }
  }
}

TEST_CASE("smallest path in simple polygons") {
  Ring r = rect_ring(0, 0, 9, 4);
  RectPath lp = smallest_path(r, {0, 0}, {9, 4});
  CHECK(lp.measure() == Measure{13, 2});
  RectPath same = smallest_path(r, {3, 3}, {3, 3});
  CHECK(same.length() == 0);

  std::mt19937_64 rng(9);
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    GenParams gp;
    gp.n_target = 28;
    gp.h = 0;
    gp.seed = seed + 40;
    Domain d = gen_domain(gp);
    Ring ring{d.rings[0]};
    Point s = random_free_point(d, rng), t = random_free_point(d, rng);
    RectPath sp = smallest_path(ring, s, t);
    CHECK(sp.length() == oracle::measures(d, s, t, Objective::MLS).len);
    CHECK(sp.links() == oracle::measures(d, s, t, Objective::SML).links);
  }
}
