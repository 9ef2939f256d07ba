#include "rectpath/domain.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

namespace rectpath {

namespace {

constexpr i64 kCoordLimit = (1ll << 31) - 1;

i64 ring_area_x2(const std::vector<Point>& r) {
  i64 a = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    const Point &p = r[i], &q = r[(i + 1) % r.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return a;  // positive iff counterclockwise
}

// Half-open crossing parity of an upward ray from p against one ring.
// Returns true when p is strictly inside the ring.
bool inside_ring(const std::vector<Point>& r, Point p) {
  bool in = false;
  for (size_t i = 0; i < r.size(); ++i) {
    Point a = r[i], b = r[(i + 1) % r.size()];
    if (a.y != b.y) continue;  // only horizontal edges cross a vertical ray
    i64 lo = std::min(a.x, b.x), hi = std::max(a.x, b.x);
    if (lo <= p.x && p.x < hi && a.y > p.y) in = !in;
  }
  return in;
}

}  // namespace

// ---------------------------------------------------------------------------
// EdgeStabIndex

EdgeStabIndex::EdgeStabIndex(std::vector<std::array<i64, 3>> items) {
  std::sort(items.begin(), items.end());
  items_ = std::move(items);
  n_ = items_.size();
  if (n_ == 0) return;
  tree_.assign(2 * n_, {});
  for (size_t i = 0; i < n_; ++i)
    tree_[n_ + i] = {{items_[i][1], items_[i][2]}};
  for (size_t i = n_; i-- > 1;) {
    const auto &l = tree_[2 * i], &r = tree_[2 * i + 1];
    auto& t = tree_[i];
    t.resize(l.size() + r.size());
    std::merge(l.begin(), l.end(), r.begin(), r.end(), t.begin());
    i64 mx = std::numeric_limits<i64>::min();
    for (auto& e : t) {
      mx = std::max(mx, e.second);
      e.second = mx;  // prefix max of hi
    }
  }
}

bool EdgeStabIndex::any_strict(i64 klo, i64 khi, i64 v) const {
  if (n_ == 0 || klo >= khi) return false;
  size_t lo = std::lower_bound(items_.begin(), items_.end(),
                               std::array<i64, 3>{klo + 1,
                                                  std::numeric_limits<i64>::min(),
                                                  std::numeric_limits<i64>::min()}) -
              items_.begin();
  size_t hi = std::lower_bound(items_.begin(), items_.end(),
                               std::array<i64, 3>{khi, std::numeric_limits<i64>::min(),
                                                  std::numeric_limits<i64>::min()}) -
              items_.begin();
  if (lo >= hi) return false;
  auto has = [&](const std::vector<std::pair<i64, i64>>& node) {
    // interval with lo' < v and (prefix) hi' > v?
    auto it = std::lower_bound(node.begin(), node.end(), std::make_pair(v, std::numeric_limits<i64>::min()));
    if (it == node.begin()) return false;
    --it;
    return it->second > v;
  };
  for (size_t l = lo + n_, r = hi + n_; l < r; l >>= 1, r >>= 1) {
    if (l & 1) {
      if (has(tree_[l++])) return true;
    }
    if (r & 1) {
      if (has(tree_[--r])) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Validation

std::variant<Domain, DomainError> Domain::validate(
    std::vector<std::vector<Point>> raw_rings) {
  auto err = [](std::string kind, std::string detail) {
    return DomainError{std::move(kind), std::move(detail)};
  };
  if (raw_rings.empty() || raw_rings[0].size() < 4)
    return err("NonRectilinearEdge", "outer ring missing or too small");

  for (auto& r : raw_rings) {
    if (!r.empty() && r.front() == r.back()) r.pop_back();  // accept closed form
    if (r.size() < 4) return err("NonRectilinearEdge", "ring with fewer than 4 vertices");
    for (size_t i = 0; i < r.size(); ++i) {
      Point a = r[i], b = r[(i + 1) % r.size()];
      if (std::llabs(a.x) > kCoordLimit || std::llabs(a.y) > kCoordLimit)
        return err("NonRectilinearEdge", "coordinate exceeds 32-bit range");
      if (a == b) return err("NonRectilinearEdge", "zero-length edge");
      if (a.x != b.x && a.y != b.y)
        return err("NonRectilinearEdge", "edge is not axis-parallel");
    }
    for (size_t i = 0; i < r.size(); ++i) {
      Point a = r[i], b = r[(i + 1) % r.size()], c = r[(i + 2) % r.size()];
      bool e1h = a.y == b.y, e2h = b.y == c.y;
      if (e1h == e2h)
        return err("NonRectilinearEdge", "consecutive edges do not alternate");
    }
  }

  // Normalize orientation: outer CCW, holes CW.
  {
    i64 a0 = ring_area_x2(raw_rings[0]);
    if (a0 == 0) return err("SelfIntersection", "outer ring has zero area");
    if (a0 < 0) std::reverse(raw_rings[0].begin(), raw_rings[0].end());
    for (size_t k = 1; k < raw_rings.size(); ++k) {
      i64 a = ring_area_x2(raw_rings[k]);
      if (a == 0) return err("SelfIntersection", "hole ring has zero area");
      if (a > 0) std::reverse(raw_rings[k].begin(), raw_rings[k].end());
    }
  }

  Domain d;
  d.rings = std::move(raw_rings);

  // Collect edges; enforce general position (unique y per horizontal edge,
  // unique x per vertical edge).
  std::set<i64> seen_y, seen_x;
  std::unordered_set<Point, PointHash> seen_pts;
  for (const auto& r : d.rings) {
    for (size_t i = 0; i < r.size(); ++i) {
      Point a = r[i], b = r[(i + 1) % r.size()];
      if (!seen_pts.insert(a).second)
        return err("SelfIntersection", "repeated vertex");
      d.vertices.push_back(a);
      if (a.y == b.y) {
        if (!seen_y.insert(a.y).second)
          return err("CollinearEdges", "two horizontal edges share y=" + std::to_string(a.y));
        HEdge e;
        e.y = a.y;
        e.x1 = std::min(a.x, b.x);
        e.x2 = std::max(a.x, b.x);
        e.free_above = b.x > a.x;  // free side is left of travel direction
        d.hedges_[e.y] = e;
      } else {
        if (!seen_x.insert(a.x).second)
          return err("CollinearEdges", "two vertical edges share x=" + std::to_string(a.x));
        VEdge e;
        e.x = a.x;
        e.y1 = std::min(a.y, b.y);
        e.y2 = std::max(a.y, b.y);
        e.free_left = b.y > a.y;  // travelling north keeps free space west
        d.vedges_[e.x] = e;
      }
    }
  }

  // Strict horizontal/vertical edge crossings (sweep over y).
  {
    struct Ev {
      i64 y;
      int type;  // 0 = remove vedge, 1 = query hedge, 2 = add vedge
      i64 x1, x2;
    };
    std::vector<Ev> evs;
    for (auto& [x, e] : d.vedges_) {
      evs.push_back({e.y1, 2, e.x, 0});
      evs.push_back({e.y2, 0, e.x, 0});
    }
    for (auto& [y, e] : d.hedges_) evs.push_back({y, 1, e.x1, e.x2});
    std::sort(evs.begin(), evs.end(),
              [](const Ev& a, const Ev& b) { return a.y < b.y || (a.y == b.y && a.type < b.type); });
    std::set<i64> active;
    for (const auto& ev : evs) {
      if (ev.type == 0) active.erase(ev.x1);
      else if (ev.type == 2) active.insert(ev.x1);
      else {
        auto it = active.upper_bound(ev.x1);
        if (it != active.end() && *it < ev.x2)
          return err("SelfIntersection", "edges cross");
      }
    }
  }

  // Hole containment.
  for (size_t k = 1; k < d.rings.size(); ++k) {
    if (!inside_ring(d.rings[0], d.rings[k][0]))
      return err("HoleOutsideOuter", "hole vertex outside outer ring");
    for (size_t j = 1; j < d.rings.size(); ++j) {
      if (j == k) continue;
      if (inside_ring(d.rings[j], d.rings[k][0]))
        return err("HoleOutsideOuter", "hole nested inside another hole");
    }
  }

  d.bbox = {d.vertices[0].x, d.vertices[0].y, d.vertices[0].x, d.vertices[0].y};
  for (Point p : d.vertices) {
    d.bbox.x1 = std::min(d.bbox.x1, p.x);
    d.bbox.y1 = std::min(d.bbox.y1, p.y);
    d.bbox.x2 = std::max(d.bbox.x2, p.x);
    d.bbox.y2 = std::max(d.bbox.y2, p.y);
  }
  d.build_indexes();
  return d;
}

void Domain::build_indexes() {
  vindex_ = PointRangeIndex(vertices);
  std::vector<std::array<i64, 3>> vs, hs;
  for (auto& [x, e] : vedges_) vs.push_back({x, e.y1, e.y2});
  for (auto& [y, e] : hedges_) hs.push_back({y, e.x1, e.x2});
  vstab_ = EdgeStabIndex(std::move(vs));
  hstab_ = EdgeStabIndex(std::move(hs));
}

// ---------------------------------------------------------------------------
// Predicates

Containment Domain::classify_raycast(Point p) const {
  if (on_boundary(p)) return Containment::Boundary;
  // Parity over all rings: inside outer XOR inside a hole.
  bool in = false;
  for (const auto& r : rings)
    if (inside_ring(r, p)) in = !in;
  return in ? Containment::Interior : Containment::Outside;
}

bool Domain::on_boundary(Point p) const {
  auto hit = hedges_.find(p.y);
  if (hit != hedges_.end() && hit->second.x1 <= p.x && p.x <= hit->second.x2)
    return true;
  auto vit = vedges_.find(p.x);
  return vit != vedges_.end() && vit->second.y1 <= p.y && p.y <= vit->second.y2;
}

// Point in free space, doubled coordinates (admits segment midpoints).
bool Domain::point_free2(i64 sx, i64 sy) const {
  if (sy % 2 == 0) {
    auto it = hedges_.find(sy / 2);
    if (it != hedges_.end() && 2 * it->second.x1 <= sx &&
        sx <= 2 * it->second.x2)
      return true;
  }
  if (sx % 2 == 0) {
    auto it = vedges_.find(sx / 2);
    if (it != vedges_.end() && 2 * it->second.y1 <= sy &&
        sy <= 2 * it->second.y2)
      return true;
  }
  bool in = false;  // upward-ray parity over all horizontal edges
  for (const auto& [y, h] : hedges_)
    if (2 * h.x1 <= sx && sx < 2 * h.x2 && 2 * y > sy) in = !in;
  return in;
}

bool Domain::seg_free(Seg s) const {
  if (!s.horizontal() && !s.vertical()) return false;
  Containment ca = classify_raycast(s.a);
  if (ca == Containment::Outside) return false;
  Containment cb = classify_raycast(s.b);
  if (cb == Containment::Outside) return false;
  if (s.a == s.b) return true;
  // A segment with free endpoints leaves free space either by strictly
  // crossing a perpendicular boundary edge (general position gives one edge
  // per line), or tangentially, past an endpoint of the one boundary edge
  // collinear with it.  Rule out the first, then split at the collinear
  // edge's endpoints and classify each piece.
  i64 lo, hi;
  const HEdge* he = nullptr;
  const VEdge* ve = nullptr;
  if (s.horizontal()) {
    if (vstab_.any_strict(s.lo_x(), s.hi_x(), s.a.y)) return false;
    lo = s.lo_x();
    hi = s.hi_x();
    auto it = hedges_.find(s.a.y);
    if (it != hedges_.end()) he = &it->second;
  } else {
    if (hstab_.any_strict(s.lo_y(), s.hi_y(), s.a.x)) return false;
    lo = s.lo_y();
    hi = s.hi_y();
    auto it = vedges_.find(s.a.x);
    if (it != vedges_.end()) ve = &it->second;
  }
  i64 e1 = he ? he->x1 : (ve ? ve->y1 : 0);
  i64 e2 = he ? he->x2 : (ve ? ve->y2 : 0);
  std::array<i64, 4> cuts{lo, hi, hi, hi};
  int nc = 2;
  if (he || ve) {
    if (lo < e1 && e1 < hi) cuts[nc++] = e1;
    if (lo < e2 && e2 < hi) cuts[nc++] = e2;
  }
  std::sort(cuts.begin(), cuts.begin() + nc);
  Containment clo = (s.horizontal() ? s.a.x : s.a.y) == lo ? ca : cb;
  Containment chi = clo == ca ? cb : ca;
  for (int i = 0; i + 1 < nc; ++i) {
    i64 u = cuts[i], v = cuts[i + 1];
    if (u == v) continue;
    if ((he || ve) && e1 <= u && v <= e2) continue;  // rides the boundary edge
    // A piece touching an interior endpoint stays in that (free) face.
    if (u == lo && clo == Containment::Interior) continue;
    if (v == hi && chi == Containment::Interior) continue;
    i64 m2 = u + v;  // piece midpoint, doubled
    bool ok = s.horizontal() ? point_free2(m2, 2 * s.a.y)
                             : point_free2(2 * s.a.x, m2);
    if (!ok) return false;
  }
  return true;
}

bool Domain::flush(const Seg& seg, Dir side) const {
  if (seg.a == seg.b) return false;
  if (seg.horizontal()) {
    assert(!is_horizontal(side));
    auto it = hedges_.find(seg.a.y);
    if (it == hedges_.end()) return false;
    const HEdge& e = it->second;
    if (std::min(seg.hi_x(), e.x2) <= std::max(seg.lo_x(), e.x1)) return false;
    return side == Dir::North ? !e.free_above : e.free_above;
  }
  assert(is_horizontal(side));
  auto it = vedges_.find(seg.a.x);
  if (it == vedges_.end()) return false;
  const VEdge& e = it->second;
  if (std::min(seg.hi_y(), e.y2) <= std::max(seg.lo_y(), e.y1)) return false;
  return side == Dir::West ? !e.free_left : e.free_left;
}

i64 Domain::free_area_x2() const {
  i64 a = 0;
  for (const auto& r : rings) a += ring_area_x2(r);  // holes are CW: negative
  return a;
}

std::optional<RectPath> Domain::l_shaped(Point s, Point t) const {
  if (s == t) {
    RectPath p;
    p.pts = {s};
    return p;
  }
  if (s.x == t.x || s.y == t.y) {
    if (seg_free(s, t)) {
      RectPath p;
      p.pts = {s, t};
      return p;
    }
    return std::nullopt;
  }
  for (Point c : {Point{t.x, s.y}, Point{s.x, t.y}}) {
    if (seg_free(s, c) && seg_free(c, t)) {
      RectPath p;
      p.pts = {s, c, t};
      return p;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Vertical decomposition

VerticalDecomposition VerticalDecomposition::build(const Domain& d) {
  VerticalDecomposition vd;
  struct Open {
    i64 yhi, xstart;
  };
  std::map<i64, Open> open;  // keyed by ylow

  auto close_cell = [&](std::map<i64, Open>::iterator it, i64 x) -> int {
    VDCell c;
    c.rect = {it->second.xstart, it->first, x, it->second.yhi};
    vd.cells.push_back(c);
    open.erase(it);
    return int(vd.cells.size()) - 1;
  };

  for (auto& [x, e] : d.vedges()) {
    if (e.free_left) {
      // Obstacle (or outside) begins on the right across [y1,y2]: split the
      // open cell containing that span.
      auto it = open.upper_bound(e.y1);
      assert(it != open.begin());
      --it;
      i64 A = it->first, B = it->second.yhi;
      assert(A <= e.y1 && e.y2 <= B);
      int closed = close_cell(it, x);
      if (A < e.y1) {
        open[A] = {e.y1, x};
        vd.diagonals.push_back({x, A, e.y1, closed, -1});
      }
      if (e.y2 < B) {
        open[e.y2] = {B, x};
        vd.diagonals.push_back({x, e.y2, B, closed, -1});
      }
    } else {
      // Free space appears on the right across [y1,y2]; merge with the open
      // cells ending/starting at the span limits, if any.
      i64 lo = e.y1, hi = e.y2;
      auto below = open.upper_bound(e.y1);
      int below_cell = -1, above_cell = -1;
      if (below != open.begin()) {
        --below;
        if (below->second.yhi == e.y1) {
          lo = below->first;
          below_cell = close_cell(below, x);
        }
      }
      auto above = open.find(e.y2);
      if (above != open.end()) {
        hi = above->second.yhi;
        above_cell = close_cell(above, x);
      }
      open[lo] = {hi, x};
      if (below_cell >= 0) vd.diagonals.push_back({x, lo, e.y1, below_cell, -1});
      if (above_cell >= 0) vd.diagonals.push_back({x, e.y2, hi, above_cell, -1});
    }
  }
  assert(open.empty());

  // Resolve right cells of diagonals: the cell whose left wall is at x and
  // whose y-range covers the diagonal.
  {
    std::map<std::pair<i64, i64>, int> by_left;  // (x1, y1) -> cell
    for (size_t i = 0; i < vd.cells.size(); ++i)
      by_left[{vd.cells[i].rect.x1, vd.cells[i].rect.y1}] = int(i);
    for (auto& g : vd.diagonals) {
      // Find cell with x1 == g.x and y1 <= g.y1 < y2.
      auto it = by_left.upper_bound({g.x, g.y1});
      assert(it != by_left.begin());
      --it;
      assert(it->first.first == g.x);
      const Rect& r = vd.cells[it->second].rect;
      assert(r.y1 <= g.y1 && g.y2 <= r.y2);
      g.right_cell = it->second;
    }
  }

  vd.adj.assign(vd.cells.size(), {});
  for (size_t i = 0; i < vd.diagonals.size(); ++i) {
    const auto& g = vd.diagonals[i];
    vd.adj[g.left_cell].push_back({g.right_cell, int(i)});
    vd.adj[g.right_cell].push_back({g.left_cell, int(i)});
  }
  vd.build_locator();
  return vd;
}

void VerticalDecomposition::build_locator() {
  std::set<i64> xs;
  for (const auto& c : cells) {
    xs.insert(c.rect.x1);
    xs.insert(c.rect.x2);
  }
  xs_.assign(xs.begin(), xs.end());
  leaves_ = xs_.size() > 1 ? xs_.size() - 1 : 0;  // elementary intervals
  node_cells_.assign(2 * std::max<size_t>(leaves_, 1), {});
  for (size_t ci = 0; ci < cells.size(); ++ci) {
    const Rect& r = cells[ci].rect;
    size_t lo = std::lower_bound(xs_.begin(), xs_.end(), r.x1) - xs_.begin();
    size_t hi = std::lower_bound(xs_.begin(), xs_.end(), r.x2) - xs_.begin();
    for (size_t l = lo + leaves_, rr = hi + leaves_; l < rr; l >>= 1, rr >>= 1) {
      if (l & 1) node_cells_[l++].push_back(int(ci));
      if (rr & 1) node_cells_[--rr].push_back(int(ci));
    }
  }
  for (auto& v : node_cells_)
    std::sort(v.begin(), v.end(), [&](int a, int b) {
      return cells[a].rect.y1 < cells[b].rect.y1;
    });
}

int VerticalDecomposition::locate(Point p) const {
  if (leaves_ == 0) return -1;
  if (p.x < xs_.front() || p.x > xs_.back()) return -1;
  auto try_interval = [&](size_t idx) -> int {
    for (size_t node = idx + leaves_; node >= 1; node >>= 1) {
      const auto& v = node_cells_[node];
      // last cell with y1 <= p.y
      auto it = std::upper_bound(v.begin(), v.end(), p.y, [&](i64 y, int c) {
        return y < cells[c].rect.y1;
      });
      for (int back = 0; back < 2 && it != v.begin(); ++back) {
        int c = *--it;
        if (cells[c].rect.contains(p)) return c;
      }
      if (node == 1) break;
    }
    return -1;
  };
  size_t idx = std::upper_bound(xs_.begin(), xs_.end(), p.x) - xs_.begin();
  idx = std::min(idx - 1, leaves_ - 1);  // elementary interval containing p.x
  int c = try_interval(idx);
  // p may sit on a wall whose only covering cell lies to the left.
  if (c < 0 && idx > 0 && p.x == xs_[idx]) c = try_interval(idx - 1);
  return c;
}

Containment VerticalDecomposition::classify(const Domain& d, Point p) const {
  if (locate(p) < 0) return Containment::Outside;
  return d.on_boundary(p) ? Containment::Boundary : Containment::Interior;
}

i64 VerticalDecomposition::cell_area_x2() const {
  i64 a = 0;
  for (const auto& c : cells) a += 2 * c.rect.width() * c.rect.height();
  return a;
}

}  // namespace rectpath
