#include "rectpath/histogram.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace rectpath {

// ---------------------------------------------------------------------------
// Ring basics

i64 Ring::area_x2() const {
  i64 a = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    Point p = pts[i], q = at(i + 1);
    a += p.x * q.y - q.x * p.y;
  }
  return a;
}

int Ring::classify(Point p) const {
  bool in = false;
  for (size_t i = 0; i < pts.size(); ++i) {
    Point a = pts[i], b = at(i + 1);
    if (a.y == b.y) {
      if (p.y == a.y && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x))
        return 1;
      // upward-ray parity, half-open in x
      if (std::min(a.x, b.x) <= p.x && p.x < std::max(a.x, b.x) && a.y > p.y)
        in = !in;
    } else {
      if (p.x == a.x && p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y))
        return 1;
    }
  }
  return in ? 2 : 0;
}

std::pair<Ring, Ring> split_ring(const Ring& ring, Point a, Point b) {
  assert(!(a == b));
  std::vector<Point> v;
  for (size_t i = 0; i < ring.size(); ++i) {
    Point p = ring.pts[i], q = ring.at(i + 1);
    v.push_back(p);
    // insert a/b when strictly inside edge p-q, ordered along the edge
    Seg e{p, q};
    std::vector<Point> ins;
    for (Point c : {a, b})
      if (e.contains(c) && !(c == p) && !(c == q)) ins.push_back(c);
    if (ins.size() == 2 && manhattan(p, ins[0]) > manhattan(p, ins[1]))
      std::swap(ins[0], ins[1]);
    for (Point c : ins) v.push_back(c);
  }
  auto idx = [&](Point c) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] == c) return i;
    assert(false && "chord endpoint not on ring");
    return size_t(0);
  };
  size_t ia = idx(a), ib = idx(b);
  Ring r1, r2;
  for (size_t i = ia; i != ib; i = (i + 1) % v.size()) r1.pts.push_back(v[i]);
  r1.pts.push_back(v[ib]);
  for (size_t i = ib; i != ia; i = (i + 1) % v.size()) r2.pts.push_back(v[i]);
  r2.pts.push_back(v[ia]);
  return {std::move(r1), std::move(r2)};
}

// ---------------------------------------------------------------------------
// Region helpers

i64 HistogramPartition::Region::range_min(size_t lo, size_t hi) const {
  if (lo >= hi) return std::numeric_limits<i64>::max();
  size_t k = 0;
  while ((size_t(1) << (k + 1)) <= hi - lo) ++k;
  return std::min(sparse[k][lo], sparse[k][hi - (size_t(1) << k)]);
}

i64 HistogramPartition::Region::reach_at(i64 u) const {
  if (u < ub.front() || u > ub.back()) return -1;
  size_t i = size_t(std::upper_bound(ub.begin(), ub.end(), u) - ub.begin());
  // i = first boundary > u (or end); row index = i-1
  if (i == 0) return -1;
  size_t r = i - 1;
  if (r >= F.size()) r = F.size() - 1;  // u == ub.back()
  i64 f = F[r];
  if (u == ub[r] && r > 0) f = std::max(f, F[r - 1]);
  return f;
}

bool HistogramPartition::Region::contains_uv(i64 u, i64 t) const {
  return t >= 0 && t <= reach_at(u);
}

i64 HistogramPartition::Region::sweep(i64 u0, int dir, i64 t) const {
  if (dir > 0) {
    if (u0 >= ub.back()) return ub.back();
    size_t i = size_t(std::upper_bound(ub.begin(), ub.end(), u0) - ub.begin());
    i = (i == 0) ? 0 : i - 1;  // row containing u0 (u0 < ub.back())
    // largest j >= i with all F[i..j] >= t; answer boundary ub[j+1]
    size_t lo = i, hi = F.size();  // result row-range end in (i..hi]
    // binary search the first failing row
    size_t bad = hi;
    size_t l = i, r = hi;
    while (l < r) {
      size_t m = (l + r) / 2;
      if (range_min(i, m + 1) >= t)
        l = m + 1;
      else
        r = m;
    }
    bad = l;
    (void)lo;
    return bad == i ? u0 : ub[bad];
  }
  if (u0 <= ub.front()) return ub.front();
  size_t i = size_t(std::upper_bound(ub.begin(), ub.end(), u0) - ub.begin());
  i = i - 1;
  if (i >= F.size()) i = F.size() - 1;
  if (u0 == ub[i]) {
    if (i == 0) return u0;
    --i;  // rows strictly below u0 start at i-1 .. 0
  }
  // smallest j <= i with all F[j..i] >= t; answer boundary ub[j]
  size_t l = 0, r = i + 1;  // first good start in [l, r)
  while (l < r) {
    size_t m = (l + r) / 2;
    if (range_min(m, i + 1) >= t)
      r = m;
    else
      l = m + 1;
  }
  return l == i + 1 ? u0 : ub[l];
}

// ---------------------------------------------------------------------------
// Construction

namespace {

// Interval subtraction: J minus union of walls, keeping positive-length parts.
std::vector<std::pair<i64, i64>> subtract_intervals(
    std::pair<i64, i64> J, std::vector<std::pair<i64, i64>> walls) {
  std::sort(walls.begin(), walls.end());
  std::vector<std::pair<i64, i64>> out;
  i64 cur = J.first;
  for (auto [a, b] : walls) {
    if (b <= cur) continue;
    if (a >= J.second) break;
    if (a > cur) out.push_back({cur, std::min(a, J.second)});
    cur = std::max(cur, b);
    if (cur >= J.second) break;
  }
  if (cur < J.second) out.push_back({cur, J.second});
  std::erase_if(out, [](auto& iv) { return iv.second <= iv.first; });
  return out;
}

}  // namespace

HistogramPartition HistogramPartition::build(Ring polygon, Seg base) {
  HistogramPartition h;
  h.poly_ = polygon;
  h.base_ = base;
  h.build_region(std::move(polygon), base, -1, -1, 0);
  return h;
}

int HistogramPartition::build_region(Ring ring, Seg base, int parent, int pwin,
                                     int depth) {
  int id = int(regions_.size());
  regions_.push_back({});
  {
    Region& r = regions_[id];
    r.parent = parent;
    r.parent_window = pwin;
    r.depth = depth;
    r.base = base;
  }

  // locate the base edge on the ring and orient the frame (interior is on
  // the left of ring traversal)
  Frame f;
  bool found = false;
  for (size_t i = 0; i < ring.size() && !found; ++i) {
    Point a = ring.pts[i], b = ring.at(i + 1);
    if ((a == base.a && b == base.b) || (a == base.b && b == base.a)) {
      found = true;
      if (a.x == b.x) {  // vertical base
        f.u_is_y = true;
        f.t0 = a.x;
        f.t_sign = (b.y > a.y) ? -1 : 1;  // north travel: interior west
      } else {
        f.u_is_y = false;
        f.t0 = a.y;
        f.t_sign = (b.x > a.x) ? 1 : -1;  // east travel: interior north
      }
    }
  }
  if (!found) throw std::invalid_argument("base is not an edge of polygon");

  i64 blo = f.u_is_y ? base.lo_y() : base.lo_x();
  i64 bhi = f.u_is_y ? base.hi_y() : base.hi_x();

  // rows: sweep u with the active set of base-parallel edges at depth > 0
  struct Ev {
    i64 u;
    i64 t;
    int add;  // +1 open, -1 close
  };
  std::vector<Ev> evs;
  // perpendicular edges grouped by u-line (for wall subtraction later)
  std::map<i64, std::vector<std::pair<i64, i64>>> walls;
  for (size_t i = 0; i < ring.size(); ++i) {
    Point a = ring.pts[i], b = ring.at(i + 1);
    if (a == b) continue;
    bool edge_vertical = (a.x == b.x);
    if (edge_vertical == f.u_is_y) {
      // parallel to base: potential blocker
      i64 t = f.t(a);
      if (t <= 0) continue;
      i64 u1 = std::min(f.u(a), f.u(b)), u2 = std::max(f.u(a), f.u(b));
      evs.push_back({u1, t, +1});
      evs.push_back({u2, t, -1});
    } else {
      i64 t1 = std::min(f.t(a), f.t(b)), t2 = std::max(f.t(a), f.t(b));
      walls[f.u(a)].push_back({std::max<i64>(t1, 0), t2});
    }
  }
  std::sort(evs.begin(), evs.end(), [](const Ev& x, const Ev& y) {
    return x.u != y.u ? x.u < y.u : x.add < y.add;  // close before open
  });
  std::multiset<i64> active;
  std::vector<i64>& ub = regions_[id].ub;
  std::vector<i64>& F = regions_[id].F;
  size_t ei = 0;
  // prime the active set with edges starting at or before blo
  while (ei < evs.size() && evs[ei].u < blo) {
    if (evs[ei].add > 0)
      active.insert(evs[ei].t);
    else
      active.erase(active.find(evs[ei].t));
    ++ei;
  }
  ub.push_back(blo);
  i64 cur = blo;
  while (cur < bhi) {
    // apply events at cur
    while (ei < evs.size() && evs[ei].u == cur) {
      if (evs[ei].add > 0)
        active.insert(evs[ei].t);
      else
        active.erase(active.find(evs[ei].t));
      ++ei;
    }
    i64 next = bhi;
    if (ei < evs.size()) next = std::min(next, evs[ei].u);
    assert(!active.empty() && "ray escapes a closed polygon");
    i64 fmin = *active.begin();
    if (!F.empty() && F.back() == fmin) {
      ub.back() = next;  // merge equal-reach neighbours
    } else {
      F.push_back(fmin);
      ub.push_back(next);
    }
    cur = next;
  }
  assert(!F.empty());

  // sparse table
  {
    Region& r = regions_[id];
    size_t n = F.size();
    r.sparse.assign(1, F);
    for (size_t k = 1; (size_t(1) << k) <= n; ++k) {
      r.sparse.push_back(std::vector<i64>(n - (size_t(1) << k) + 1));
      for (size_t i = 0; i + (size_t(1) << k) <= n; ++i)
        r.sparse[k][i] = std::min(r.sparse[k - 1][i],
                                  r.sparse[k - 1][i + (size_t(1) << (k - 1))]);
    }
  }

  // windows on row boundaries and base-end lines
  struct RawWin {
    i64 uline;
    std::pair<i64, i64> span;  // depth interval
    int pocket_dir;
  };
  std::vector<RawWin> raw;
  auto add_candidates = [&](i64 uline, std::pair<i64, i64> J, int pdir) {
    if (J.second <= J.first) return;
    auto wit = walls.find(uline);
    std::vector<std::pair<i64, i64>> w =
        wit == walls.end() ? std::vector<std::pair<i64, i64>>{} : wit->second;
    for (auto piece : subtract_intervals(J, std::move(w)))
      raw.push_back({uline, piece, pdir});
  };
  add_candidates(ub.front(), {0, F.front()}, -1);
  add_candidates(ub.back(), {0, F.back()}, +1);
  for (size_t i = 1; i < F.size(); ++i)
    if (F[i - 1] != F[i])
      add_candidates(ub[i], {std::min(F[i - 1], F[i]), std::max(F[i - 1], F[i])},
                     F[i - 1] < F[i] ? -1 : +1);

  for (const RawWin& rw : raw) {
    Point a = f.pt(rw.uline, rw.span.first);
    Point b = f.pt(rw.uline, rw.span.second);
    auto [r1, r2] = split_ring(ring, a, b);
    // The pocket piece is the one containing a point half a unit beyond the
    // chord midpoint on the pocket side (doubled coordinates; no vertex can
    // lie strictly inside an open window, so the test point is strictly
    // interior to exactly one piece).
    Point w1 = f.pt(rw.uline, rw.span.first);
    Point w2 = f.pt(rw.uline + rw.pocket_dir, rw.span.first);
    i64 sx = a.x + b.x + (w2.x - w1.x), sy = a.y + b.y + (w2.y - w1.y);
    auto inside2 = [&](const Ring& rr) {
      bool in = false;
      for (size_t i = 0; i < rr.size(); ++i) {
        Point u = rr.pts[i], v = rr.at(i + 1);
        if (u.y != v.y) continue;
        if (2 * std::min(u.x, v.x) <= sx && sx < 2 * std::max(u.x, v.x) &&
            2 * u.y > sy)
          in = !in;
      }
      return in;
    };
    Ring pocket = inside2(r1) ? std::move(r1) : std::move(r2);
    int widx = int(regions_[id].wins.size());
    regions_[id].wins.push_back({Seg{a, b}, rw.uline, rw.pocket_dir, -1});
    int child = build_region(std::move(pocket), Seg{a, b}, id, widx, depth + 1);
    regions_[id].wins[widx].child = child;
  }
  regions_[id].frame = f;
  regions_[id].ring = std::move(ring);
  return id;
}

// ---------------------------------------------------------------------------
// Location

int HistogramPartition::locate_from(int region, Point p) const {
  const Region& r = regions_[region];
  const Frame& f = r.frame;
  if (r.contains_uv(f.u(p), f.t(p))) return region;
  for (const Window& w : r.wins) {
    // pocket subtrees may wrap around the window line, so containment in
    // the child ring is the only reliable filter
    if (regions_[w.child].ring.contains(p)) {
      int got = locate_from(w.child, p);
      if (got >= 0) return got;
    }
  }
  return -1;
}

int HistogramPartition::locate(Point p) const { return locate_from(0, p); }

std::vector<Seg> HistogramPartition::windows(int region) const {
  std::vector<Seg> out;
  for (const Window& w : regions_[region].wins) out.push_back(w.chord);
  return out;
}

// ---------------------------------------------------------------------------
// Queries

DoorIntervals HistogramPartition::query_chain(Point p, int region, int which,
                                              RectPath* out_path) const {
  DoorIntervals di;
  std::vector<int> chain;  // root .. p's region
  for (int r = region; r != -1; r = regions_[r].parent) chain.push_back(r);
  std::reverse(chain.begin(), chain.end());
  int k = int(chain.size()) - 1;
  di.depth = k;
  di.link_dist = k + 1;
  di.visible = (k == 0);

  const Region& rp = regions_[chain[k]];
  const Frame& fp = rp.frame;
  i64 up = fp.u(p), tp = fp.t(p);

  if (k == 0) {
    Point proj = fp.pt(up, 0);
    di.q = proj;
    di.lambda1 = di.lambda2 = proj;
    di.I1 = Seg{proj, proj};
    di.I2 = Seg{fp.pt(rp.sweep(up, -1, tp), 0), fp.pt(rp.sweep(up, +1, tp), 0)};
    di.first_seg = fp.u_is_y ? Orient::H : Orient::V;
    if (out_path) {
      RectPath path;
      if (which == 1) {
        path.pts = {p, proj};
        if (p == proj) path.zflag = {1};
      } else {
        path.pts = {p, p, proj};
        path.zflag = {1, uint8_t(p == proj ? 1 : 0)};
      }
      *out_path = std::move(path);
    }
    return di;
  }

  // Interval chain: for i = k..1, an interval on the chord w_i (the base of
  // chain[i]), propagated toward the door through the frame of chain[i-1].
  // c[i] = chosen crossing point on w_i (the endpoint of the interval with
  // minimum depth in chain[i-1]'s frame).
  struct Chain {
    Point e1, e2;  // current interval endpoints (world)
  };
  Chain A{fp.pt(up, 0), fp.pt(up, 0)};
  Chain B{fp.pt(rp.sweep(up, -1, tp), 0), fp.pt(rp.sweep(up, +1, tp), 0)};
  std::vector<Point> cross(size_t(k) + 1);  // c[k..1], c[0] = q
  Chain cur = (which == 2) ? B : A;
  Chain other = (which == 2) ? A : B;
  Point bstart = cur.e1;  // pi2's first turn target (min-depth end of B_k)

  auto propagate = [&](Chain& ch, const Region& R, const Window& W,
                       Point* chosen) {
    const Frame& f = R.frame;
    i64 t1 = f.t(ch.e1), t2 = f.t(ch.e2);
    Point cmin = (t1 <= t2) ? ch.e1 : ch.e2;
    i64 tmin = std::min(t1, t2);
    if (chosen) *chosen = cmin;
    i64 ulim = R.sweep(W.uline, -W.pocket_dir, tmin);
    ch.e1 = f.pt(W.uline, 0);  // extension-point end
    ch.e2 = f.pt(ulim, 0);
  };

  for (int i = k; i >= 1; --i) {
    const Region& R = regions_[chain[i - 1]];
    const Window& W = R.wins[regions_[chain[i]].parent_window];
    if (i == k && which == 2) {
      // pick pi2's level-k crossing before propagating
      const Frame& f = R.frame;
      bstart = (f.t(cur.e1) <= f.t(cur.e2)) ? cur.e1 : cur.e2;
    }
    propagate(cur, R, W, &cross[i]);
    propagate(other, R, W, nullptr);
  }
  const Frame& f0 = regions_[chain[0]].frame;
  Chain& Af = (which == 2) ? other : cur;
  Chain& Bf = (which == 2) ? cur : other;
  di.I1 = Seg{Af.e1, Af.e2};
  di.I2 = Seg{Bf.e1, Bf.e2};
  di.q = cur.e1;  // extension endpoint (identical for both chains)
  cross[0] = di.q;

  // lambda points: crossing points on w_1 for each chain.  Recompute the
  // A-chain lambda when we propagated B (and vice versa) by rerunning the
  // other chain's crossings.
  di.lambda1 = di.lambda2 = cross[1];
  {
    Chain re{fp.pt(up, 0), fp.pt(up, 0)};
    Chain re2{fp.pt(rp.sweep(up, -1, tp), 0), fp.pt(rp.sweep(up, +1, tp), 0)};
    Point l1 = re.e1, l2 = re2.e1;
    for (int i = k; i >= 1; --i) {
      const Region& R = regions_[chain[i - 1]];
      const Window& W = R.wins[regions_[chain[i]].parent_window];
      propagate(re, R, W, i == 1 ? &l1 : nullptr);
      propagate(re2, R, W, i == 1 ? &l2 : nullptr);
      if (i == 1) break;
      Point dummy;
      (void)dummy;
    }
    di.lambda1 = l1;
    di.lambda2 = l2;
  }
  di.first_seg = (fp.u_is_y ? Orient::H : Orient::V);
  if (which == 2) di.first_seg = perp(di.first_seg);

  if (out_path) {
    RectPath path;
    path.pts.push_back(p);
    if (which == 2) {
      // first link runs along the base of p's region toward the chosen
      // level-k crossing, at p's depth
      path.pts.push_back(fp.pt(fp.u(bstart), tp));
    }
    for (int i = k; i >= 1; --i) {
      const Frame& fprev = regions_[chain[i - 1]].frame;
      path.pts.push_back(fprev.pt(fprev.u(cross[i - 1]), fprev.t(cross[i])));
    }
    path.pts.push_back(di.q);
    *out_path = std::move(path);
  }
  return di;
}

DoorIntervals HistogramPartition::door_query(Point p) const {
  int r = locate(p);
  if (r < 0) throw std::runtime_error("PointOutsidePolygon");
  return query_chain(p, r, 1, nullptr);
}

RectPath HistogramPartition::admissible_path(Point p, int which) const {
  int r = locate(p);
  if (r < 0) throw std::runtime_error("PointOutsidePolygon");
  RectPath path;
  query_chain(p, r, which, &path);
  return path;
}

// ---------------------------------------------------------------------------
// Smallest path inside a simple rectilinear polygon (exhaustive grid search)

namespace {

struct PolyGrid {
  std::vector<i64> xs, ys;
  std::vector<char> ok, right_ok, up_ok;
  int nx = 0, ny = 0;
  int id(int i, int j) const { return j * nx + i; }
};

bool ring_seg_mid_free(const Ring& r, Point a, Point b) {
  // classify the midpoint at doubled coordinates
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
    } else {
      if (sx == 2 * u.x && sy >= 2 * std::min(u.y, v.y) &&
          sy <= 2 * std::max(u.y, v.y))
        return true;
    }
  }
  return in;
}

bool ring_edge_free(const Ring& r, Point a, Point b) {
  // both endpoints checked by caller; no strict perpendicular crossing and a
  // free midpoint (doubled coordinates)
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
  return ring_seg_mid_free(r, a, b);
}

}  // namespace

RectPath smallest_path(const Ring& polygon, Point s, Point t) {
  if (!polygon.contains(s) || !polygon.contains(t))
    throw std::runtime_error("PointOutsidePolygon");
  PolyGrid g;
  {
    std::set<i64> xs, ys;
    for (Point p : polygon.pts) {
      xs.insert(p.x);
      ys.insert(p.y);
    }
    xs.insert(s.x);
    xs.insert(t.x);
    ys.insert(s.y);
    ys.insert(t.y);
    g.xs.assign(xs.begin(), xs.end());
    g.ys.assign(ys.begin(), ys.end());
  }
  g.nx = int(g.xs.size());
  g.ny = int(g.ys.size());
  g.ok.assign(size_t(g.nx) * g.ny, 0);
  g.right_ok.assign(size_t(g.nx) * g.ny, 0);
  g.up_ok.assign(size_t(g.nx) * g.ny, 0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      g.ok[g.id(i, j)] = polygon.contains({g.xs[i], g.ys[j]});
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i)
      if (g.ok[g.id(i, j)] && g.ok[g.id(i + 1, j)])
        g.right_ok[g.id(i, j)] = ring_edge_free(
            polygon, {g.xs[i], g.ys[j]}, {g.xs[i + 1], g.ys[j]});
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (g.ok[g.id(i, j)] && g.ok[g.id(i, j + 1)])
        g.up_ok[g.id(i, j)] = ring_edge_free(polygon, {g.xs[i], g.ys[j]},
                                             {g.xs[i], g.ys[j + 1]});

  // lexicographic (length, links) Dijkstra over (cell, orientation) states
  int si = int(std::lower_bound(g.xs.begin(), g.xs.end(), s.x) - g.xs.begin());
  int sj = int(std::lower_bound(g.ys.begin(), g.ys.end(), s.y) - g.ys.begin());
  int ti = int(std::lower_bound(g.xs.begin(), g.xs.end(), t.x) - g.xs.begin());
  int tj = int(std::lower_bound(g.ys.begin(), g.ys.end(), t.y) - g.ys.begin());
  size_t N = size_t(g.nx) * g.ny * 2;  // orientation: 0 horizontal, 1 vertical
  const i64 INF = std::numeric_limits<i64>::max();
  std::vector<std::pair<i64, i64>> best(N, {INF, INF});
  std::vector<int> par(N, -1);
  using Key = std::tuple<i64, i64, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;
  auto push = [&](int state, std::pair<i64, i64> m, int from) {
    if (m < best[state]) {
      best[state] = m;
      par[state] = from;
      pq.push({m.first, m.second, state});
    }
  };
  auto edge_to = [&](int i, int j, int dir, int& ni, int& nj) {
    static const int dx[4] = {1, 0, -1, 0}, dy[4] = {0, 1, 0, -1};
    ni = i + dx[dir];
    nj = j + dy[dir];
    if (ni < 0 || nj < 0 || ni >= g.nx || nj >= g.ny) return false;
    if (dir == 0) return g.right_ok[g.id(i, j)] != 0;
    if (dir == 2) return g.right_ok[g.id(ni, nj)] != 0;
    if (dir == 1) return g.up_ok[g.id(i, j)] != 0;
    return g.up_ok[g.id(ni, nj)] != 0;
  };
  auto state_of = [&](int i, int j, int o) { return (g.id(i, j)) * 2 + o; };
  if (s == t) {
    RectPath p0;
    p0.pts = {s};
    return p0;
  }
  for (int dir = 0; dir < 4; ++dir) {
    int ni, nj;
    if (edge_to(si, sj, dir, ni, nj)) {
      i64 len = (dir % 2 == 0) ? std::llabs(g.xs[ni] - g.xs[si])
                               : std::llabs(g.ys[nj] - g.ys[sj]);
      push(state_of(ni, nj, dir % 2), {len, 1}, -2 - dir);
    }
  }
  while (!pq.empty()) {
    auto [len, links, st] = pq.top();
    pq.pop();
    if (best[st] != std::pair<i64, i64>{len, links}) continue;
    int o = st % 2, cell = st / 2, i = cell % g.nx, j = cell / g.nx;
    if (i == ti && j == tj) break;
    for (int dir = 0; dir < 4; ++dir) {
      int ni, nj;
      if (!edge_to(i, j, dir, ni, nj)) continue;
      i64 dl = (dir % 2 == 0) ? std::llabs(g.xs[ni] - g.xs[i])
                              : std::llabs(g.ys[nj] - g.ys[j]);
      i64 nlinks = links + ((dir % 2) == o ? 0 : 1);
      push(state_of(ni, nj, dir % 2), {len + dl, nlinks}, st);
    }
  }
  int bst = -1;
  std::pair<i64, i64> bm{INF, INF};
  for (int o = 0; o < 2; ++o)
    if (best[state_of(ti, tj, o)] < bm) {
      bm = best[state_of(ti, tj, o)];
      bst = state_of(ti, tj, o);
    }
  if (bst < 0) throw std::runtime_error("Unreachable");
  std::vector<Point> rev;
  for (int st = bst; st >= 0; st = par[st]) {
    int cell = st / 2;
    rev.push_back({g.xs[cell % g.nx], g.ys[cell / g.nx]});
    if (par[st] < -1) break;
  }
  rev.push_back(s);
  std::reverse(rev.begin(), rev.end());
  RectPath path;
  path.pts = std::move(rev);
  return path.canonical();
}

}  // namespace rectpath
