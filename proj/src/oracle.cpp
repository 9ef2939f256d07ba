#include "rectpath/oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace rectpath {

namespace oracle {
namespace {

// Flat edge list of the domain, rebuilt per query (the oracle favours
// independence over speed).
struct Edges {
  std::vector<std::array<i64, 3>> hor;  // (y, x1, x2)
  std::vector<std::array<i64, 3>> ver;  // (x, y1, y2)
};

Edges collect_edges(const Domain& d) {
  Edges e;
  for (const auto& ring : d.rings) {
    for (size_t i = 0; i < ring.size(); ++i) {
      Point a = ring[i], b = ring[(i + 1) % ring.size()];
      if (a.y == b.y)
        e.hor.push_back({a.y, std::min(a.x, b.x), std::max(a.x, b.x)});
      else
        e.ver.push_back({a.x, std::min(a.y, b.y), std::max(a.y, b.y)});
    }
  }
  return e;
}

bool on_edges(const Edges& e, Point p) {
  for (const auto& h : e.hor)
    if (p.y == h[0] && h[1] <= p.x && p.x <= h[2]) return true;
  for (const auto& v : e.ver)
    if (p.x == v[0] && v[1] <= p.y && p.y <= v[2]) return true;
  return false;
}

bool free_point(const Domain& d, const Edges& e, Point p) {
  if (on_edges(e, p)) return true;
  bool in = false;  // parity of upward-ray crossings over all rings
  for (const auto& h : e.hor)
    if (h[1] <= p.x && p.x < h[2] && h[0] > p.y) in = !in;
  (void)d;
  return in;
}

// Containment test at doubled coordinates (allows exact midpoints of
// integer segments).  Same boundary/parity rules as free_point.
bool free_point2(const Edges& e, i64 sx, i64 sy) {
  for (const auto& h : e.hor)
    if (sy == 2 * h[0] && 2 * h[1] <= sx && sx <= 2 * h[2]) return true;
  for (const auto& v : e.ver)
    if (sx == 2 * v[0] && 2 * v[1] <= sy && sy <= 2 * v[2]) return true;
  bool in = false;
  for (const auto& h : e.hor)
    if (2 * h[1] <= sx && sx < 2 * h[2] && 2 * h[0] > sy) in = !in;
  return in;
}

struct Grid {
  std::vector<i64> xs, ys;
  std::vector<char> ok;             // vertex in closed free space
  std::vector<char> right_ok, up_ok;  // edge to the right / upwards is free
  int nx = 0, ny = 0;
  int id(int i, int j) const { return j * nx + i; }
};

Grid build_grid(const Domain& d, const Edges& e, Point s, Point t) {
  Grid g;
  std::set<i64> xs, ys;
  for (Point p : d.vertices) {
    xs.insert(p.x);
    ys.insert(p.y);
  }
  xs.insert(s.x);
  xs.insert(t.x);
  ys.insert(s.y);
  ys.insert(t.y);
  g.xs.assign(xs.begin(), xs.end());
  g.ys.assign(ys.begin(), ys.end());
  g.nx = int(g.xs.size());
  g.ny = int(g.ys.size());
  g.ok.assign(size_t(g.nx) * g.ny, 0);
  g.right_ok.assign(size_t(g.nx) * g.ny, 0);
  g.up_ok.assign(size_t(g.nx) * g.ny, 0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      g.ok[g.id(i, j)] = free_point(d, e, {g.xs[i], g.ys[j]});
  // An edge between adjacent grid lines is free iff both ends are free, no
  // perpendicular domain edge crosses it strictly, and its midpoint is free.
  // The midpoint test (at doubled coordinates) rejects chords whose open
  // interior runs through an obstacle while both ends sit on its boundary.
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) {
      if (!g.ok[g.id(i, j)] || !g.ok[g.id(i + 1, j)]) continue;
      bool blocked = false;
      for (const auto& v : e.ver)
        if (g.xs[i] < v[0] && v[0] < g.xs[i + 1] && v[1] < g.ys[j] &&
            g.ys[j] < v[2]) {
          blocked = true;
          break;
        }
      if (!blocked && !free_point2(e, g.xs[i] + g.xs[i + 1], 2 * g.ys[j]))
        blocked = true;
      g.right_ok[g.id(i, j)] = !blocked;
    }
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (!g.ok[g.id(i, j)] || !g.ok[g.id(i, j + 1)]) continue;
      bool blocked = false;
      for (const auto& h : e.hor)
        if (g.ys[j] < h[0] && h[0] < g.ys[j + 1] && h[1] < g.xs[i] &&
            g.xs[i] < h[2]) {
          blocked = true;
          break;
        }
      if (!blocked && !free_point2(e, 2 * g.xs[i], g.ys[j] + g.ys[j + 1]))
        blocked = true;
      g.up_ok[g.id(i, j)] = !blocked;
    }
  return g;
}

struct Ctx {
  Grid g;
  int si, sj, ti, tj;
};

Ctx make_ctx(const Domain& d, Point s, Point t) {
  Edges e = collect_edges(d);
  if (!free_point(d, e, s) || !free_point(d, e, t))
    throw std::runtime_error("PointOutsideDomain");
  Ctx c;
  c.g = build_grid(d, e, s, t);
  c.si = int(std::lower_bound(c.g.xs.begin(), c.g.xs.end(), s.x) - c.g.xs.begin());
  c.sj = int(std::lower_bound(c.g.ys.begin(), c.g.ys.end(), s.y) - c.g.ys.begin());
  c.ti = int(std::lower_bound(c.g.xs.begin(), c.g.xs.end(), t.x) - c.g.xs.begin());
  c.tj = int(std::lower_bound(c.g.ys.begin(), c.g.ys.end(), t.y) - c.g.ys.begin());
  return c;
}

// Neighbour iteration: dir 0=E,1=N,2=W,3=S.
struct Step {
  int i, j;
  i64 len;
  bool ok;
};
Step step(const Grid& g, int i, int j, int dir) {
  switch (dir) {
    case 0:
      if (i + 1 < g.nx && g.right_ok[g.id(i, j)])
        return {i + 1, j, g.xs[i + 1] - g.xs[i], true};
      break;
    case 1:
      if (j + 1 < g.ny && g.up_ok[g.id(i, j)])
        return {i, j + 1, g.ys[j + 1] - g.ys[j], true};
      break;
    case 2:
      if (i > 0 && g.right_ok[g.id(i - 1, j)])
        return {i - 1, j, g.xs[i] - g.xs[i - 1], true};
      break;
    default:
      if (j > 0 && g.up_ok[g.id(i, j - 1)])
        return {i, j - 1, g.ys[j] - g.ys[j - 1], true};
      break;
  }
  return {0, 0, 0, false};
}

// Lexicographic Dijkstra over (vertex, incoming orientation) states.
// primary/secondary selected by `links_first`.
Measure lex_search(const Ctx& c, bool links_first) {
  const Grid& g = c.g;
  if (c.si == c.ti && c.sj == c.tj) return {0, 0};
  using Key = std::pair<i64, i64>;
  const Key inf{std::numeric_limits<i64>::max(), std::numeric_limits<i64>::max()};
  // state: vertex * 2 + orient (0 = horizontal, 1 = vertical)
  std::vector<Key> dist(size_t(g.nx) * g.ny * 2, inf);
  auto key_of = [&](i64 len, i64 links) {
    return links_first ? Key{links, len} : Key{len, links};
  };
  std::priority_queue<std::pair<Key, int>, std::vector<std::pair<Key, int>>,
                      std::greater<>> pq;
  for (int dir = 0; dir < 4; ++dir) {
    Step st = step(g, c.si, c.sj, dir);
    if (!st.ok) continue;
    int orient = (dir == 0 || dir == 2) ? 0 : 1;
    int sid = (g.id(st.i, st.j)) * 2 + orient;
    Key k = key_of(st.len, 1);
    if (k < dist[sid]) {
      dist[sid] = k;
      pq.push({k, sid});
    }
  }
  while (!pq.empty()) {
    auto [k, sid] = pq.top();
    pq.pop();
    if (dist[sid] != k) continue;
    int orient = sid & 1, vid = sid >> 1;
    int i = vid % g.nx, j = vid / g.nx;
    i64 len = links_first ? k.second : k.first;
    i64 links = links_first ? k.first : k.second;
    for (int dir = 0; dir < 4; ++dir) {
      Step st = step(g, i, j, dir);
      if (!st.ok) continue;
      int norient = (dir == 0 || dir == 2) ? 0 : 1;
      Key nk = key_of(len + st.len, links + (norient != orient ? 1 : 0));
      int nid = g.id(st.i, st.j) * 2 + norient;
      if (nk < dist[nid]) {
        dist[nid] = nk;
        pq.push({nk, nid});
      }
    }
  }
  Key best = std::min(dist[(g.id(c.ti, c.tj)) * 2],
                      dist[(g.id(c.ti, c.tj)) * 2 + 1]);
  if (best == inf) throw std::runtime_error("Unreachable");
  return links_first ? Measure{best.second, best.first}
                     : Measure{best.first, best.second};
}

// Insert into a Pareto set (sorted by len asc, links desc).  Returns false
// if dominated (or duplicate).
bool pareto_insert(std::vector<Measure>& set, Measure m) {
  for (const Measure& o : set)
    if (o.len <= m.len && o.links <= m.links) return false;
  std::erase_if(set, [&](const Measure& o) {
    return m.len <= o.len && m.links <= o.links;
  });
  set.insert(std::upper_bound(set.begin(), set.end(), m,
                              [](const Measure& a, const Measure& b) {
                                return a.len < b.len;
                              }),
             m);
  return true;
}

std::vector<Measure> pareto_search(const Ctx& c) {
  const Grid& g = c.g;
  if (c.si == c.ti && c.sj == c.tj) return {{0, 0}};
  std::vector<std::vector<Measure>> store(size_t(g.nx) * g.ny * 2);
  using Item = std::pair<std::pair<i64, i64>, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto push = [&](int sid, Measure m) {
    if (pareto_insert(store[sid], m)) pq.push({{m.len, m.links}, sid});
  };
  for (int dir = 0; dir < 4; ++dir) {
    Step st = step(g, c.si, c.sj, dir);
    if (!st.ok) continue;
    int orient = (dir == 0 || dir == 2) ? 0 : 1;
    push(g.id(st.i, st.j) * 2 + orient, {st.len, 1});
  }
  while (!pq.empty()) {
    auto [lm, sid] = pq.top();
    pq.pop();
    Measure m{lm.first, lm.second};
    // Skip if no longer on the frontier of its state.
    bool live = false;
    for (const Measure& o : store[sid]) live |= (o == m);
    if (!live) continue;
    int orient = sid & 1, vid = sid >> 1;
    int i = vid % g.nx, j = vid / g.nx;
    for (int dir = 0; dir < 4; ++dir) {
      Step st = step(g, i, j, dir);
      if (!st.ok) continue;
      int norient = (dir == 0 || dir == 2) ? 0 : 1;
      push(g.id(st.i, st.j) * 2 + norient,
           {m.len + st.len, m.links + (norient != orient ? 1 : 0)});
    }
  }
  std::vector<Measure> out;
  int tvid = g.id(c.ti, c.tj);
  for (int o = 0; o < 2; ++o)
    for (const Measure& m : store[tvid * 2 + o]) pareto_insert(out, m);
  if (out.empty()) throw std::runtime_error("Unreachable");
  return out;
}

}  // namespace

bool point_free(const Domain& d, Point p) {
  Edges e = collect_edges(d);
  return free_point(d, e, p);
}

Measure measures(const Domain& d, Point s, Point t, Objective o) {
  Ctx c = make_ctx(d, s, t);
  switch (o) {
    case Objective::MLS: return lex_search(c, false);
    case Objective::SML:
    case Objective::ML: return lex_search(c, true);
    default: throw std::invalid_argument("use oracle::cost for Cost");
  }
}

i64 cost(const Domain& d, Point s, Point t, const CostFunction& f) {
  Ctx c = make_ctx(d, s, t);
  i64 best = CostFunction::kInf;
  for (const Measure& m : pareto_search(c)) best = std::min(best, f(m));
  return best;
}

std::vector<Measure> frontier(const Domain& d, Point s, Point t) {
  Ctx c = make_ctx(d, s, t);
  return pareto_search(c);
}

}  // namespace oracle
}  // namespace rectpath
