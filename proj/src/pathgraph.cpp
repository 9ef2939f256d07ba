#include "rectpath/pathgraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace rectpath {

// ---------------------------------------------------------------- cut tree

CutLineTree CutLineTree::build(const std::vector<Point>& pts) {
  CutLineTree t;
  if (pts.empty()) return t;
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    if (pts[a].y != pts[b].y) return pts[a].y < pts[b].y;
    return a < b;
  });
  // recursive median split; points on the cut-line are consumed at the node
  auto rec = [&](auto&& self, std::vector<int> sub, int depth) -> int {
    int id = int(t.nodes.size());
    t.nodes.push_back({});
    int m = int(sub.size() - 1) / 2;
    i64 cx = pts[sub[m]].x;
    std::vector<int> lo, hi;
    for (int i : sub) {
      if (pts[i].x < cx)
        lo.push_back(i);
      else if (pts[i].x > cx)
        hi.push_back(i);
    }
    t.nodes[id].x = cx;
    t.nodes[id].pts = std::move(sub);
    t.nodes[id].depth = depth;
    t.height = std::max(t.height, depth + 1);
    if (!lo.empty()) {
      int c = self(self, std::move(lo), depth + 1);
      t.nodes[id].left = c;
    }
    if (!hi.empty()) {
      int c = self(self, std::move(hi), depth + 1);
      t.nodes[id].right = c;
    }
    return id;
  };
  rec(rec, order, 0);
  return t;
}

// -------------------------------------------------------------- graph build

PathGraph PathGraph::build(const std::vector<Point>& pts, const RefRegion& ref,
                           const std::vector<CorridorEdgeSpec>& corridor_edges) {
  PathGraph g;
  g.tree = CutLineTree::build(pts);
  std::map<Point, int> at;

  auto get_vertex = [&](Point p, int kind, int owner, int line) {
    auto it = at.find(p);
    if (it != at.end()) {
      PGVertex& v = g.verts[it->second];
      if (kind == 0 && v.kind == 1) v.kind = 0;  // input dominates Steiner
      if (line >= 0 && v.line < 0) v.line = line;
      return it->second;
    }
    int id = int(g.verts.size());
    g.verts.push_back({p, kind, owner, line});
    at.emplace(p, id);
    return id;
  };
  auto add_edge = [&](int a, int b, i64 w, int kind, i64 links, int cor) {
    if (a == b) return;
    g.edges.push_back({a, b, w, kind, links, cor});
  };

  g.input_vertex.resize(pts.size(), -1);
  for (size_t i = 0; i < pts.size(); ++i)
    g.input_vertex[i] = get_vertex(pts[i], 0, int(i), -1);

  // Per input point, walk its root-to-consumption path and place Steiner
  // points on every horizontally visible cut-line; successive projections on
  // the same side are chained with collinear edges (a "spoke"), so every
  // graph vertex on the spoke reaches every other one monotonically.
  std::vector<std::vector<std::pair<i64, int>>> line(g.tree.nodes.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    Point p = pts[i];
    std::vector<std::pair<i64, int>> spoke;  // (x, vertex) incl. p itself
    spoke.emplace_back(p.x, g.input_vertex[i]);
    int node = 0;
    while (node >= 0) {
      CutNode& nd = g.tree.nodes[node];
      if (p.x == nd.x) {
        int vid = g.input_vertex[i];
        if (g.verts[vid].line < 0) g.verts[vid].line = node;
        line[node].emplace_back(p.y, vid);
        break;
      }
      Point proj{nd.x, p.y};
      if (ref.seg_free({p, proj})) {
        int sv = get_vertex(proj, 1, int(i), node);
        line[node].emplace_back(p.y, sv);
        spoke.emplace_back(nd.x, sv);
      }
      node = p.x < nd.x ? nd.left : nd.right;
    }
    std::sort(spoke.begin(), spoke.end());
    for (size_t k = 0; k + 1 < spoke.size(); ++k)
      add_edge(spoke[k].second, spoke[k + 1].second,
               spoke[k + 1].first - spoke[k].first, 0, 1, -1);
  }
  g.on_line.resize(g.tree.nodes.size());
  for (size_t ln = 0; ln < g.tree.nodes.size(); ++ln) {
    auto& lv = line[ln];
    std::sort(lv.begin(), lv.end());
    lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
    i64 x = g.tree.nodes[ln].x;
    for (size_t k = 0; k + 1 < lv.size(); ++k) {
      if (lv[k].second == lv[k + 1].second) continue;
      Seg s{{x, lv[k].first}, {x, lv[k + 1].first}};
      if (ref.seg_free(s))
        add_edge(lv[k].second, lv[k + 1].second, s.len(), 0, 1, -1);
    }
    g.on_line[ln] = std::move(lv);
  }

  for (const CorridorEdgeSpec& ce : corridor_edges) {
    int a = get_vertex(ce.a, 0, -1, -1);
    int b = get_vertex(ce.b, 0, -1, -1);
    add_edge(a, b, ce.weight, ce.kind, ce.links, ce.corridor);
  }

  // canonical vertex order: (x, y, kind); remap everything
  std::vector<int> order(g.verts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const PGVertex &u = g.verts[a], &v = g.verts[b];
    if (u.p != v.p) return u.p < v.p;
    return u.kind < v.kind;
  });
  std::vector<int> newid(g.verts.size());
  for (size_t i = 0; i < order.size(); ++i) newid[order[i]] = int(i);
  std::vector<PGVertex> sorted(g.verts.size());
  for (size_t i = 0; i < order.size(); ++i) sorted[i] = g.verts[order[i]];
  g.verts = std::move(sorted);
  for (PGEdge& e : g.edges) {
    e.a = newid[e.a];
    e.b = newid[e.b];
  }
  for (int& v : g.input_vertex) v = newid[v];
  for (auto& line : g.on_line)
    for (auto& [y, v] : line) v = newid[v];

  g.adj.assign(g.verts.size(), {});
  for (size_t e = 0; e < g.edges.size(); ++e) {
    g.adj[g.edges[e].a].push_back(int(e));
    g.adj[g.edges[e].b].push_back(int(e));
  }
  return g;
}

int PathGraph::vertex_at(Point p) const {
  auto it = std::lower_bound(
      verts.begin(), verts.end(), p,
      [](const PGVertex& v, Point q) { return v.p < q; });
  if (it == verts.end() || it->p != p) return -1;
  return int(it - verts.begin());
}

std::vector<i64> PathGraph::distances(int src) const {
  std::vector<i64> d(verts.size(), -1);
  using QE = std::pair<i64, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
  d[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [dd, u] = pq.top();
    pq.pop();
    if (dd != d[u]) continue;
    for (int ei : adj[u]) {
      const PGEdge& e = edges[ei];
      int v = e.a == u ? e.b : e.a;
      if (d[v] < 0 || dd + e.w < d[v]) {
        d[v] = dd + e.w;
        pq.push({d[v], v});
      }
    }
  }
  return d;
}

// ----------------------------------------------------------------- gateways

GatewaySet insert_query_point(const PathGraph& g, const RefRegion& ref,
                              Point q) {
  GatewaySet gs;
  gs.q = q;
  gs.coincident = g.vertex_at(q);
  if (g.tree.nodes.empty()) return gs;
  int node = 0;
  while (node >= 0) {
    const CutNode& nd = g.tree.nodes[node];
    Point proj{nd.x, q.y};
    if (ref.seg_free({q, proj})) {
      GatewaySet::Attach a;
      a.line_node = node;
      a.proj = proj;
      const auto& line = g.on_line[node];
      auto it = std::lower_bound(line.begin(), line.end(),
                                 std::make_pair(q.y, -1));
      // nearest visible on-line vertex at or above / below the projection
      if (it != line.end()) {
        if (ref.seg_free({proj, g.verts[it->second].p})) a.up = it->second;
      }
      if (it != line.begin()) {
        auto dn = std::prev(it);
        if (ref.seg_free({proj, g.verts[dn->second].p})) a.down = dn->second;
      }
      if (a.up >= 0 || a.down >= 0) gs.lines.push_back(a);
    }
    if (q.x < nd.x)
      node = nd.left;
    else if (q.x > nd.x)
      node = nd.right;
    else
      break;  // q lies on this cut-line; deeper lines cover other points
  }
  return gs;
}

i64 augmented_distance(const PathGraph& g, const GatewaySet& s,
                       const GatewaySet& t) {
  int base = int(g.verts.size());
  // overlay vertices: [base] = s, [base+1] = t, then projection points
  std::vector<std::vector<std::pair<int, i64>>> extra_adj(2);
  std::vector<Point> extra_pts = {s.q, t.q};
  auto new_vertex = [&](Point p) {
    extra_pts.push_back(p);
    extra_adj.push_back({});
    return base + int(extra_pts.size()) - 1;
  };
  std::vector<std::vector<std::pair<int, i64>>> attach_on(g.verts.size());
  auto link = [&](int a, int b, i64 w) {
    auto put = [&](int u, int v) {
      if (u >= base)
        extra_adj[u - base].push_back({v, w});
      else
        attach_on[u].push_back({v, w});
    };
    put(a, b);
    put(b, a);
  };
  auto apply = [&](const GatewaySet& gs, int self) {
    if (gs.coincident >= 0) link(self, gs.coincident, 0);
    for (const auto& a : gs.lines) {
      int pv = a.up >= 0 && g.verts[a.up].p == a.proj ? a.up
               : a.down >= 0 && g.verts[a.down].p == a.proj ? a.down
                                                            : new_vertex(a.proj);
      link(self, pv, std::llabs(gs.q.x - a.proj.x));
      if (a.up >= 0 && pv != a.up)
        link(pv, a.up, std::llabs(g.verts[a.up].p.y - a.proj.y));
      if (a.down >= 0 && pv != a.down)
        link(pv, a.down, std::llabs(g.verts[a.down].p.y - a.proj.y));
    }
  };
  apply(s, base);
  apply(t, base + 1);
  if (s.q == t.q) return 0;

  int total = base + int(extra_pts.size());
  std::vector<i64> d(total, -1);
  using QE = std::pair<i64, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
  d[base] = 0;
  pq.push({0, base});
  while (!pq.empty()) {
    auto [dd, u] = pq.top();
    pq.pop();
    if (dd != d[u]) continue;
    auto relax = [&](int v, i64 w) {
      if (d[v] < 0 || dd + w < d[v]) {
        d[v] = dd + w;
        pq.push({d[v], v});
      }
    };
    if (u < base) {
      for (int ei : g.adj[u]) {
        const PGEdge& e = g.edges[ei];
        relax(e.a == u ? e.b : e.a, e.w);
      }
      for (auto [v, w] : attach_on[u]) relax(v, w);
    } else {
      for (auto [v, w] : extra_adj[u - base]) relax(v, w);
    }
  }
  return d[base + 1];
}

// ---------------------------------------------------------------- utilities

bool staircase_exists(const PathGraph& g, int p, int q) {
  if (p == q) return true;
  Point a = g.verts[p].p, b = g.verts[q].p;
  i64 sx = (b.x > a.x) - (b.x < a.x), sy = (b.y > a.y) - (b.y < a.y);
  Rect r{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x),
         std::max(a.y, b.y)};
  // monotone BFS toward q over ordinary edges inside the rectangle
  std::vector<char> seen(g.verts.size(), 0);
  std::queue<int> bfs;
  seen[p] = 1;
  bfs.push(p);
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    if (u == q) return true;
    Point up = g.verts[u].p;
    for (int ei : g.adj[u]) {
      const PGEdge& e = g.edges[ei];
      if (e.kind != 0) continue;
      int v = e.a == u ? e.b : e.a;
      if (seen[v]) continue;
      Point vp = g.verts[v].p;
      if (!r.contains(vp)) continue;
      if ((vp.x - up.x) * sx < 0 || (vp.y - up.y) * sy < 0) continue;
      seen[v] = 1;
      bfs.push(v);
    }
  }
  return false;
}

BackboneSet backbone_set(const CorridorStructure& cs) {
  BackboneSet bs;
  std::set<Point> seen;
  auto add_pt = [&](Point p) {
    if (seen.insert(p).second) bs.pts.push_back(p);
  };
  for (size_t c = 0; c < cs.corridors.size(); ++c) {
    const Corridor& cor = cs.corridors[c];
    for (Point p : cor.backbone) add_pt(p);
    if (cor.kind == CorridorKind::Closed) {
      RectPath cp = cs.canonical_path(int(c), cor.backbone[0], cor.backbone[1]);
      bs.edges.push_back({cor.backbone[0], cor.backbone[1], cp.length(),
                          cp.links(), int(c), 1});
    }
  }
  return bs;
}

}  // namespace rectpath
