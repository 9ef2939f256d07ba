#include "rectpath/corridor.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace rectpath {

namespace {

// Stitch a set of disjoint boundary segments (sharing only endpoints) into a
// counter-clockwise ring, merging collinear neighbours.
Ring stitch_ring(std::vector<Seg> segs) {
  std::map<Point, std::vector<int>> at;
  for (size_t i = 0; i < segs.size(); ++i) {
    at[segs[i].a].push_back(int(i));
    at[segs[i].b].push_back(int(i));
  }
  for (auto& [p, v] : at)
    if (v.size() != 2)
      throw std::logic_error("corridor boundary is not a simple cycle");
  std::vector<Point> walk;
  Point start = at.begin()->first;
  Point cur = start;
  int prev_seg = -1;
  do {
    walk.push_back(cur);
    const auto& inc = at[cur];
    int nxt = (inc[0] == prev_seg) ? inc[1] : inc[0];
    cur = (segs[nxt].a == cur) ? segs[nxt].b : segs[nxt].a;
    prev_seg = nxt;
  } while (!(cur == start));
  // merge collinear runs
  std::vector<Point> pts;
  size_t m = walk.size();
  for (size_t i = 0; i < m; ++i) {
    Point a = walk[(i + m - 1) % m], b = walk[i], c = walk[(i + 1) % m];
    bool collinear = (a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y);
    if (!collinear) pts.push_back(b);
  }
  Ring r{std::move(pts)};
  if (r.area_x2() < 0) std::reverse(r.pts.begin(), r.pts.end());
  return r;
}

Ring corridor_ring(const VerticalDecomposition& vd,
                   const std::vector<int>& cells) {
  std::vector<Seg> segs;
  // horizontal cell sides are always boundary (cells only meet across
  // vertical diagonals)
  for (int c : cells) {
    const Rect& r = vd.cells[c].rect;
    segs.push_back(Seg{{r.x1, r.y1}, {r.x2, r.y1}});
    segs.push_back(Seg{{r.x1, r.y2}, {r.x2, r.y2}});
  }
  // vertical boundary = XOR of left and right wall coverage per x-line
  std::set<int> in(cells.begin(), cells.end());
  std::map<i64, std::map<i64, int>> delta;  // x -> y -> +right -left
  for (int c : cells) {
    const Rect& r = vd.cells[c].rect;
    delta[r.x2][r.y1] += 1;  // cell is left of line x2
    delta[r.x2][r.y2] -= 1;
    delta[r.x1][r.y1] -= 1;  // cell is right of line x1
    delta[r.x1][r.y2] += 1;
  }
  for (auto& [x, dm] : delta) {
    int cov = 0;
    i64 runy = 0;
    for (auto& [y, dv] : dm) {
      if (cov != 0 && y > runy) segs.push_back(Seg{{x, runy}, {x, y}});
      cov += dv;
      runy = y;
    }
    assert(cov == 0);
  }
  // merge touching collinear pieces before stitching (horizontal sides of
  // x-adjacent cells on one obstacle edge; vertical XOR pieces are maximal)
  std::map<std::pair<bool, i64>, std::vector<std::pair<i64, i64>>> runs;
  for (const Seg& s : segs) {
    bool horiz = s.horizontal();
    i64 line = horiz ? s.a.y : s.a.x;
    i64 lo = horiz ? s.lo_x() : s.lo_y(), hi = horiz ? s.hi_x() : s.hi_y();
    runs[{horiz, line}].push_back({lo, hi});
  }
  std::vector<Seg> merged;
  for (auto& [key, iv] : runs) {
    std::sort(iv.begin(), iv.end());
    i64 lo = iv[0].first, hi = iv[0].second;
    auto flush = [&]() {
      merged.push_back(key.first ? Seg{{lo, key.second}, {hi, key.second}}
                                 : Seg{{key.second, lo}, {key.second, hi}});
    };
    for (size_t i = 1; i < iv.size(); ++i) {
      if (iv[i].first > hi) {
        flush();
        lo = iv[i].first;
        hi = iv[i].second;
      } else {
        hi = std::max(hi, iv[i].second);
      }
    }
    flush();
  }
  // split merged runs at endpoints of perpendicular pieces so every shared
  // endpoint is a segment endpoint
  std::set<Point> cuts;
  for (const Seg& s : merged) {
    cuts.insert(s.a);
    cuts.insert(s.b);
  }
  std::vector<Seg> fin;
  for (const Seg& s : merged) {
    std::vector<Point> mids;
    for (const Point& p : cuts)
      if (s.contains(p) && !(p == s.a) && !(p == s.b)) mids.push_back(p);
    std::sort(mids.begin(), mids.end(), [](Point a, Point b) {
      return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    Point prev = s.horizontal() ? Point{s.lo_x(), s.a.y} : Point{s.a.x, s.lo_y()};
    Point last = s.horizontal() ? Point{s.hi_x(), s.a.y} : Point{s.a.x, s.hi_y()};
    for (Point m : mids) {
      fin.push_back(Seg{prev, m});
      prev = m;
    }
    fin.push_back(Seg{prev, last});
  }
  return stitch_ring(std::move(fin));
}

// Insert p as a ring vertex when it lies strictly inside an edge (doors can
// be proper sub-segments of merged boundary edges).
void insert_vertex(Ring& r, Point p) {
  for (size_t i = 0; i < r.size(); ++i) {
    if (r.pts[i] == p) return;
    Seg e{r.pts[i], r.at(i + 1)};
    if (e.contains(p) && !(p == e.a) && !(p == e.b)) {
      r.pts.insert(r.pts.begin() + i + 1, p);
      return;
    }
  }
  throw std::logic_error("door endpoint not on corridor boundary");
}

}  // namespace

bool ReducedDomain::contains(Point p) const {
  for (const Rect& r : rects)
    if (r.contains(p)) return true;
  return false;
}

bool ReducedDomain::contains(const Seg& s) const {
  // 1D coverage of the segment by rectangle slices
  bool horiz = s.horizontal();
  i64 lo = horiz ? s.lo_x() : s.lo_y(), hi = horiz ? s.hi_x() : s.hi_y();
  std::vector<std::pair<i64, i64>> iv;
  for (const Rect& r : rects) {
    i64 a, b;
    if (horiz) {
      if (s.a.y < r.y1 || s.a.y > r.y2) continue;
      a = std::max(lo, r.x1), b = std::min(hi, r.x2);
    } else {
      if (s.a.x < r.x1 || s.a.x > r.x2) continue;
      a = std::max(lo, r.y1), b = std::min(hi, r.y2);
    }
    if (a <= b) iv.push_back({a, b});
  }
  std::sort(iv.begin(), iv.end());
  i64 reach = lo;
  for (auto& [a, b] : iv) {
    if (a > reach) return false;
    reach = std::max(reach, b);
  }
  return reach >= hi;
}

CorridorStructure CorridorStructure::build(const Domain& d,
                                           const VerticalDecomposition& vd) {
  CorridorStructure cs;
  int nc = int(vd.cells.size());

  // iterated degree-1 pruning of the dual graph
  std::vector<int> deg(nc);
  for (int c = 0; c < nc; ++c) deg[c] = int(vd.adj[c].size());
  std::vector<char> pruned(nc, 0);
  std::queue<int> work;
  for (int c = 0; c < nc; ++c)
    if (deg[c] <= 1) work.push(c);
  while (!work.empty()) {
    int c = work.front();
    work.pop();
    if (pruned[c] || deg[c] > 1) continue;
    pruned[c] = 1;
    for (auto [nb, dg] : vd.adj[c])
      if (!pruned[nb] && --deg[nb] == 1) work.push(nb);
  }

  // junctions: surviving cells of pruned degree >= 3; on a junction-free
  // cycle (h == 1) designate one surviving cell to keep the shape uniform
  std::vector<char> junction(nc, 0);
  for (int c = 0; c < nc; ++c)
    if (!pruned[c] && deg[c] >= 3) junction[c] = 1;
  bool any = std::any_of(junction.begin(), junction.end(),
                         [](char x) { return x != 0; });
  if (!any && d.h() >= 1) {
    for (int c = 0; c < nc; ++c)
      if (!pruned[c]) {
        junction[c] = 1;
        cs.designated_junction = true;
        break;
      }
  }
  std::vector<int> cell_junction(nc, -1);
  for (int c = 0; c < nc; ++c)
    if (junction[c]) {
      cell_junction[c] = int(cs.junction_rects.size());
      cs.junction_rects.push_back(vd.cells[c].rect);
      cs.junction_cells.push_back(c);
    }

  // corridors: components of non-junction cells in the full dual
  cs.cell_corridor_.assign(nc, -1);
  for (int c0 = 0; c0 < nc; ++c0) {
    if (junction[c0] || cs.cell_corridor_[c0] != -1) continue;
    int id = int(cs.corridors.size());
    cs.corridors.push_back({});
    Corridor& cor = cs.corridors.back();
    std::queue<int> bfs;
    bfs.push(c0);
    cs.cell_corridor_[c0] = id;
    while (!bfs.empty()) {
      int c = bfs.front();
      bfs.pop();
      cor.cells.push_back(c);
      for (auto [nb, dg] : vd.adj[c]) {
        if (junction[nb] || cs.cell_corridor_[nb] != -1) continue;
        cs.cell_corridor_[nb] = id;
        bfs.push(nb);
      }
    }
    std::sort(cor.cells.begin(), cor.cells.end());
  }

  // doors + degenerate corridors from diagonals
  cs.diag_corridor_.assign(vd.diagonals.size(), -1);
  std::vector<std::vector<std::pair<int, int>>> doors(cs.corridors.size());
  for (size_t g = 0; g < vd.diagonals.size(); ++g) {
    const VDDiagonal& dg = vd.diagonals[g];
    int jl = junction[dg.left_cell] ? cell_junction[dg.left_cell] : -1;
    int jr = junction[dg.right_cell] ? cell_junction[dg.right_cell] : -1;
    if (jl >= 0 && jr >= 0) {
      // degenerate corridor
      int id = int(cs.corridors.size());
      cs.corridors.push_back({});
      Corridor& cor = cs.corridors.back();
      Seg seg{{dg.x, dg.y1}, {dg.x, dg.y2}};
      cor.doors[0] = {seg, int(g), jl, true};
      cor.doors[1] = {seg, int(g), jr, false};
      cor.kind = CorridorKind::Degenerate;
      cor.canal = Rect{dg.x, dg.y1, dg.x, dg.y2};
      cor.upper_bridge = Seg{{dg.x, dg.y2}, {dg.x, dg.y2}};
      cor.lower_bridge = Seg{{dg.x, dg.y1}, {dg.x, dg.y1}};
      cor.backbone = {{dg.x, dg.y1}, {dg.x, dg.y2}};
      cs.diag_corridor_[g] = id;
    } else if (jl >= 0 || jr >= 0) {
      int cor = cs.cell_corridor_[jl >= 0 ? dg.right_cell : dg.left_cell];
      doors[cor].push_back({int(g), jl >= 0 ? jl : jr});
      cs.diag_corridor_[g] = cor;
    } else {
      cs.diag_corridor_[g] = cs.cell_corridor_[dg.left_cell];
    }
  }

  // attach doors, boundary rings, classification
  for (size_t c = 0; c < cs.corridors.size(); ++c) {
    Corridor& cor = cs.corridors[c];
    if (cor.kind == CorridorKind::Degenerate) continue;
    auto& dl = doors[c];
    std::sort(dl.begin(), dl.end());
    if (dl.size() > 2)
      throw std::logic_error("corridor with more than two doors");
    for (size_t k = 0; k < dl.size(); ++k) {
      const VDDiagonal& dg = vd.diagonals[dl[k].first];
      bool on_right = cs.cell_corridor_[dg.right_cell] == int(c);
      cor.doors[k] = {Seg{{dg.x, dg.y1}, {dg.x, dg.y2}}, dl[k].first,
                      dl[k].second, on_right};
    }
    if (dl.size() == 1) cor.doors[1] = cor.doors[0];  // dead-end corridor
    cor.boundary = corridor_ring(vd, cor.cells);
    for (size_t k = 0; k < dl.size(); ++k) {
      insert_vertex(cor.boundary, cor.doors[k].seg.a);
      insert_vertex(cor.boundary, cor.doors[k].seg.b);
    }

    if (dl.empty()) {  // h == 0: the whole domain is one corridor
      cor.kind = CorridorKind::Open;
      continue;
    }
    if (dl.size() == 1 || cor.doors[0].diagonal == cor.doors[1].diagonal) {
      // dead-end: both doors coincide; open with a zero-width canal
      const Seg& s = cor.doors[0].seg;
      cor.kind = CorridorKind::Open;
      cor.canal = Rect{s.a.x, s.lo_y(), s.a.x, s.hi_y()};
      cor.upper_bridge = Seg{{s.a.x, s.hi_y()}, {s.a.x, s.hi_y()}};
      cor.lower_bridge = Seg{{s.a.x, s.lo_y()}, {s.a.x, s.lo_y()}};
      cor.backbone = {{s.a.x, s.lo_y()}, {s.a.x, s.hi_y()}};
      continue;
    }

    // unique dual path between the doors inside the corridor (the component
    // is a tree); collect diagonals along it, doors included
    int start = junction[vd.diagonals[cor.doors[0].diagonal].left_cell]
                    ? vd.diagonals[cor.doors[0].diagonal].right_cell
                    : vd.diagonals[cor.doors[0].diagonal].left_cell;
    int goal = junction[vd.diagonals[cor.doors[1].diagonal].left_cell]
                   ? vd.diagonals[cor.doors[1].diagonal].right_cell
                   : vd.diagonals[cor.doors[1].diagonal].left_cell;
    std::map<int, std::pair<int, int>> par;  // cell -> (prev cell, diagonal)
    std::queue<int> bfs;
    bfs.push(start);
    par[start] = {start, -1};
    while (!bfs.empty()) {
      int cc = bfs.front();
      bfs.pop();
      if (cc == goal) break;
      for (auto [nb, dgi] : vd.adj[cc]) {
        if (junction[nb] || par.count(nb)) continue;
        par[nb] = {cc, dgi};
        bfs.push(nb);
      }
    }
    std::vector<int> path_diags{cor.doors[0].diagonal};
    {
      std::vector<int> rev;
      for (int cc = goal; cc != start; cc = par[cc].first)
        rev.push_back(par[cc].second);
      path_diags.insert(path_diags.end(), rev.rbegin(), rev.rend());
      path_diags.push_back(cor.doors[1].diagonal);
    }
    bool monotone = true;
    i64 ylo = std::numeric_limits<i64>::min();
    i64 yhi = std::numeric_limits<i64>::max();
    for (size_t i = 0; i < path_diags.size(); ++i) {
      const VDDiagonal& dg = vd.diagonals[path_diags[i]];
      ylo = std::max(ylo, dg.y1);
      yhi = std::min(yhi, dg.y2);
      if (i > 0) {
        i64 px = vd.diagonals[path_diags[i - 1]].x;
        bool inc = vd.diagonals[path_diags[1]].x >
                   vd.diagonals[path_diags[0]].x;
        if ((dg.x > px) != inc || dg.x == px) monotone = false;
      }
    }
    if (monotone && ylo <= yhi) {
      cor.kind = CorridorKind::Open;
      i64 xa = cor.doors[0].seg.a.x, xb = cor.doors[1].seg.a.x;
      cor.canal = Rect{std::min(xa, xb), ylo, std::max(xa, xb), yhi};
      cor.upper_bridge = Seg{{cor.canal->x1, yhi}, {cor.canal->x2, yhi}};
      cor.lower_bridge = Seg{{cor.canal->x1, ylo}, {cor.canal->x2, ylo}};
      cor.backbone = {{xa, ylo}, {xa, yhi}, {xb, ylo}, {xb, yhi}};
    } else {
      cor.kind = CorridorKind::Closed;
    }
  }

  // eager histogram partitions; closed corridors also get backbone points
  cs.hists_.resize(cs.corridors.size());
  for (size_t c = 0; c < cs.corridors.size(); ++c) {
    Corridor& cor = cs.corridors[c];
    if (cor.kind == CorridorKind::Degenerate || cor.boundary.pts.empty())
      continue;
    if (cor.doors[0].diagonal < 0) continue;  // h == 0 corridor: no doors
    for (int k = 0; k < 2; ++k) {
      if (k == 1 && cor.doors[1].diagonal == cor.doors[0].diagonal) {
        cs.hists_[c][1] = nullptr;
        continue;
      }
      cs.hists_[c][k] = std::make_unique<HistogramPartition>(
          HistogramPartition::build(cor.boundary, cor.doors[k].seg));
    }
    if (cor.kind == CorridorKind::Closed) {
      Point q1 = cs.hists_[c][0]->door_query(cor.doors[1].seg.a).q;
      Point q2 = cs.hists_[c][1]->door_query(cor.doors[0].seg.a).q;
      cor.backbone = {q1, q2};
    }
  }

  // corridor-graph edges
  for (const Corridor& cor : cs.corridors)
    cs.edges.push_back({cor.doors[0].junction, cor.doors[1].junction});

  // vertex -> corridor
  std::map<i64, std::vector<int>> diag_at_x;
  for (size_t g = 0; g < vd.diagonals.size(); ++g)
    diag_at_x[vd.diagonals[g].x].push_back(int(g));
  cs.vertex_to_corridor.assign(d.vertices.size(), -1);
  for (size_t i = 0; i < d.vertices.size(); ++i) {
    Point v = d.vertices[i];
    auto it = diag_at_x.find(v.x);
    if (it != diag_at_x.end())
      for (int g : it->second)
        if (vd.diagonals[g].y1 <= v.y && v.y <= vd.diagonals[g].y2) {
          cs.vertex_to_corridor[i] = cs.diag_corridor_[g];
          break;
        }
    if (cs.vertex_to_corridor[i] != -1) continue;
    int cell = vd.locate(v);
    assert(cell >= 0);
    if (cs.cell_corridor_[cell] != -1) {
      cs.vertex_to_corridor[i] = cs.cell_corridor_[cell];
    } else {
      // vertex on a junction rectangle without a diagonal through it: fall
      // back to the corridor of the junction's first incident diagonal
      cs.vertex_to_corridor[i] = cs.diag_corridor_[vd.adj[cell][0].second];
    }
  }
  return cs;
}

const HistogramPartition& CorridorStructure::hist(int c, int door) const {
  const auto& slot =
      hists_[c][door == 1 && hists_[c][1] ? 1 : 0];
  if (!slot) throw std::logic_error("no histogram for this corridor/door");
  return *slot;
}

Point CorridorStructure::connection_point(int c, int door, Point p) const {
  return hist(c, door).door_query(p).q;
}

RectPath CorridorStructure::canonical_path(int c, Point p1, Point p2) const {
  const Corridor& cor = corridors[c];
  RectPath out;
  if (cor.kind == CorridorKind::Degenerate ||
      cor.doors[0].diagonal == cor.doors[1].diagonal) {
    out.append(p1);
    out.append(p2);
    return out.canonical();
  }
  if (cor.kind == CorridorKind::Open) {
    const Rect& R = *cor.canal;
    i64 x1 = cor.doors[0].seg.a.x, x2 = cor.doors[1].seg.a.x;
    if (p1.y >= R.y1 && p1.y <= R.y2 && p2.y >= R.y1 && p2.y <= R.y2) {
      out.append(p1);
      out.append(Point{x1, p2.y});
      out.append(p2);
      return out.canonical();
    }
    i64 up = std::abs(p1.y - R.y2) + std::abs(p2.y - R.y2);
    i64 dn = std::abs(p1.y - R.y1) + std::abs(p2.y - R.y1);
    i64 by = (up <= dn) ? R.y2 : R.y1;
    out.append(p1);
    out.append(Point{x1, by});
    out.append(Point{x2, by});
    out.append(p2);
    return out.canonical();
  }
  // closed: p1 -> q1 -> smallest(q1,q2) -> q2 -> p2
  Point q1 = cor.backbone[0], q2 = cor.backbone[1];
  RectPath mid = hist(c, 0).admissible_path(q2, 1).reversed();  // q1 -> q2
  out.append(p1);
  out.append(q1);
  for (size_t i = 1; i < mid.pts.size(); ++i) out.append(mid.pts[i]);
  out.append(p2);
  return out.canonical();
}

int CorridorStructure::locate_corridor(const VerticalDecomposition& vd,
                                       Point p) const {
  int cell = vd.locate(p);
  if (cell < 0) return -1;
  if (cell_corridor_[cell] >= 0) return cell_corridor_[cell];
  // junction cell: p may sit on one of its door diagonals
  for (auto [nb, g] : vd.adj[cell]) {
    const VDDiagonal& dg = vd.diagonals[g];
    if (p.x == dg.x && dg.y1 <= p.y && p.y <= dg.y2) return diag_corridor_[g];
  }
  return -1;
}

ReducedDomain CorridorStructure::reduced_domain() const {
  ReducedDomain rd;
  rd.rects = junction_rects;
  for (const Corridor& cor : corridors)
    if (cor.kind != CorridorKind::Closed && cor.canal) rd.rects.push_back(*cor.canal);
  return rd;
}

}  // namespace rectpath
