#include "rectpath/search.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <map>
#include <queue>
#include <tuple>

#include "rectpath/histogram.hpp"

namespace rectpath {
namespace {

std::array<Dir, 2> perps(Dir d) {
  if (is_horizontal(d)) return {Dir::North, Dir::South};
  return {Dir::East, Dir::West};
}

// Normal form used by the engine: collinear same-direction steps merged,
// unflagged zero steps dropped, flagged zero-length links preserved.
RectPath tidy(const RectPath& in) {
  RectPath out;
  for (size_t i = 0; i < in.pts.size(); ++i) {
    Point p = in.pts[i];
    bool zf = i >= 1 && i - 1 < in.zflag.size() && in.zflag[i - 1] &&
              in.pts[i - 1] == p;
    if (!out.pts.empty() && out.pts.back() == p && !zf) continue;
    if (!zf && out.pts.size() >= 2 && out.pts.back() != p) {
      Point a = out.pts[out.pts.size() - 2], b = out.pts.back();
      if (a != b && step_dir(a, b) == step_dir(b, p)) {
        out.pts.pop_back();
        if (!out.zflag.empty()) out.zflag.pop_back();
      }
    }
    out.append(p, zf);
  }
  return out;
}

struct TailInfo {
  Seg last{};
  bool has_before = false;
  Seg before{};
  bool before_zero = false;
};

TailInfo tail_of(const RectPath& p) {
  TailInfo t;
  size_t n = p.pts.size();
  assert(n >= 2 && p.pts[n - 1] != p.pts[n - 2]);
  t.last = {p.pts[n - 2], p.pts[n - 1]};
  if (n >= 3) {
    t.has_before = true;
    t.before = {p.pts[n - 3], p.pts[n - 2]};
    t.before_zero = p.pts[n - 3] == p.pts[n - 2];
  }
  return t;
}

enum class Op : uint8_t { Start, StartConn, Extend, NewSeg, UTurn, Drag,
                          DragAnchor, Corridor };

struct Label {
  int at = -1;
  Measure m;
  i64 f = 0;  // cost value under Objective::Cost
  Seg last{};
  Dir tau = Dir::East, rho = Dir::North;
  // The last segment opens its staircase: a corner may be added even while
  // floating (the staircase changes between the two first-edge orientations).
  bool piece_start = false;
  bool fixed = false;
  bool has_before = false;
  Seg before{};
  bool before_zero = false;
  int parent = -1;
  Op op = Op::Start;
  int arena = -1;  // StartConn / Corridor sub-path
  bool dead = false;
};

using Key = std::array<i64, 3>;
using PQE = std::tuple<i64, i64, i64, int, int>;  // key, vertex, label id

struct FinishSide {
  int vertex = -1;
  const HistogramPartition* H = nullptr;
  DoorIntervals dq;
  RectPath p1, p2;  // admissible paths from t to the connection point
  Point t{};
};

struct Engine {
  const Domain& dom;
  const PathGraph& g;
  Objective obj;
  SearchOptions opt;
  const CorridorStructure* cs = nullptr;

  std::deque<Label> labels;
  std::vector<RectPath> arena;

  struct Store {
    std::vector<int> alive;
    std::map<std::array<i64, 3>, int> keyed;  // (last.a.x, last.a.y, rho)
  };
  std::vector<Store> store;

  std::vector<FinishSide> finish;
  std::vector<std::vector<int>> finish_at;  // vertex -> finish side indices
  int target_vertex = -1;

  bool have_cand = false;
  Key cand_key{};
  Measure cand_m;
  i64 cand_f = 0;
  int cand_label = -1;
  int cand_recipe = -1;  // -2 direct path, -1 label at t, 0 through,
                         // 1 splice pi1, 2 splice pi2
  int cand_side = -1;
  Point cand_p{};
  RectPath cand_direct;

  std::priority_queue<PQE, std::vector<PQE>, std::greater<PQE>> pq;
  SearchStats stats;

  Engine(const Domain& d, const PathGraph& graph, Objective o,
         const SearchOptions& options)
      : dom(d), g(graph), obj(o), opt(options) {
    if (obj == Objective::Cost && !opt.cost)
      throw std::invalid_argument("cost objective requires a cost function");
    store.resize(g.verts.size());
    finish_at.resize(g.verts.size());
  }

  Key key_of(Measure m, i64 f) const {
    switch (obj) {
      case Objective::MLS: return {m.len, m.links, 0};
      case Objective::SML:
      case Objective::ML: return {m.links, m.len, 0};
      default: return {f, m.len, m.links};
    }
  }

  bool measure_le_obj(Measure a, Measure b) const {
    // a <= b in the objective's lexicographic order (SML/ML: links first).
    if (obj == Objective::SML || obj == Objective::ML)
      return std::tie(a.links, a.len) <= std::tie(b.links, b.len);
    return std::tie(a.len, a.links) <= std::tie(b.len, b.links);
  }

  void kill(int id) {
    Label& L = labels[id];
    if (L.dead) return;
    L.dead = true;
    Store& st = store[L.at];
    st.alive.erase(std::remove(st.alive.begin(), st.alive.end(), id),
                   st.alive.end());
  }

  // Pruning rules; returns false when the candidate label is discarded.
  bool apply_rules(Label& L, Store& st) {
    switch (obj) {
      case Objective::MLS: {
        if (opt.mode == RuleMode::Legacy) {
          // Legacy dominance: keep only the lexicographically smallest
          // measure at the vertex; among equals keep the shorter last
          // segment per staircase type.
          for (int id : st.alive) {
            const Label& S = labels[id];
            if (std::tie(S.m.len, S.m.links) < std::tie(L.m.len, L.m.links))
              return false;
          }
          std::vector<int> doomed;
          for (int id : st.alive) {
            const Label& S = labels[id];
            if (std::tie(L.m.len, L.m.links) < std::tie(S.m.len, S.m.links))
              doomed.push_back(id);
          }
          for (int id : doomed) kill(id);
          for (int id : st.alive) {
            const Label& S = labels[id];
            if (S.m == L.m && S.tau == L.tau && S.rho == L.rho) {
              if (S.last.len() <= L.last.len()) return false;
              kill(id);
              break;
            }
          }
          return true;
        }
        // Corrected: length dominance with a two-link slack, then the
        // shorter-last-segment rule within one staircase type.
        for (int id : st.alive) {
          const Label& S = labels[id];
          if (S.m.len < L.m.len) return false;
          if (S.m.len == L.m.len && S.m.links <= L.m.links - 2) return false;
        }
        std::vector<int> doomed;
        for (int id : st.alive) {
          const Label& S = labels[id];
          if (L.m.len < S.m.len ||
              (L.m.len == S.m.len && L.m.links <= S.m.links - 2))
            doomed.push_back(id);
        }
        for (int id : doomed) kill(id);
        for (int id : st.alive) {
          const Label& S = labels[id];
          if (S.m == L.m && S.tau == L.tau && S.rho == L.rho) {
            if (S.last.len() <= L.last.len()) return false;
            kill(id);
            break;
          }
        }
        return true;
      }
      case Objective::ML: {
        for (int id : st.alive) {
          const Label& S = labels[id];
          if (S.m.links <= L.m.links - 2) return false;
          if (S.m.links == L.m.links && S.tau == L.tau &&
              S.last.len() <= L.last.len())
            return false;
        }
        std::vector<int> doomed;
        for (int id : st.alive) {
          const Label& S = labels[id];
          if (L.m.links <= S.m.links - 2 ||
              (L.m.links == S.m.links && L.tau == S.tau &&
               L.last.len() < S.last.len()))
            doomed.push_back(id);
        }
        for (int id : doomed) kill(id);
        return true;
      }
      case Objective::SML: {
        if (opt.sml_query_rule) {
          // Query-variant rule: per (travel, drag) direction, discard a
          // label when an existing one is no longer and at least two links
          // better, or equally linked with a last segment no longer.
          auto dominates = [&](const Label& a, const Label& b) {
            if (a.m.len > b.m.len) return false;
            if (a.m.links <= b.m.links - 2) return true;
            return a.m.links == b.m.links && a.last.len() <= b.last.len();
          };
          for (int id : st.alive) {
            const Label& S = labels[id];
            if (S.tau == L.tau && S.rho == L.rho && dominates(S, L))
              return false;
          }
          std::vector<int> doomed;
          for (int id : st.alive) {
            const Label& S = labels[id];
            if (S.tau == L.tau && S.rho == L.rho && dominates(L, S))
              doomed.push_back(id);
          }
          for (int id : doomed) kill(id);
          return true;
        }
        std::array<i64, 3> key{L.last.a.x, L.last.a.y, i64(L.rho)};
        auto it = st.keyed.find(key);
        if (it != st.keyed.end()) {
          const Label& S = labels[it->second];
          if (measure_le_obj(S.m, L.m)) return false;
          kill(it->second);
          st.keyed.erase(it);
        }
        st.keyed[key] = -1;  // filled by caller after allocation
        return true;
      }
      default: {  // Objective::Cost
        std::array<i64, 3> key{L.last.a.x, L.last.a.y, i64(L.rho)};
        auto it = st.keyed.find(key);
        if (it != st.keyed.end()) {
          const Label& S = labels[it->second];
          if (S.f <= L.f) return false;
          kill(it->second);
          st.keyed.erase(it);
        }
        st.keyed[key] = -1;
        return true;
      }
    }
  }

  void emit(Label L) {
#ifdef RP_EMIT_CHECK
    if (!dom.seg_free(L.last.a, L.last.b))
      std::fprintf(stderr, "EMIT bad last op=%d (%lld,%lld)-(%lld,%lld)\n",
                   int(L.op), L.last.a.x, L.last.a.y, L.last.b.x, L.last.b.y);
    if (L.has_before && !dom.seg_free(L.before.a, L.before.b))
      std::fprintf(stderr, "EMIT bad before op=%d (%lld,%lld)-(%lld,%lld)\n",
                   int(L.op), L.before.a.x, L.before.a.y, L.before.b.x,
                   L.before.b.y);
#endif
    if (obj == Objective::Cost) {
      L.f = (*opt.cost)(L.m.len, L.m.links);
      if (L.f == CostFunction::kInf) return;
    }
    Store& st = store[L.at];
    if (L.op != Op::Start && !apply_rules(L, st)) return;
    int id = int(labels.size());
    labels.push_back(L);
    st.alive.push_back(id);
    if ((obj == Objective::SML && !opt.sml_query_rule) ||
        obj == Objective::Cost) {
      if (L.op != Op::Start)
        st.keyed[{L.last.a.x, L.last.a.y, i64(L.rho)}] = id;
    }
    stats.labels_created++;
    stats.max_labels_per_vertex =
        std::max(stats.max_labels_per_vertex, i64(st.alive.size()));
    pq.push({key_of(L.m, L.f)[0], key_of(L.m, L.f)[1], key_of(L.m, L.f)[2],
             L.at, id});
  }

  // ---- dragging advances over ordinary edges -----------------------------

  bool drag_blocked(const Seg& last, Point from, Point to) const {
    // Vertices strictly inside the swept band stop the drag.  The moving
    // endpoint slides along the traversed graph edge, which is known to be
    // free, so vertices on that edge's own line do not block (the reduced
    // graph has edges running over obstacle corners).  Coordinates are
    // integral, so shrinking the closed range by one excludes that line.
    const PointRangeIndex& vi = dom.vertex_index();
    if (last.horizontal()) {
      i64 xlo = last.lo_x(), xhi = last.hi_x();
      if (from.x == xlo) ++xlo; else --xhi;
      return vi.any_in(xlo, xhi, std::min(from.y, to.y),
                       std::max(from.y, to.y));
    }
    i64 ylo = last.lo_y(), yhi = last.hi_y();
    if (from.y == ylo) ++ylo; else --yhi;
    return vi.any_in_t(ylo, yhi, std::min(from.x, to.x),
                       std::max(from.x, to.x));
  }

  void drag_advance(int pid, const Label& L, Point P, int un, Point U) {
    Dir ed = step_dir(P, U);
    i64 w = manhattan(P, U);
    if (L.op == Op::Start) {
      for (Dir r : perps(ed)) {
        Label N;
        N.at = un;
        N.m = {L.m.len + w, L.m.links + 1};
        N.last = {P, U};
        N.tau = ed;
        N.rho = r;
        N.piece_start = true;
        N.fixed = dom.flush(N.last, r);
        N.parent = pid;
        N.op = Op::NewSeg;
        emit(N);
      }
      return;
    }
    if (ed == L.tau) {  // case 1: collinear extension
      Label N = L;
      N.at = un;
      N.m.len += w;
      N.last = {L.last.a, U};
      N.fixed = dom.flush(N.last, L.rho);
      N.parent = pid;
      N.op = Op::Extend;
      N.dead = false;
      emit(N);
      return;
    }
    if (ed == opposite(L.tau)) return;  // case 2: backward, ignore
    // Perpendicular edge.  Pure link minimisation stores labels per travel
    // direction only, so both perpendicular sides are live drag directions;
    // the other objectives commit each label to its stored drag direction.
    bool forward = (obj == Objective::ML) || ed == L.rho;
    bool flush_ed = (obj == Objective::ML) ? dom.flush(L.last, ed)
                  : (ed == L.rho ? L.fixed : dom.flush(L.last, ed));
    if (!forward) {
      // case 4: against the drag direction; a U-turn is admitted only when
      // the last segment is flush with an obstacle on that side.
      if (flush_ed) {
        Label N;
        N.at = un;
        N.m = {L.m.len + w, L.m.links + 1};
        N.last = {P, U};
        N.tau = ed;
        N.rho = L.tau;
        N.fixed = dom.flush(N.last, N.rho);
        N.has_before = true;
        N.before = L.last;
        N.parent = pid;
        N.op = Op::UTurn;
        emit(N);
      }
      return;
    }
    // case 3: along a drag direction.
    auto emit_newseg = [&] {
      Label N;
      N.at = un;
      N.m = {L.m.len + w, L.m.links + 1};
      N.last = {P, U};
      N.tau = ed;
      N.rho = L.tau;
      N.fixed = dom.flush(N.last, N.rho);
      N.has_before = true;
      N.before = L.last;
      N.parent = pid;
      N.op = Op::NewSeg;
      emit(N);
    };
    if (flush_ed) {
      emit_newseg();
      return;
    }
    // Floating.  A staircase-opening segment may also turn here outright:
    // the corner trades the drag for one extra link.  Pure link search keeps
    // fewer labels per vertex, so the corner option must stay available from
    // every survivor.
    if (L.piece_start || obj == Objective::ML) emit_newseg();
    // A drag must extend the preceding segment, never pull it backwards.
    if (L.has_before && !L.before_zero &&
        step_dir(L.before.a, L.before.b) != ed)
      return;
    if (drag_blocked(L.last, P, U)) return;
    Point dv = dir_vec(ed);
    Point na{L.last.a.x + dv.x * w, L.last.a.y + dv.y * w};
    // The vertex test skips the traversed edge's line; obstacles reaching
    // across the band show up on the final position or the trailing
    // connector instead.
    if (!dom.seg_free(L.last.a, na) || !dom.seg_free(na, U)) return;
    if (!L.has_before) {
      // Dragging the opening segment of the path pulls a fresh segment out
      // of its rear endpoint, at the price of one link.
      Label N = L;
      N.at = un;
      N.m = {L.m.len + w, L.m.links + 1};
      N.last = {na, U};
      N.piece_start = false;
      N.fixed = dom.flush(N.last, L.rho);
      N.has_before = true;
      N.before = {L.last.a, na};
      N.before_zero = false;
      N.parent = pid;
      N.op = Op::DragAnchor;
      N.dead = false;
      emit(N);
      return;
    }
    Label N = L;
    N.at = un;
    N.m.len += w;
    N.last = {na, U};
    N.fixed = dom.flush(N.last, L.rho);
    N.before = {L.before.a, na};
    N.before_zero = L.before_zero && L.before.a == na;
    N.parent = pid;
    N.op = Op::Drag;
    N.dead = false;
    emit(N);
  }

  // ---- through-corridor advances ------------------------------------------

  struct ConcatOut {
    Measure m;
    Seg last{};
    bool has_before = false;
    Seg before{};
    bool before_zero = false;
  };

  // Measure and tail of (label path) + (ext), ext tidied and starting at the
  // label's endpoint.  Merges a collinear same-direction junction.
  ConcatOut concat(const Label& L, const RectPath& ext) const {
    ConcatOut co;
    bool first_zero = ext.pts[0] == ext.pts[1];
    i64 adj = 0;
    bool merged = false;
    if (!first_zero && L.op != Op::Start &&
        step_dir(ext.pts[0], ext.pts[1]) == L.tau) {
      adj = -1;
      merged = true;
    }
    co.m = {L.m.len + ext.length(), L.m.links + ext.links() + adj};
    TailInfo ti = tail_of(ext);
    co.last = ti.last;
    if (ti.has_before) {
      co.has_before = true;
      co.before = ti.before;
      co.before_zero = ti.before_zero;
    } else if (merged) {
      co.last = {L.last.a, ext.pts.back()};
      co.has_before = L.has_before;
      co.before = L.before;
      co.before_zero = L.before_zero;
    } else if (L.op != Op::Start) {
      co.has_before = true;
      co.before = L.last;
    }
    return co;
  }

  void corridor_advance(int pid, const Label& L, Point P, int un, Point U,
                        int c) {
    const Corridor& cor = cs->corridors[c];
    int kdst = (U == cor.backbone[0]) ? 0 : 1;
    const Door& dsrc = cor.doors[1 - kdst];
    if (L.op != Op::Start && L.last.horizontal()) {
      // A horizontal last segment reaching the door from inside the
      // corridor came through it; going back is never useful.
      int side = dsrc.corridor_on_right ? 1 : -1;
      if ((L.last.a.x - dsrc.seg.a.x) * side > 0) return;
    }
    const HistogramPartition& H = cs->hist(c, kdst);
    RectPath pi = tidy(H.admissible_path(P, 1));
    assert(pi.pts.back() == U);
    if (pi.pts.back() != U) return;
    ConcatOut co = concat(L, pi);
    int aidx = int(arena.size());
    arena.push_back(pi);
    Dir ntau = step_dir(co.last.a, co.last.b);
    for (Dir r : perps(ntau)) {
      Label N;
      N.at = un;
      N.m = co.m;
      N.last = co.last;
      N.tau = ntau;
      N.rho = r;
      N.piece_start = true;
      N.fixed = dom.flush(co.last, r);
      N.has_before = co.has_before;
      N.before = co.before;
      N.before_zero = co.before_zero;
      N.parent = pid;
      N.op = Op::Corridor;
      N.arena = aidx;
      emit(N);
    }
  }

  // ---- start labels --------------------------------------------------------

  void seed_junction(Point s) {
    int sv = g.vertex_at(s);
    assert(sv >= 0);
    Label L;
    L.at = sv;
    L.m = {0, 0};
    L.last = {s, s};
    L.op = Op::Start;
    int id = int(labels.size());
    labels.push_back(L);
    store[sv].alive.push_back(id);
    stats.labels_created++;
    pq.push({0, 0, 0, sv, id});
  }

  void seed_corridor_side(Point s, int c, int k) {
    const HistogramPartition& H = cs->hist(c, k);
    DoorIntervals dq = H.door_query(s);
    Point sd = dq.q;
    int v = g.vertex_at(sd);
    assert(v >= 0);
    if (dq.visible) {
      Seg seg{s, sd};
      Dir tau = step_dir(s, sd);
      RectPath p1;
      p1.pts = {s, sd};
      int a1 = int(arena.size());
      arena.push_back(p1);
      for (Dir r : perps(tau)) {
        Label L;
        L.at = v;
        L.m = {seg.len(), 1};
        L.last = seg;
        L.tau = tau;
        L.rho = r;
        L.piece_start = true;
        L.fixed = dom.flush(seg, r);
        L.op = Op::StartConn;
        L.arena = a1;
        emit(L);
      }
      RectPath p2;
      p2.pts = {s};
      p2.append(s, true);
      p2.append(sd);
      int a2 = int(arena.size());
      arena.push_back(p2);
      for (Dir r : perps(tau)) {
        Label L;
        L.at = v;
        L.m = {seg.len(), 2};
        L.last = seg;
        L.tau = tau;
        L.rho = r;
        L.piece_start = true;
        L.fixed = dom.flush(seg, r);
        L.has_before = true;
        L.before = {s, s};
        L.before_zero = true;
        L.op = Op::StartConn;
        L.arena = a2;
        emit(L);
      }
      return;
    }
    for (int which : {1, 2}) {
      RectPath path = tidy(H.admissible_path(s, which));
      assert(path.pts.back() == sd);
      TailInfo ti = tail_of(path);
      int aidx = int(arena.size());
      arena.push_back(path);
      Dir tau = step_dir(ti.last.a, ti.last.b);
      for (Dir r : perps(tau)) {
        Label L;
        L.at = v;
        L.m = path.measure();
        L.last = ti.last;
        L.tau = tau;
        L.rho = r;
        L.piece_start = true;
        L.fixed = dom.flush(ti.last, r);
        L.has_before = ti.has_before;
        L.before = ti.before;
        L.before_zero = ti.before_zero;
        L.op = Op::StartConn;
        L.arena = aidx;
        emit(L);
      }
    }
  }

  // ---- target-side concatenation -------------------------------------------

  void offer(Measure m, int label, int recipe, int side, Point p) {
    i64 f = 0;
    if (obj == Objective::Cost) {
      f = (*opt.cost)(m.len, m.links);
      if (f == CostFunction::kInf) return;
    }
    Key k = key_of(m, f);
    if (have_cand && k >= cand_key) return;
    have_cand = true;
    cand_key = k;
    cand_m = m;
    cand_f = f;
    cand_label = label;
    cand_recipe = recipe;
    cand_side = side;
    cand_p = p;
  }

  void offer_direct(const RectPath& path) {
    Measure m = path.measure();
    i64 f = 0;
    if (obj == Objective::Cost) {
      f = (*opt.cost)(m.len, m.links);
      if (f == CostFunction::kInf) return;
    }
    Key k = key_of(m, f);
    if (have_cand && k >= cand_key) return;
    have_cand = true;
    cand_key = k;
    cand_m = m;
    cand_f = f;
    cand_label = -1;
    cand_recipe = -2;
    cand_side = -1;
    cand_direct = path;
  }

  void try_finish(int id, const Label& L) {
#ifdef RP_EMIT_CHECK
    std::fprintf(stderr,
                 "FIN at=(%lld,%lld) m=(%lld,%lld) op=%d last=(%lld,%lld)-(%lld,%lld)\n",
                 g.verts[L.at].p.x, g.verts[L.at].p.y, L.m.len, L.m.links,
                 int(L.op), L.last.a.x, L.last.a.y, L.last.b.x, L.last.b.y);
#endif
    for (int si : finish_at[L.at]) {
      const FinishSide& fs = finish[si];
      Point td = g.verts[fs.vertex].p;
      {  // append pi1 through the connection point
        const RectPath& p1 = fs.p1;
        bool first_zero = p1.pts[p1.pts.size() - 1] ==
                          p1.pts[p1.pts.size() - 2];
        (void)first_zero;
        Dir f0 = step_dir(p1.pts[p1.pts.size() - 1],
                          p1.pts[p1.pts.size() - 2]);  // reversed first step
        i64 adj = (L.op != Op::Start && f0 == L.tau) ? -1 : 0;
        offer({L.m.len + p1.length(), L.m.links + p1.links() + adj}, id, 0,
              si, {});
      }
      if (L.op == Op::Start || !L.last.vertical()) continue;
      Point p = L.last.a;
      auto splice = [&](const RectPath& px, int recipe) {
        // drag the final link of px along the door from td to p, drop the
        // label's last segment, and join at p
        i64 dlen = px.length() + std::llabs(p.y - td.y);
        i64 dlinks = px.links();
        size_t n = px.pts.size();
        Point prev = px.pts[n - 2];
        Point shifted{prev.x, prev.y + (p.y - td.y)};
        i64 adj = 0;
        if (L.has_before && !L.before_zero && L.before.a != L.before.b &&
            shifted != p) {
          // merge when the segment before the dropped one continues
          // straight into the spliced tail
          Dir back_dir = step_dir(p, shifted);
          if (step_dir(L.before.a, L.before.b) == back_dir) adj = -1;
        }
        offer({L.m.len - L.last.len() + dlen,
               L.m.links - 1 + dlinks + adj},
              id, recipe, si, p);
      };
      if (!fs.dq.visible && fs.dq.I1.contains(p) && p != td)
        splice(fs.p1, 1);
      if (fs.dq.I2.contains(p) && p != td) {
        if (fs.dq.visible) {
          RectPath p2;
          p2.pts = {fs.t, Point{fs.t.x, p.y}, Point{td.x, p.y}};
          // direct construction: the flagged zero link becomes real
          i64 dlen = p2.length();
          i64 adj = 0;
          if (L.has_before && !L.before_zero && L.before.a != L.before.b) {
            Dir back_dir = step_dir(p, Point{fs.t.x, p.y});
            if (step_dir(L.before.a, L.before.b) == back_dir) adj = -1;
          }
          offer({L.m.len - L.last.len() + dlen, L.m.links - 1 + 2 + adj},
                id, 2, si, p);
        } else {
          splice(fs.p2, 2);
        }
      }
    }
  }

  // ---- main loop -----------------------------------------------------------

  void run() {
    while (!pq.empty()) {
      auto [k0, k1, k2, at, id] = pq.top();
      pq.pop();
      if (labels[id].dead) continue;
      Key k{k0, k1, k2};
      if (have_cand && k > cand_key) break;
      Label L = labels[id];
#ifdef RP_EMIT_CHECK
      std::fprintf(stderr,
                   "POP at=(%lld,%lld) m=(%lld,%lld) op=%d last=(%lld,%lld)-(%lld,%lld) rho=%d fix=%d ps=%d\n",
                   g.verts[L.at].p.x, g.verts[L.at].p.y, L.m.len, L.m.links,
                   int(L.op), L.last.a.x, L.last.a.y, L.last.b.x, L.last.b.y,
                   int(L.rho), int(L.fixed), int(L.piece_start));
#endif
      stats.labels_popped++;
      if (L.at == target_vertex) offer(L.m, id, -1, -1, {});
      if (!finish_at[L.at].empty()) try_finish(id, L);
      Point P = g.verts[L.at].p;
      for (int ei : g.adj[L.at]) {
        const PGEdge& e = g.edges[ei];
        int un = e.a == L.at ? e.b : e.a;
        Point U = g.verts[un].p;
        if (e.kind == 0)
          drag_advance(id, L, P, un, U);
        else if (e.kind == 1 && cs)
          corridor_advance(id, L, P, un, U, e.corridor);
      }
    }
  }

  RectPath replay(int id) const {
    std::vector<int> chain;
    for (int x = id; x >= 0; x = labels[x].parent) chain.push_back(x);
    std::reverse(chain.begin(), chain.end());
    RectPath p;
    for (int x : chain) {
      const Label& L = labels[x];
      switch (L.op) {
        case Op::Start:
          p.pts = {L.last.a};
          break;
        case Op::StartConn:
          p = arena[L.arena];
          break;
        case Op::Extend:
          p.pts.back() = L.last.b;
          break;
        case Op::NewSeg:
        case Op::UTurn:
          p.append(L.last.b);
          break;
        case Op::Drag: {
          size_t n = p.pts.size();
          p.pts[n - 2] = L.last.a;
          p.pts[n - 1] = L.last.b;
          break;
        }
        case Op::DragAnchor:
          p.pts.back() = L.last.a;
          p.append(L.last.b);
          break;
        case Op::Corridor:
          p.extend(arena[L.arena]);
          break;
      }
    }
    return p;
  }

  SearchResult finalize() {
    if (!have_cand) throw std::runtime_error("NoPath");
    SearchResult res;
    res.measure = cand_m;
    res.cost = cand_f;
    res.stats = stats;
    if (cand_recipe == -2) {
      res.path = cand_direct;
      return res;
    }
    RectPath path = replay(cand_label);
    if (cand_recipe >= 0) {
      const FinishSide& fs = finish[cand_side];
      Point td = g.verts[fs.vertex].p;
      if (cand_recipe == 0) {
        path.extend(fs.p1.reversed());
      } else {
        RectPath dragged;
        if (cand_recipe == 2 && fs.dq.visible) {
          dragged.pts = {fs.t, Point{fs.t.x, cand_p.y}, cand_p};
        } else {
          dragged = cand_recipe == 1 ? fs.p1 : fs.p2;
          size_t n = dragged.pts.size();
          i64 dy = cand_p.y - td.y;
          dragged.pts[n - 2].y += dy;
          dragged.pts[n - 1] = cand_p;
        }
        path.pts.pop_back();
        if (!path.zflag.empty()) path.zflag.pop_back();
        path.extend(dragged.reversed());
      }
    }
    res.path = path;
    return res;
  }

  void capture(LabelListSnapshot* snap) const {
    if (!snap) return;
    for (size_t v = 0; v < store.size(); ++v) {
      std::map<std::pair<int, int>, std::vector<int>> groups;
      for (int id : store[v].alive) {
        const Label& L = labels[id];
        if (L.op == Op::Start) continue;
        groups[{int(L.tau), int(L.rho)}].push_back(id);
      }
      for (auto& [k, ids] : groups) {
        LabelListSnapshot::Entry e;
        e.vertex = int(v);
        e.tau = Dir(k.first);
        e.rho = Dir(k.second);
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
          return labels[a].m.len > labels[b].m.len;
        });
        for (int id : ids) {
          e.measures.push_back(labels[id].m);
          e.last_lengths.push_back(labels[id].last.len());
        }
        snap->entries.push_back(std::move(e));
      }
    }
  }
};

void check_inside(const Domain& d, Point p, const char* err) {
  if (d.classify_raycast(p) == Containment::Outside)
    throw std::runtime_error(err);
}

SearchResult trivial_result(Point s) {
  SearchResult r;
  r.measure = {0, 0};
  r.path.pts = {s};
  return r;
}

struct EndSpec {
  bool junction = true;
  int corridor = -1;
  std::vector<int> doors;
};

EndSpec classify_endpoint(const CorridorStructure& cs,
                          const VerticalDecomposition& vd, Point p) {
  EndSpec e;
  int c = cs.locate_corridor(vd, p);
  if (c < 0) return e;
  const Corridor& cor = cs.corridors[c];
  if (cor.kind == CorridorKind::Degenerate) return e;
  if (cor.doors[0].seg.contains(p) || cor.doors[1].seg.contains(p)) return e;
  e.junction = false;
  e.corridor = c;
  e.doors.push_back(0);
  if (!(cor.doors[0].seg == cor.doors[1].seg)) e.doors.push_back(1);
  return e;
}

}  // namespace

SearchResult run_search_full(const Domain& d, Point s, Point t, Objective o,
                             const SearchOptions& opt) {
  check_inside(d, s, "SourceOutsideDomain");
  check_inside(d, t, "TargetOutsideDomain");
  if (s == t) return trivial_result(s);
  std::vector<Point> pts = d.vertices;
  pts.push_back(s);
  pts.push_back(t);
  RefRegion ref{&d, nullptr};
  PathGraph g = PathGraph::build(pts, ref, {});
  Engine eng(d, g, o, opt);
  eng.target_vertex = g.vertex_at(t);
  eng.seed_junction(s);
  eng.run();
  return eng.finalize();
}

static SearchResult reduced_impl(const Domain& d,
                                 const VerticalDecomposition& vd,
                                 const CorridorStructure& cs, Point s,
                                 Point t, Objective o,
                                 const SearchOptions& opt,
                                 LabelListSnapshot* snap) {
  check_inside(d, s, "SourceOutsideDomain");
  check_inside(d, t, "TargetOutsideDomain");
  if (s == t) return trivial_result(s);
  if (d.h() == 0) {
    Ring ring{d.rings[0]};
    SearchResult r;
    r.path = smallest_path(ring, s, t);
    r.measure = r.path.measure();
    if (o == Objective::Cost) {
      if (!opt.cost)
        throw std::invalid_argument("cost objective requires a cost function");
      r.cost = (*opt.cost)(r.measure.len, r.measure.links);
    }
    return r;
  }
  EndSpec es = classify_endpoint(cs, vd, s);
  EndSpec et = classify_endpoint(cs, vd, t);
  BackboneSet bs = backbone_set(cs);
  std::vector<Point> pts = bs.pts;
  if (es.junction) pts.push_back(s);
  if (et.junction) pts.push_back(t);
  std::vector<Point> s_conn, t_conn;
  for (int k : es.doors)
    s_conn.push_back(cs.connection_point(es.corridor, k, s));
  for (int k : et.doors)
    t_conn.push_back(cs.connection_point(et.corridor, k, t));
  for (Point p : s_conn) pts.push_back(p);
  for (Point p : t_conn) pts.push_back(p);
  ReducedDomain red = cs.reduced_domain();
  RefRegion ref{nullptr, &red};
  PathGraph g = PathGraph::build(pts, ref, bs.edges);
  Engine eng(d, g, o, opt);
  eng.cs = &cs;
  if (et.junction) {
    eng.target_vertex = g.vertex_at(t);
  } else {
    for (size_t i = 0; i < et.doors.size(); ++i) {
      FinishSide fs;
      fs.vertex = g.vertex_at(t_conn[i]);
      fs.H = &cs.hist(et.corridor, et.doors[i]);
      fs.dq = fs.H->door_query(t);
      fs.t = t;
      if (fs.dq.visible) {
        fs.p1.pts = {t, fs.dq.q};
        fs.p2.pts = {t};
        fs.p2.append(t, true);
        fs.p2.append(fs.dq.q);
      } else {
        fs.p1 = tidy(fs.H->admissible_path(t, 1));
        fs.p2 = tidy(fs.H->admissible_path(t, 2));
      }
      eng.finish_at[fs.vertex].push_back(int(eng.finish.size()));
      eng.finish.push_back(std::move(fs));
    }
  }
  if (!es.junction && es.corridor == et.corridor && !et.junction) {
    // An optimal path may stay inside the shared corridor: compare against
    // the in-corridor smallest path (optimal for every monotone objective).
    const Corridor& cor = cs.corridors[es.corridor];
    eng.offer_direct(smallest_path(cor.boundary, s, t));
  }
  if (es.junction)
    eng.seed_junction(s);
  else
    for (int k : es.doors) eng.seed_corridor_side(s, es.corridor, k);
  eng.run();
  eng.capture(snap);
  return eng.finalize();
}

SearchResult run_search_reduced(const Domain& d,
                                const VerticalDecomposition& vd,
                                const CorridorStructure& cs, Point s, Point t,
                                Objective o, const SearchOptions& opt) {
  return reduced_impl(d, vd, cs, s, t, o, opt, nullptr);
}

SearchResult run_search_reduced_capture(const Domain& d,
                                        const VerticalDecomposition& vd,
                                        const CorridorStructure& cs, Point s,
                                        Point t, Objective o,
                                        const SearchOptions& opt,
                                        LabelListSnapshot* snapshot) {
  return reduced_impl(d, vd, cs, s, t, o, opt, snapshot);
}

SearchResult run_search(const Domain& d, Point s, Point t, Objective o,
                        const SearchOptions& opt) {
  if (d.h() == 0) {
    VerticalDecomposition vd;  // unused for hole-free domains
    CorridorStructure cs;
    return run_search_reduced(d, vd, cs, s, t, o, opt);
  }
  VerticalDecomposition vd = VerticalDecomposition::build(d);
  CorridorStructure cs = CorridorStructure::build(d, vd);
  return run_search_reduced(d, vd, cs, s, t, o, opt);
}

}  // namespace rectpath
