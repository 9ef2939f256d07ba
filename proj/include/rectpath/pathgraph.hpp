#pragma once
// Path-preserving graphs: cut-line tree, Steiner points, ordinary edges,
// corridor edges, and query-point insertion via gateways.  Works over either
// the full domain (graph on all domain vertices) or the reduced domain
// (graph on backbone points).

#include <vector>

#include "rectpath/corridor.hpp"
#include "rectpath/domain.hpp"

namespace rectpath {

struct CutNode {
  i64 x = 0;               // cut-line x-coordinate (through the median point)
  std::vector<int> pts;    // input-point indices in this node's subset
  int left = -1, right = -1;
  int depth = 0;
};

struct CutLineTree {
  std::vector<CutNode> nodes;  // nodes[0] = root (empty if no points)
  int height = 0;
  static CutLineTree build(const std::vector<Point>& pts);
};

// Reference region: the full domain or the reduced domain.
struct RefRegion {
  const Domain* dom = nullptr;
  const ReducedDomain* red = nullptr;
  bool seg_free(const Seg& s) const {
    return dom ? dom->seg_free(s) : red->contains(s);
  }
};

struct PGVertex {
  Point p;
  int kind = 0;   // 0 = input point, 1 = Steiner point
  int owner = -1; // defining input point (Steiner), or input index
  int line = -1;  // cut-line tree node (Steiner / on-line points)
};

struct PGEdge {
  int a = 0, b = 0;
  i64 w = 0;
  int kind = 0;      // 0 ordinary, 1 corridor, 2 corridor-connection
  i64 links = 0;     // link count of the realized path (corridor edges)
  int corridor = -1; // owning corridor for kind == 1
};

struct CorridorEdgeSpec {
  Point a, b;
  i64 weight = 0;
  i64 links = 0;
  int corridor = -1;
  int kind = 1;  // 1 corridor, 2 corridor-connection
};

class PathGraph {
 public:
  std::vector<PGVertex> verts;
  std::vector<PGEdge> edges;
  std::vector<std::vector<int>> adj;  // vertex -> incident edge indices
  CutLineTree tree;
  std::vector<int> input_vertex;  // input point index -> vertex id
  // sorted (y, vertex) lists of vertices lying on each cut-line node
  std::vector<std::vector<std::pair<i64, int>>> on_line;

  static PathGraph build(const std::vector<Point>& pts, const RefRegion& ref,
                         const std::vector<CorridorEdgeSpec>& corridor_edges);

  int vertex_at(Point p) const;  // exact-match vertex id or -1

  // Plain L1 Dijkstra over edge weights (test/reference use).
  std::vector<i64> distances(int src) const;
};

// Detached overlay inserting a query point: per projection cut-line a
// projection vertex plus at most two gateway attachments.
struct GatewaySet {
  Point q;
  int coincident = -1;  // existing vertex equal to q, if any
  struct Attach {
    int line_node = -1;
    Point proj;
    int up = -1, down = -1;  // gateway vertex ids on the line (-1 = none)
  };
  std::vector<Attach> lines;
  size_t gateway_count() const {
    size_t k = 0;
    for (const Attach& a : lines) k += (a.up >= 0) + (a.down >= 0);
    return k;
  }
};

GatewaySet insert_query_point(const PathGraph& g, const RefRegion& ref,
                              Point q);

// Shortest L1 distance between two inserted query points over the augmented
// graph (gateway overlays applied on top of g); -1 if disconnected.
i64 augmented_distance(const PathGraph& g, const GatewaySet& s,
                       const GatewaySet& t);

// Test utility: does g contain a staircase path from vertex p to vertex q
// inside the (assumed free) rectangle spanned by them?
bool staircase_exists(const PathGraph& g, int p, int q);

// Backbone point set and corridor edges of a corridor structure, ready for
// PathGraph::build over the reduced domain.
struct BackboneSet {
  std::vector<Point> pts;
  std::vector<CorridorEdgeSpec> edges;
};
BackboneSet backbone_set(const CorridorStructure& cs);

}  // namespace rectpath
