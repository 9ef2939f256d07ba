#pragma once
// Corridor structure over the vertical decomposition: junction rectangles,
// corridors with doors, open/closed classification, canals and bridges,
// backbone points, canonical door-to-door paths, connection points, and the
// reduced domain (union of junction rectangles and canals).

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "rectpath/domain.hpp"
#include "rectpath/histogram.hpp"

namespace rectpath {

enum class CorridorKind { Open, Closed, Degenerate };

struct Door {
  Seg seg;                 // vertical diagonal, a.y < b.y
  int diagonal = -1;       // index into VerticalDecomposition::diagonals
  int junction = -1;       // junction-rectangle index it is a side of
  bool corridor_on_right = false;  // corridor lies locally right of the door
};

struct Corridor {
  std::vector<int> cells;  // VD cells (empty for degenerate corridors)
  Ring boundary;           // simple polygon (empty for degenerate corridors)
  Door doors[2];           // equal for degenerate and dead-end corridors
  CorridorKind kind = CorridorKind::Open;
  // Open corridors (canal possibly of zero width/height):
  std::optional<Rect> canal;
  Seg upper_bridge, lower_bridge;
  // Backbone points: open -> 4 (canal corners, 2 per door);
  // closed -> 2 (window-extension points q1 on doors[0], q2 on doors[1]).
  std::vector<Point> backbone;
};

// Union of O(h) rectangles containing every ordinary edge of the reduced
// path-preserving graph.
struct ReducedDomain {
  std::vector<Rect> rects;
  bool contains(Point p) const;
  bool contains(const Seg& s) const;  // axis-parallel segment inside union
};

class CorridorStructure {
 public:
  std::vector<Rect> junction_rects;
  std::vector<int> junction_cells;  // VD cell index per junction rectangle
  std::vector<Corridor> corridors;
  // corridor_graph: per corridor, the junction endpoints (edge multigraph;
  // may be a self-loop, or {-1,-1} when the domain has no junctions)
  std::vector<std::pair<int, int>> edges;
  std::vector<int> vertex_to_corridor;  // per domain vertex
  // true when the single "junction" was designated on a junction-free cycle
  // (h == 1) to keep the structure uniform
  bool designated_junction = false;

  static CorridorStructure build(const Domain& d,
                                 const VerticalDecomposition& vd);

  // Histogram partition of corridor `c` from door 0/1 (non-degenerate only).
  const HistogramPartition& hist(int c, int door) const;

  // Connection point p_d on the given door for a point p inside the
  // corridor: the horizontal projection when visible, otherwise the
  // extension point of the first separating window.
  Point connection_point(int c, int door, Point p) const;

  // Canonical shortest path between door points p1 (on doors[0]) and
  // p2 (on doors[1]); for degenerate corridors the vertical segment.
  RectPath canonical_path(int c, Point p1, Point p2) const;

  // Corridor containing p; door diagonals resolve to the corridor they
  // bound; junction-rectangle interiors return -1.
  int locate_corridor(const VerticalDecomposition& vd, Point p) const;

  ReducedDomain reduced_domain() const;

 private:
  // per corridor: histogram partitions from each door (built on demand)
  mutable std::vector<std::array<std::unique_ptr<HistogramPartition>, 2>>
      hists_;
  std::vector<int> cell_corridor_;   // VD cell -> corridor (-1 = junction)
  std::vector<int> diag_corridor_;   // VD diagonal -> corridor
  friend struct CorridorBuilder;
};

}  // namespace rectpath
