#pragma once
// Rectilinear domains: validation, elementary predicates, and the vertical
// visibility decomposition (cells + diagonals).

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rectpath/geom.hpp"

namespace rectpath {

enum class Containment { Interior, Boundary, Outside };

struct DomainError {
  // One of: NonRectilinearEdge, SelfIntersection, CollinearEdges,
  // HoleOutsideOuter.
  std::string kind;
  std::string detail;
};

// Horizontal boundary edge; by general position at most one per y.
struct HEdge {
  i64 y = 0, x1 = 0, x2 = 0;  // x1 < x2
  bool free_above = false;    // free space lies above the edge
};
// Vertical boundary edge; at most one per x.
struct VEdge {
  i64 x = 0, y1 = 0, y2 = 0;  // y1 < y2
  bool free_left = false;     // free space lies left of the edge
};

// Stabbing index over intervals keyed by a coordinate: answers
// "does any interval with key strictly inside (klo,khi) contain v strictly?"
class EdgeStabIndex {
 public:
  EdgeStabIndex() = default;
  // items: (key, lo, hi)
  explicit EdgeStabIndex(std::vector<std::array<i64, 3>> items);
  bool any_strict(i64 klo, i64 khi, i64 v) const;

 private:
  size_t n_ = 0;
  std::vector<std::array<i64, 3>> items_;  // sorted by key
  // merge-sort tree: per node, intervals sorted by lo with prefix max of hi
  std::vector<std::vector<std::pair<i64, i64>>> tree_;  // (lo, prefix-max hi)
};

class Domain {
 public:
  std::vector<std::vector<Point>> rings;  // rings[0] = outer (CCW), holes CW
  std::vector<Point> vertices;            // all ring vertices
  Rect bbox;

  int n() const { return int(vertices.size()); }
  int h() const { return int(rings.size()) - 1; }

  const std::map<i64, HEdge>& hedges() const { return hedges_; }
  const std::map<i64, VEdge>& vedges() const { return vedges_; }
  const PointRangeIndex& vertex_index() const { return vindex_; }

  static std::variant<Domain, DomainError> validate(
      std::vector<std::vector<Point>> raw_rings);

  // O(n) ray-casting classification (reference-grade; exact).
  Containment classify_raycast(Point p) const;
  bool on_boundary(Point p) const;  // O(log n)
  // Point in free space, doubled coordinates (admits segment midpoints).
  bool point_free2(i64 sx, i64 sy) const;
  // Closed segment lies in closed free space.
  bool seg_free(Seg s) const;
  bool seg_free(Point a, Point b) const { return seg_free(Seg{a, b}); }
  // Obstacle (or the outside) touches `seg` with positive overlap on `side`.
  // `side` must be perpendicular to the segment; degenerate segments are
  // never flush.
  bool flush(const Seg& seg, Dir side) const;
  // Twice the free-space area.
  i64 free_area_x2() const;

  std::optional<RectPath> l_shaped(Point s, Point t) const;

 private:
  std::map<i64, HEdge> hedges_;
  std::map<i64, VEdge> vedges_;
  PointRangeIndex vindex_;
  EdgeStabIndex vstab_;  // vertical edges keyed by x, interval (y1,y2)
  EdgeStabIndex hstab_;  // horizontal edges keyed by y, interval (x1,x2)
  void build_indexes();
};

struct VDCell {
  Rect rect;
};
struct VDDiagonal {
  i64 x = 0, y1 = 0, y2 = 0;  // y1 < y2 (strict; diagonals have length > 0)
  int left_cell = -1, right_cell = -1;
};

class VerticalDecomposition {
 public:
  std::vector<VDCell> cells;
  std::vector<VDDiagonal> diagonals;
  // adjacency via diagonals: per cell, (neighbour cell, diagonal index)
  std::vector<std::vector<std::pair<int, int>>> adj;

  static VerticalDecomposition build(const Domain& d);

  // Index of a cell whose closed rectangle contains p (any if several);
  // -1 when p is outside free space.  O(log^2 n).
  int locate(Point p) const;
  Containment classify(const Domain& d, Point p) const;
  i64 cell_area_x2() const;

 private:
  std::vector<i64> xs_;  // sorted distinct cell wall x-coordinates
  std::vector<std::vector<int>> node_cells_;
  size_t leaves_ = 0;
  void build_locator();
};

}  // namespace rectpath
