#pragma once
// Histogram partition of a simple rectilinear polygon with respect to a base
// edge (a door treated as an edge).  Supports link-distance queries to the
// base, the reachable door intervals I1/I2 with their defining points
// lambda1/lambda2 and the extension (backbone) point q, and materialization
// of the two admissible paths pi1 (smallest) and pi2 (shortest, one extra
// link).  Regions of the partition are maximal histograms; each window of a
// region spawns a child region (the pocket behind the window).

#include <optional>
#include <string>
#include <vector>

#include "rectpath/geom.hpp"

namespace rectpath {

enum class Orient : uint8_t { H = 0, V = 1 };
inline Orient perp(Orient o) { return o == Orient::H ? Orient::V : Orient::H; }

// Simple rectilinear ring, counterclockwise (free interior on the left of
// traversal).  Consecutive collinear edges are permitted.
struct Ring {
  std::vector<Point> pts;
  size_t size() const { return pts.size(); }
  Point at(size_t i) const { return pts[i % pts.size()]; }
  i64 area_x2() const;
  // Interior / Boundary(=1) / Outside containment, O(size).
  int classify(Point p) const;  // 2 interior, 1 boundary, 0 outside
  bool contains(Point p) const { return classify(p) != 0; }
};

// Splits `ring` along the axis-parallel chord a-b (both endpoints on the
// ring boundary, chord interior inside).  Returns the two sub-rings, each
// containing the chord as an edge; first = the part walked from a to b in
// ring order.
std::pair<Ring, Ring> split_ring(const Ring& ring, Point a, Point b);

struct DoorIntervals {
  i64 link_dist = 0;       // L_d(p, d)
  int depth = 0;           // region-tree depth of p (0 = visible to base)
  bool visible = false;    // p perpendicular-visible to the base
  Seg I1, I2;              // reachable door intervals (I1 subset of I2)
  Point q;                 // extension/backbone point on d (== projection
                           // of p when visible)
  Point lambda1, lambda2;  // crossing points on the first window w1
                           // (== projection when visible)
  Orient first_seg = Orient::H;  // orientation of pi1's first segment
};

class HistogramPartition {
 public:
  // `base` must coincide with one edge of `polygon` (door edges included in
  // the ring).  Throws std::invalid_argument when it does not.
  static HistogramPartition build(Ring polygon, Seg base);

  // Throws std::runtime_error("PointOutsidePolygon").
  DoorIntervals door_query(Point p) const;
  // Admissible path from p ending at the q of door_query(p); which is 1 for
  // pi1 (smallest path, L_d links) or 2 for pi2 (shortest, L_d+1 links).
  RectPath admissible_path(Point p, int which) const;

  const Seg& base() const { return base_; }
  const Ring& polygon() const { return poly_; }
  size_t region_count() const { return regions_.size(); }
  size_t size() const { return poly_.size(); }
  // Windows of a region (world chords); region 0 is the base histogram.
  std::vector<Seg> windows(int region) const;
  int locate(Point p) const;  // region id, -1 if outside
  int region_depth(int region) const { return regions_[region].depth; }
  const Ring& region_ring(int region) const { return regions_[region].ring; }
  Seg region_base(int region) const { return regions_[region].base; }

 private:
  // Frame of a region: u runs along the base axis (u is a raw world
  // coordinate), t is the depth into the region, zero on the base line.
  struct Frame {
    bool u_is_y = false;  // base vertical: u = y, depth along x
    int t_sign = 1;
    i64 t0 = 0;
    i64 u(Point p) const { return u_is_y ? p.y : p.x; }
    i64 t(Point p) const { return t_sign * ((u_is_y ? p.x : p.y) - t0); }
    Point pt(i64 uu, i64 tt) const {
      i64 c = t0 + t_sign * tt;
      return u_is_y ? Point{c, uu} : Point{uu, c};
    }
  };
  struct Window {
    Seg chord;       // world segment on a u-line
    i64 uline = 0;   // its u coordinate
    int pocket_dir;  // +1/-1: u-direction from the line toward the pocket
    int child = -1;  // child region id
  };
  struct Region {
    int parent = -1;
    int parent_window = -1;  // index in parent's windows
    int depth = 0;
    Seg base;
    Frame frame;
    Ring ring;
    // rows: half-open u-intervals [ub[i], ub[i+1]) with reach F[i]
    std::vector<i64> ub;
    std::vector<i64> F;
    std::vector<std::vector<i64>> sparse;  // range-min over F
    std::vector<Window> wins;

    i64 range_min(size_t lo, size_t hi) const;  // min F over [lo, hi)
    i64 reach_at(i64 u) const;                  // closed-column reach
    bool contains_uv(i64 u, i64 t) const;
    // Largest extent from u0 in direction dir (+1/-1) such that every row
    // strictly between stays at reach >= t.
    i64 sweep(i64 u0, int dir, i64 t) const;
  };

  int build_region(Ring ring, Seg base, int parent, int pwin, int depth);
  int locate_from(int region, Point p) const;
  // Chain propagation; fills DoorIntervals and (optionally) turn points.
  DoorIntervals query_chain(Point p, int region, int which,
                            RectPath* out_path) const;

  Ring poly_;
  Seg base_;
  std::vector<Region> regions_;
};

// Smallest path (simultaneously minimum length and minimum links) between
// two points of a simple rectilinear polygon, by exhaustive search over the
// polygon's induced grid.  Intended for construction-time and test use.
// Throws std::runtime_error("PointOutsidePolygon").
RectPath smallest_path(const Ring& polygon, Point p, Point q);

}  // namespace rectpath
