#pragma once
// Basic axis-parallel geometry: points, directions, segments, path measures.
// All coordinates are integers; lengths fit in 64 bits by construction
// (inputs are confined to 32-bit coordinates).

#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

namespace rectpath {

using i64 = long long;

struct Point {
  i64 x = 0, y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

inline i64 manhattan(Point a, Point b) {
  return std::llabs(a.x - b.x) + std::llabs(a.y - b.y);
}

// The four axis directions.
enum class Dir : uint8_t { East = 0, North = 1, West = 2, South = 3 };

inline Point dir_vec(Dir d) {
  switch (d) {
    case Dir::East: return {1, 0};
    case Dir::North: return {0, 1};
    case Dir::West: return {-1, 0};
    default: return {0, -1};
  }
}
inline Dir opposite(Dir d) { return Dir((int(d) + 2) % 4); }
inline bool is_horizontal(Dir d) { return d == Dir::East || d == Dir::West; }
inline Point advance(Point p, Dir d, i64 k) {
  Point v = dir_vec(d);
  return {p.x + v.x * k, p.y + v.y * k};
}
// Direction of the nonzero axis step from a to b; a==b not allowed.
Dir step_dir(Point a, Point b);
inline const char* dir_name(Dir d) {
  static const char* n[4] = {"E", "N", "W", "S"};
  return n[int(d)];
}

// Closed axis-parallel segment. Degenerate (a==b) allowed where noted.
struct Seg {
  Point a, b;
  bool horizontal() const { return a.y == b.y; }
  bool vertical() const { return a.x == b.x; }
  i64 len() const { return manhattan(a, b); }
  i64 lo_x() const { return std::min(a.x, b.x); }
  i64 hi_x() const { return std::max(a.x, b.x); }
  i64 lo_y() const { return std::min(a.y, b.y); }
  i64 hi_y() const { return std::max(a.y, b.y); }
  bool contains(Point p) const {
    return p.x >= lo_x() && p.x <= hi_x() && p.y >= lo_y() && p.y <= hi_y() &&
           (horizontal() ? p.y == a.y : p.x == a.x) &&
           (vertical() ? p.x == a.x : p.y == a.y);
  }
  friend bool operator==(const Seg&, const Seg&) = default;
};

// Measure vector of a path: total length and number of links (segments).
struct Measure {
  i64 len = 0;
  i64 links = 0;
  friend bool operator==(const Measure&, const Measure&) = default;
};

// A rectilinear path as a vertex sequence.  Repeated vertices encode
// deliberate zero-length links (used by the search conventions); the
// canonical form removes them and merges collinear neighbours.
struct RectPath {
  std::vector<Point> pts;
  // Optional per-segment flags (size pts.size()-1 when present): marks
  // zero-length segments that deliberately count as links.
  std::vector<uint8_t> zflag;

  bool empty() const { return pts.size() < 2; }
  i64 length() const;
  // Link count: non-zero-length segments of the canonical form plus
  // flagged zero-length segments.
  i64 links() const;
  i64 flagged_zeros() const;
  Measure measure() const { return {length(), links()}; }
  // True when every step is axis-parallel (zero steps allowed).
  bool is_rectilinear() const;
  RectPath canonical() const;
  RectPath reversed() const;
  void append(Point p, bool zero_flagged = false) {
    pts.push_back(p);
    if (!zflag.empty() || zero_flagged) {
      zflag.resize(pts.size() >= 2 ? pts.size() - 2 : 0, 0);
      if (pts.size() >= 2) zflag.push_back(zero_flagged ? 1 : 0);
    }
  }
  // Concatenate another path starting at our endpoint.
  void extend(const RectPath& tail);
  std::string str() const;
};

// Closed axis-parallel rectangle.
struct Rect {
  i64 x1 = 0, y1 = 0, x2 = 0, y2 = 0;  // x1<=x2, y1<=y2
  bool contains(Point p) const {
    return p.x >= x1 && p.x <= x2 && p.y >= y1 && p.y <= y2;
  }
  bool contains(const Seg& s) const { return contains(s.a) && contains(s.b); }
  i64 width() const { return x2 - x1; }
  i64 height() const { return y2 - y1; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Existence index over a static point set: "is there a point with
// x in [xlo,xhi] and y in (ylo,yhi) strictly?" in O(log^2 n).
// Built once; used for segment-drag hit tests.
class PointRangeIndex {
 public:
  PointRangeIndex() = default;
  explicit PointRangeIndex(std::vector<Point> pts);
  // Any point with x in [xlo,xhi] (closed) and y in (ylo,yhi) (open)?
  bool any_in(i64 xlo, i64 xhi, i64 ylo, i64 yhi) const;
  // Same with roles of x/y swapped (y closed range, x open range).
  bool any_in_t(i64 ylo, i64 yhi, i64 xlo, i64 xhi) const;
  size_t size() const { return n_; }

 private:
  size_t n_ = 0;
  std::vector<Point> by_x_;            // sorted by (x,y)
  std::vector<std::vector<i64>> tree_; // merge-sort tree of y values
  std::vector<Point> by_y_;            // sorted by (y,x)
  std::vector<std::vector<i64>> tree_t_;
  static bool query(const std::vector<Point>& base,
                    const std::vector<std::vector<i64>>& tree, i64 klo,
                    i64 khi, i64 vlo, i64 vhi, bool swapped);
};

struct PointHash {
  size_t operator()(const Point& p) const {
    uint64_t h = uint64_t(p.x) * 0x9e3779b97f4a7c15ull ^ uint64_t(p.y);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return size_t(h);
  }
};

}  // namespace rectpath
