#include "rectpath/geom.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rectpath {

Dir step_dir(Point a, Point b) {
  if (b.x > a.x) return Dir::East;
  if (b.x < a.x) return Dir::West;
  if (b.y > a.y) return Dir::North;
  if (b.y < a.y) return Dir::South;
  throw std::invalid_argument("step_dir: identical points");
}

i64 RectPath::length() const {
  i64 s = 0;
  for (size_t i = 1; i < pts.size(); ++i) s += manhattan(pts[i - 1], pts[i]);
  return s;
}

bool RectPath::is_rectilinear() const {
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i - 1].x != pts[i].x && pts[i - 1].y != pts[i].y) return false;
  return true;
}

RectPath RectPath::canonical() const {
  RectPath out;
  for (Point p : pts) {
    if (!out.pts.empty() && out.pts.back() == p) continue;
    while (out.pts.size() >= 2) {
      Point a = out.pts[out.pts.size() - 2], b = out.pts.back();
      if ((a.x == b.x && b.x == p.x) || (a.y == b.y && b.y == p.y)) {
        // Collinear: either extends or backtracks; a backtracking vertex is
        // kept only if p passes beyond it, otherwise drop b.
        Dir d1 = step_dir(a, b);
        if (p == b) break;
        Dir d2 = step_dir(b, p);
        if (d1 == d2) {
          out.pts.pop_back();
          continue;
        }
        // Reversal within a line: a genuine U-turn of zero width; keep it
        // (paths produced by the library never do this, but be safe).
        break;
      }
      break;
    }
    out.pts.push_back(p);
  }
  if (out.pts.size() == 1 && !pts.empty()) {
    // Path that never leaves its start.
    out.pts = {pts.front()};
  }
  return out;
}

i64 RectPath::flagged_zeros() const {
  i64 z = 0;
  for (size_t i = 0; i + 1 < pts.size() && i < zflag.size(); ++i)
    if (zflag[i] && pts[i] == pts[i + 1]) ++z;
  return z;
}

i64 RectPath::links() const {
  RectPath c = canonical();
  i64 geo = c.pts.size() >= 2 ? i64(c.pts.size()) - 1 : 0;
  return geo + flagged_zeros();
}

RectPath RectPath::reversed() const {
  RectPath r = *this;
  std::reverse(r.pts.begin(), r.pts.end());
  std::reverse(r.zflag.begin(), r.zflag.end());
  return r;
}

void RectPath::extend(const RectPath& tail) {
  if (tail.pts.empty()) return;
  bool flags = !zflag.empty() || !tail.zflag.empty();
  size_t i = 0;
  if (!pts.empty() && pts.back() == tail.pts.front()) i = 1;
  for (; i < tail.pts.size(); ++i) {
    bool zf = i >= 1 && i - 1 < tail.zflag.size() && tail.zflag[i - 1];
    append(tail.pts[i], flags && zf);
  }
}

std::string RectPath::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) os << " ";
    os << "(" << pts[i].x << "," << pts[i].y << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// PointRangeIndex

static void build_tree(const std::vector<Point>& base,
                       std::vector<std::vector<i64>>& tree, bool swapped) {
  size_t n = base.size();
  tree.assign(2 * n, {});
  for (size_t i = 0; i < n; ++i)
    tree[n + i] = {swapped ? base[i].x : base[i].y};
  for (size_t i = n; i-- > 1;) {
    const auto &l = tree[2 * i], &r = tree[2 * i + 1];
    tree[i].resize(l.size() + r.size());
    std::merge(l.begin(), l.end(), r.begin(), r.end(), tree[i].begin());
  }
}

PointRangeIndex::PointRangeIndex(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  by_x_ = pts;
  n_ = pts.size();
  std::sort(pts.begin(), pts.end(),
            [](Point a, Point b) { return a.y < b.y || (a.y == b.y && a.x < b.x); });
  by_y_ = pts;
  if (n_ == 0) return;
  build_tree(by_x_, tree_, false);
  build_tree(by_y_, tree_t_, true);
}

bool PointRangeIndex::query(const std::vector<Point>& base,
                            const std::vector<std::vector<i64>>& tree, i64 klo,
                            i64 khi, i64 vlo, i64 vhi, bool swapped) {
  if (base.empty() || klo > khi || vlo + 1 > vhi - 1) {
    // empty key range or empty open value range
  }
  size_t n = base.size();
  auto key = [&](const Point& p) { return swapped ? p.y : p.x; };
  size_t lo = std::lower_bound(base.begin(), base.end(), klo,
                               [&](const Point& p, i64 v) { return key(p) < v; }) -
              base.begin();
  size_t hi = std::upper_bound(base.begin(), base.end(), khi,
                               [&](i64 v, const Point& p) { return v < key(p); }) -
              base.begin();
  if (lo >= hi) return false;
  auto has = [&](const std::vector<i64>& v) {
    auto it = std::upper_bound(v.begin(), v.end(), vlo);
    return it != v.end() && *it < vhi;
  };
  for (size_t l = lo + n, r = hi + n; l < r; l >>= 1, r >>= 1) {
    if (l & 1) {
      if (has(tree[l++])) return true;
    }
    if (r & 1) {
      if (has(tree[--r])) return true;
    }
  }
  return false;
}

bool PointRangeIndex::any_in(i64 xlo, i64 xhi, i64 ylo, i64 yhi) const {
  if (n_ == 0) return false;
  return query(by_x_, tree_, xlo, xhi, ylo, yhi, false);
}

bool PointRangeIndex::any_in_t(i64 ylo, i64 yhi, i64 xlo, i64 xhi) const {
  if (n_ == 0) return false;
  return query(by_y_, tree_t_, ylo, yhi, xlo, xhi, true);
}

}  // namespace rectpath
