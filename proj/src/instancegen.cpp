#include "rectpath/instancegen.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace rectpath {

namespace {

// Draws an unused value from [lo, hi]; falls back to a linear scan so the
// generator never fails when the range has headroom.
i64 fresh(std::set<i64>& used, i64 lo, i64 hi, std::mt19937_64& rng) {
  assert(lo <= hi);
  std::uniform_int_distribution<i64> dist(lo, hi);
  for (int t = 0; t < 256; ++t) {
    i64 v = dist(rng);
    if (used.insert(v).second) return v;
  }
  for (i64 v = lo; v <= hi; ++v)
    if (used.insert(v).second) return v;
  throw std::runtime_error("coordinate range exhausted");
}

// k distinct fresh values in [lo, hi], sorted.
std::vector<i64> fresh_sorted(std::set<i64>& used, i64 lo, i64 hi, int k,
                              std::mt19937_64& rng) {
  std::vector<i64> v;
  v.reserve(k);
  for (int i = 0; i < k; ++i) v.push_back(fresh(used, lo, hi, rng));
  std::sort(v.begin(), v.end());
  return v;
}

// Skyline hole: flat bottom at y0, staircase top with one tooth per column.
std::vector<Point> skyline_hole(std::set<i64>& ux, std::set<i64>& uy, i64 sx1,
                                i64 sx2, i64 sy1, i64 sy2, int teeth,
                                std::mt19937_64& rng) {
  int k = std::max(1, teeth);
  std::vector<i64> xs = fresh_sorted(ux, sx1, sx2, k + 1, rng);
  i64 ymid = sy1 + (sy2 - sy1) / 4;
  i64 y0 = fresh(uy, sy1, ymid, rng);
  std::vector<i64> heights;
  for (int i = 0; i < k; ++i) heights.push_back(fresh(uy, ymid + 1, sy2, rng));
  std::vector<Point> ring;
  ring.push_back({xs[0], y0});
  ring.push_back({xs[k], y0});
  for (int i = k - 1; i >= 0; --i) {
    ring.push_back({xs[i + 1], heights[i]});
    ring.push_back({xs[i], heights[i]});
  }
  return ring;
}

// Two-sided skyline used as the outer ring when there are no holes.
std::vector<Point> skyline_outer(std::set<i64>& ux, std::set<i64>& uy,
                                 int n_target, std::mt19937_64& rng) {
  int total_jumps = std::max(0, n_target / 2 - 2);
  std::uniform_int_distribution<int> splitd(0, total_jumps);
  int jb = splitd(rng), jt = total_jumps - jb;
  i64 span = 10ll * (total_jumps + 4);
  std::vector<i64> xs = fresh_sorted(ux, 0, span, total_jumps + 2, rng);
  // Partition interior jump x's between bottom and top.
  std::vector<i64> interior(xs.begin() + 1, xs.end() - 1);
  std::shuffle(interior.begin(), interior.end(), rng);
  std::vector<i64> xb(interior.begin(), interior.begin() + jb);
  std::vector<i64> xt(interior.begin() + jb, interior.end());
  std::sort(xb.begin(), xb.end());
  std::sort(xt.begin(), xt.end());
  i64 hspan = 10ll * (total_jumps + 4);
  std::vector<i64> bh, th;  // bottom band strictly below top band
  for (int i = 0; i <= jb; ++i) bh.push_back(fresh(uy, 0, hspan, rng));
  for (int i = 0; i <= jt; ++i) th.push_back(fresh(uy, hspan + 2, 2 * hspan + 2, rng));
  std::vector<Point> ring;
  // Bottom, left to right: columns split at xb.
  std::vector<i64> bxs = {xs.front()};
  bxs.insert(bxs.end(), xb.begin(), xb.end());
  bxs.push_back(xs.back());
  for (size_t i = 0; i + 1 < bxs.size(); ++i) {
    ring.push_back({bxs[i], bh[i]});
    ring.push_back({bxs[i + 1], bh[i]});
  }
  // Top, right to left: columns split at xt.
  std::vector<i64> txs = {xs.front()};
  txs.insert(txs.end(), xt.begin(), xt.end());
  txs.push_back(xs.back());
  for (size_t i = txs.size() - 1; i-- > 0;) {
    ring.push_back({txs[i + 1], th[i]});
    ring.push_back({txs[i], th[i]});
  }
  // Drop duplicated corner points created when a run has a single column.
  std::vector<Point> out;
  for (Point p : ring)
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  if (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

}  // namespace

Domain gen_domain(const GenParams& p) {
  std::mt19937_64 rng(p.seed * 0x9e3779b97f4a7c15ull + 12345);
  std::set<i64> ux, uy;

  std::vector<std::vector<Point>> rings;
  if (p.h <= 0) {
    rings.push_back(skyline_outer(ux, uy, std::max(4, p.n_target), rng));
  } else {
    int h = p.h;
    int per_hole = std::max(4, (p.n_target - 4) / h);
    int teeth = std::max(1, (per_hole - 2) / 2);
    int cols = 1;
    while (cols * cols < h) ++cols;
    int rows = (h + cols - 1) / cols;
    i64 slot_w = 10ll * (teeth + 2);
    i64 slot_h = 10ll * (teeth + 2) * cols;
    i64 W = slot_w * cols + 10;
    i64 H = slot_h * rows + 10;
    ux.insert(0);
    ux.insert(W);
    uy.insert(0);
    uy.insert(H);
    rings.push_back({{0, 0}, {W, 0}, {W, H}, {0, H}});
    for (int i = 0; i < h; ++i) {
      int r = i / cols, c = i % cols;
      i64 sx1 = c * slot_w + slot_w / 8 + 1;
      i64 sx2 = (c + 1) * slot_w - slot_w / 8 - 1;
      i64 sy1 = r * slot_h + slot_h / 8 + 1;
      i64 sy2 = (r + 1) * slot_h - slot_h / 8 - 1;
      rings.push_back(skyline_hole(ux, uy, sx1, sx2, sy1, sy2, teeth, rng));
    }
  }
  auto res = Domain::validate(std::move(rings));
  if (auto* err = std::get_if<DomainError>(&res))
    throw std::runtime_error("generator produced invalid domain: " + err->kind +
                             ": " + err->detail);
  return std::get<Domain>(std::move(res));
}

Point random_free_point(const Domain& d, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> dx(d.bbox.x1, d.bbox.x2);
  std::uniform_int_distribution<i64> dy(d.bbox.y1, d.bbox.y2);
  for (int t = 0; t < 10000; ++t) {
    Point p{dx(rng), dy(rng)};
    if (d.classify_raycast(p) != Containment::Outside) return p;
  }
  return d.vertices[0];  // boundary points are in closed free space
}

}  // namespace rectpath
