#pragma once
// Random valid domains for fuzzing, property tests and benchmarks.
// Holes are "skyline" polygons (rectangles whose top edge is a staircase of
// teeth with globally unique coordinates), laid out on a slot grid inside the
// outer ring, which guarantees simplicity, disjointness and general position
// by construction.  With h = 0 the outer ring itself becomes a two-sided
// skyline polygon.

#include <random>

#include "rectpath/domain.hpp"

namespace rectpath {

struct GenParams {
  int n_target = 16;  // approximate total vertex count
  int h = 1;          // number of holes
  uint64_t seed = 1;
};

Domain gen_domain(const GenParams& p);

// Uniform-ish random point of closed free space (rejection sampling).
Point random_free_point(const Domain& d, std::mt19937_64& rng);

}  // namespace rectpath
