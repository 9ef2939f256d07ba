#pragma once
// Independent ground truth: exhaustive multi-objective search over the Hanan
// grid of the domain (all vertex coordinates plus s and t).  Deliberately
// self-contained: it has its own containment and crossing predicates and
// shares no algorithmic code with the production modules.

#include <vector>

#include "rectpath/costexpr.hpp"
#include "rectpath/domain.hpp"
#include "rectpath/geom.hpp"

namespace rectpath {

namespace oracle {

// Exact optimum for a lexicographic objective.
//   MLS: lexicographic (length, links); SML: (links, length);
//   ML: minimum links (length reported is the min length among
//   minimum-link paths, as for SML).
// Throws std::runtime_error("PointOutsideDomain") for bad endpoints.
Measure measures(const Domain& d, Point s, Point t, Objective o);

// Minimum cost under a monotone cost function.
i64 cost(const Domain& d, Point s, Point t, const CostFunction& f);

// Complete Pareto frontier over (length, links), sorted by increasing
// length (and strictly decreasing links).
std::vector<Measure> frontier(const Domain& d, Point s, Point t);

// Reference containment used by the oracle (exposed for cross-checks).
bool point_free(const Domain& d, Point p);

}  // namespace oracle
}  // namespace rectpath
