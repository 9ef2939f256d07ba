#pragma once
// Path-based Dijkstra over a path-preserving graph: path labels carrying the
// last segment, its travel/drag directions and fixity; the four dragging
// advance cases; through-corridor advances; corridor-connection start labels
// and the target-side concatenation; pruning rule sets per objective, plus
// the legacy (incorrect) dominance rule kept for regression tests.

#include <optional>
#include <stdexcept>

#include "rectpath/corridor.hpp"
#include "rectpath/costexpr.hpp"
#include "rectpath/domain.hpp"
#include "rectpath/pathgraph.hpp"

namespace rectpath {

enum class RuleMode { Corrected, Legacy };

struct SearchStats {
  i64 labels_created = 0;   // labels accepted into a store
  i64 labels_popped = 0;
  i64 max_labels_per_vertex = 0;  // max simultaneously alive at one vertex
};

struct SearchResult {
  Measure measure;
  i64 cost = 0;  // f(measure) under Objective::Cost, otherwise 0
  RectPath path;
  SearchStats stats;
};

struct SearchOptions {
  RuleMode mode = RuleMode::Corrected;
  const CostFunction* cost = nullptr;  // required for Objective::Cost
  // Use the query-variant pruning for SML (keeps per-direction lists of
  // mutually nondominated labels instead of single keyed slots).
  bool sml_query_rule = false;
};

// Errors are thrown as std::runtime_error with one of the messages
// "SourceOutsideDomain", "TargetOutsideDomain", "NoPath".

// Search over the full-vertex graph G(V): every domain vertex plus the two
// endpoints is a graph point; dragging runs against the whole domain.
SearchResult run_search_full(const Domain& d, Point s, Point t, Objective o,
                             const SearchOptions& opt = {});

// Search over the reduced graph G(B): backbone points, through-corridor
// edges, and corridor-connection handling for endpoints inside corridors.
// For hole-free domains answers directly via the simple-polygon smallest
// path (it optimizes every monotone objective simultaneously).
SearchResult run_search_reduced(const Domain& d,
                                const VerticalDecomposition& vd,
                                const CorridorStructure& cs, Point s, Point t,
                                Objective o, const SearchOptions& opt = {});

// Convenience wrapper: builds the decomposition and corridor structure and
// runs the reduced search.
SearchResult run_search(const Domain& d, Point s, Point t, Objective o,
                        const SearchOptions& opt = {});

// Exposed for the rule-structure property tests: per-(vertex, direction)
// sizes of the alive label lists at the end of an SML query-variant run.
struct LabelListSnapshot {
  struct Entry {
    int vertex;
    Dir tau, rho;
    std::vector<Measure> measures;   // in pruning-order
    std::vector<i64> last_lengths;   // matching last-segment lengths
  };
  std::vector<Entry> entries;
};
SearchResult run_search_reduced_capture(const Domain& d,
                                        const VerticalDecomposition& vd,
                                        const CorridorStructure& cs, Point s,
                                        Point t, Objective o,
                                        const SearchOptions& opt,
                                        LabelListSnapshot* snapshot);

}  // namespace rectpath
