#pragma once

#include <map>
#include <vector>

#include "dsa/conflict_graph.hpp"
#include "dsa/policy.hpp"
#include "dsa/rng.hpp"
#include "dsa/types.hpp"

namespace dsa {

/// Partial proper coloring: UE -> PRB plus the set the scheme could
/// not place. colored + uncolored always partition the vertex set.
struct Coloring {
  std::map<UeId, PrbId> color_of;
  std::vector<UeId> uncolored;  // ascending
  int colors_used = 0;
};

/// Phase-3 PRB allocation. Scheme semantics:
///  - sequential: the k-th UE in id order is offered PRB k outright
///    (no reuse, UEs beyond the palette get nothing), kept only if
///    conflict-free;
///  - random: one uniformly random PRB attempt per UE, kept only if
///    conflict-free;
///  - greedy: natural id order, first-fit PRB scan;
///  - welsh-powell: weighted-degree descending order, first-fit;
///  - dsatur: max saturation degree first (ties: higher weighted
///    degree, then lower id), first-fit.
/// Ties everywhere resolve by ascending ue id; a UE with no feasible
/// PRB joins the uncolored set, so properness is never violated.
Coloring color_graph(const ConflictGraph& graph, int prbs, const std::map<UeId, double>& weights,
                     ColoringScheme scheme, Rng& rng);

/// Checks properness, PRB range and the colored/uncolored partition.
bool verify_coloring(const ConflictGraph& graph, const Coloring& coloring, int prbs);

}  // namespace dsa
