#include "dsa/coloring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dsa {

namespace {

bool conflicts_with_neighbors(const ConflictGraph& graph, const std::map<UeId, PrbId>& color_of,
                              UeId ue, PrbId prb) {
  for (UeId n : graph.neighbors(ue)) {
    const auto it = color_of.find(n);
    if (it != color_of.end() && it->second == prb) return true;
  }
  return false;
}

// First PRB in index order not used by any neighbor, or kNoPrb.
PrbId first_fit(const ConflictGraph& graph, const std::map<UeId, PrbId>& color_of, UeId ue,
                int prbs) {
  for (PrbId p = 0; p < prbs; ++p) {
    if (!conflicts_with_neighbors(graph, color_of, ue, p)) return p;
  }
  return kNoPrb;
}

void finalize(const ConflictGraph& graph, Coloring& coloring) {
  std::set<PrbId> used;
  for (const auto& [ue, prb] : coloring.color_of) used.insert(prb);
  coloring.colors_used = static_cast<int>(used.size());
  coloring.uncolored.clear();
  for (UeId ue : graph.vertices()) {
    if (coloring.color_of.count(ue) == 0) coloring.uncolored.push_back(ue);
  }
}

Coloring color_ordered(const ConflictGraph& graph, int prbs, const std::vector<UeId>& order) {
  Coloring coloring;
  for (UeId ue : order) {
    const PrbId p = first_fit(graph, coloring.color_of, ue, prbs);
    if (p != kNoPrb) coloring.color_of[ue] = p;
  }
  finalize(graph, coloring);
  return coloring;
}

Coloring color_sequential(const ConflictGraph& graph, int prbs) {
  Coloring coloring;
  PrbId next = 0;
  for (UeId ue : graph.vertices()) {
    if (next >= prbs) break;  // palette exhausted, rest stay uncolored
    const PrbId p = next++;
    if (!conflicts_with_neighbors(graph, coloring.color_of, ue, p)) {
      coloring.color_of[ue] = p;
    }
  }
  finalize(graph, coloring);
  return coloring;
}

Coloring color_random(const ConflictGraph& graph, int prbs, Rng& rng) {
  Coloring coloring;
  for (UeId ue : graph.vertices()) {
    const PrbId p = static_cast<PrbId>(rng.below(static_cast<std::uint64_t>(prbs)));
    if (!conflicts_with_neighbors(graph, coloring.color_of, ue, p)) {
      coloring.color_of[ue] = p;
    }
  }
  finalize(graph, coloring);
  return coloring;
}

Coloring color_dsatur(const ConflictGraph& graph, int prbs,
                      const std::map<UeId, double>& weights) {
  Coloring coloring;
  std::map<UeId, std::set<PrbId>> neighbor_colors;
  std::set<UeId> pending(graph.vertices().begin(), graph.vertices().end());

  while (!pending.empty()) {
    UeId pick = *pending.begin();
    double best_sat = -1.0;
    double best_wdeg = -1.0;
    for (UeId ue : pending) {
      const double sat = static_cast<double>(neighbor_colors[ue].size());
      const double wdeg = weighted_degree(graph, ue, weights);
      if (sat > best_sat || (sat == best_sat && wdeg > best_wdeg)) {
        best_sat = sat;
        best_wdeg = wdeg;
        pick = ue;  // std::set iteration is ascending, so lower id wins ties
      }
    }
    pending.erase(pick);
    const PrbId p = first_fit(graph, coloring.color_of, pick, prbs);
    if (p == kNoPrb) continue;
    coloring.color_of[pick] = p;
    for (UeId n : graph.neighbors(pick)) neighbor_colors[n].insert(p);
  }
  finalize(graph, coloring);
  return coloring;
}

}  // namespace

Coloring color_graph(const ConflictGraph& graph, int prbs, const std::map<UeId, double>& weights,
                     ColoringScheme scheme, Rng& rng) {
  if (prbs < 1) throw std::invalid_argument("coloring requires at least one PRB");
  switch (scheme) {
    case ColoringScheme::kSequential:
      return color_sequential(graph, prbs);
    case ColoringScheme::kRandom:
      return color_random(graph, prbs, rng);
    case ColoringScheme::kGreedy:
      return color_ordered(graph, prbs, graph.vertices());
    case ColoringScheme::kWelshPowell: {
      std::vector<UeId> order = graph.vertices();
      std::stable_sort(order.begin(), order.end(), [&](UeId a, UeId b) {
        const double wa = weighted_degree(graph, a, weights);
        const double wb = weighted_degree(graph, b, weights);
        if (wa != wb) return wa > wb;
        return a < b;
      });
      return color_ordered(graph, prbs, order);
    }
    case ColoringScheme::kDsatur:
      return color_dsatur(graph, prbs, weights);
  }
  throw std::logic_error("unreachable");
}

bool verify_coloring(const ConflictGraph& graph, const Coloring& coloring, int prbs) {
  for (const auto& [ue, prb] : coloring.color_of) {
    if (!graph.has_vertex(ue)) return false;
    if (prb < 0 || prb >= prbs) return false;
    for (UeId n : graph.neighbors(ue)) {
      const auto it = coloring.color_of.find(n);
      if (it != coloring.color_of.end() && it->second == prb) return false;
    }
  }
  // colored and uncolored must partition the vertex set
  std::set<UeId> seen;
  for (const auto& [ue, prb] : coloring.color_of) seen.insert(ue);
  for (UeId ue : coloring.uncolored) {
    if (!seen.insert(ue).second) return false;
  }
  if (seen.size() != graph.vertices().size()) return false;
  for (UeId ue : graph.vertices()) {
    if (seen.count(ue) == 0) return false;
  }
  return true;
}

}  // namespace dsa
