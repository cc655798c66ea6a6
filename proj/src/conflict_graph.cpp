#include "dsa/conflict_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsa {

std::uint64_t ConflictGraph::key(UeId a, UeId b) {
  const auto lo = static_cast<std::uint32_t>(std::min(a, b));
  const auto hi = static_cast<std::uint32_t>(std::max(a, b));
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

void ConflictGraph::add_vertex(UeId ue) {
  if (adjacency_.count(ue) != 0) return;
  adjacency_[ue] = {};
  vertices_.insert(std::lower_bound(vertices_.begin(), vertices_.end(), ue), ue);
}

void ConflictGraph::add_edge(UeId a, UeId b) {
  if (a == b) throw std::invalid_argument("self-loop in conflict graph");
  add_vertex(a);
  add_vertex(b);
  if (!edge_set_.insert(key(a, b)).second) return;
  auto& na = adjacency_[a];
  na.insert(std::lower_bound(na.begin(), na.end(), b), b);
  auto& nb = adjacency_[b];
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  edges_ += 2;
}

const std::vector<UeId>& ConflictGraph::neighbors(UeId ue) const {
  const auto it = adjacency_.find(ue);
  if (it == adjacency_.end()) throw std::out_of_range("unknown vertex " + std::to_string(ue));
  return it->second;
}

bool ConflictGraph::adjacent(UeId a, UeId b) const { return edge_set_.count(key(a, b)) != 0; }

bool pairwise_conflict(const UeRadioState& a, const UeRadioState& b, double prb_bandwidth_hz,
                       double noise_w) {
  const auto rate_under = [&](const UeRadioState& ue, const UeRadioState& other) {
    const double signal = ue.expected_rx_w[static_cast<std::size_t>(ue.serving_ru)];
    const double interference = ue.expected_rx_w[static_cast<std::size_t>(other.serving_ru)];
    return per_prb_rate_bps(prb_bandwidth_hz, signal / (noise_w + interference));
  };
  return rate_under(a, b) < (1.0 - a.eta) * a.demand_bps ||
         rate_under(b, a) < (1.0 - b.eta) * b.demand_bps;
}

ConflictGraph build_graph(const SlotRadioView& view) {
  ConflictGraph graph;
  for (const auto& ue : view.ues) graph.add_vertex(ue.ue);
  for (std::size_t i = 0; i < view.ues.size(); ++i) {
    for (std::size_t j = i + 1; j < view.ues.size(); ++j) {
      const auto& a = view.ues[i];
      const auto& b = view.ues[j];
      if (a.serving_ru == b.serving_ru) {
        graph.add_edge(a.ue, b.ue);  // one UE per PRB per RU
      } else if (pairwise_conflict(a, b, view.prb_bandwidth_hz, view.noise_w)) {
        graph.add_edge(a.ue, b.ue);
      }
    }
  }
  return graph;
}

double weighted_degree(const ConflictGraph& graph, UeId ue,
                       const std::map<UeId, double>& weights) {
  const double degree = static_cast<double>(graph.degree(ue));
  const auto it = weights.find(ue);
  return (it == weights.end() ? 1.0 : it->second) * degree;
}

}  // namespace dsa
