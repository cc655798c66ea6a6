#pragma once

#include <cstdint>
#include <map>
#include <unordered_set>
#include <vector>

#include "dsa/radio.hpp"
#include "dsa/types.hpp"

namespace dsa {

/// Per-slot user-centric interference graph: UE vertices, undirected
/// conflict edges. Same-RU UEs always form cliques; cross-RU edges come
/// from the pairwise satisfaction test.
class ConflictGraph {
 public:
  void add_vertex(UeId ue);
  void add_edge(UeId a, UeId b);

  const std::vector<UeId>& vertices() const { return vertices_; }
  const std::vector<UeId>& neighbors(UeId ue) const;
  bool has_vertex(UeId ue) const { return adjacency_.count(ue) != 0; }
  bool adjacent(UeId a, UeId b) const;
  std::size_t degree(UeId ue) const { return neighbors(ue).size(); }
  std::size_t edge_count() const { return edges_ / 2; }

 private:
  static std::uint64_t key(UeId a, UeId b);

  std::vector<UeId> vertices_;              // ascending
  std::map<UeId, std::vector<UeId>> adjacency_;  // sorted neighbor lists
  std::unordered_set<std::uint64_t> edge_set_;
  std::size_t edges_ = 0;
};

/// Cross-RU conflict test under co-channel pairwise sharing with
/// expected fading: each UE sees the other's serving RU as the only
/// interferer. Expected gains are PRB-independent within a slot, so
/// the per-PRB existence test collapses to a single evaluation; a
/// frequency-selective channel model would have to re-expand the loop.
bool pairwise_conflict(const UeRadioState& a, const UeRadioState& b, double prb_bandwidth_hz,
                       double noise_w);

/// Same-RU cliques plus cross-RU pairs failing the satisfaction test.
ConflictGraph build_graph(const SlotRadioView& view);

/// Priority-scaled degree used by the coloring order.
double weighted_degree(const ConflictGraph& graph, UeId ue, const std::map<UeId, double>& weights);

}  // namespace dsa
