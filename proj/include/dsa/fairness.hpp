#pragma once

#include <map>
#include <vector>

#include "dsa/coloring.hpp"
#include "dsa/conflict_graph.hpp"
#include "dsa/policy.hpp"
#include "dsa/types.hpp"

namespace dsa {

/// Per-xApp scheduling memory: EWMA throughput per UE plus the
/// round-robin recency pointer. Reset at each rApp episode, since the
/// UE population is redrawn there.
struct FairnessState {
  double alpha = 0.1;
  double ewma_floor_bps = 1.0;
  std::map<UeId, double> ewma_bps;
  std::map<UeId, long long> last_served;  // -1 when never served

  /// EWMA starts at the UE's demand so early metrics are comparable
  /// across heterogeneous demands.
  void ensure(UeId ue, double demand_bps);
  double ewma(UeId ue) const;
};

/// Eq.-style MPF metric (rate / ewma) * weight. Throws on ewma <= 0.
double mpf_metric(double rate_on_candidate_bps, double ewma_bps, double weight);

/// (1 - alpha) * prev + alpha * achieved.
double update_ewma(double prev_bps, double achieved_bps, double alpha);

/// rates[i][p]: achievable rate of view-UE i on PRB p (same UE order
/// as the graph's vertex list).
using RateMatrix = std::map<UeId, std::vector<double>>;

/// Post-coloring scheduling step. All schemes start from the proper
/// coloring and keep the final assignment conflict-free:
///  - none: the coloring unchanged;
///  - mpf: each uncolored UE picks its metric-argmax PRB and takes it
///    if unoccupied by conflictors or if its metric strictly beats
///    every conflicting occupant (which are then unscheduled);
///  - rr: per-PRB contention where the least-recently-served party
///    wins, ties to the lower ue id;
///  - pf: like mpf but unweighted and with no deference to incumbency
///    beyond the shared tie rule.
/// Throws if the input coloring is not proper for the graph.
SlotAssignment schedule_slot(FairnessScheme scheme, const Coloring& coloring,
                             const ConflictGraph& graph, const FairnessState& state,
                             const RateMatrix& rates, const std::map<UeId, double>& weights,
                             int prbs);

/// End-of-slot bookkeeping: EWMA update for every tracked UE with its
/// realized rate (0 when unscheduled) and recency update for served
/// UEs.
void commit_slot(FairnessState& state, long long slot, const SlotAssignment& assignment,
                 const std::map<UeId, double>& realized_rate_bps);

}  // namespace dsa
