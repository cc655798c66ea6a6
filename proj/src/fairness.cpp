#include "dsa/fairness.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsa {

void FairnessState::ensure(UeId ue, double demand_bps) {
  if (ewma_bps.count(ue) != 0) return;
  ewma_bps[ue] = std::max(demand_bps, ewma_floor_bps);
  last_served[ue] = -1;
}

double FairnessState::ewma(UeId ue) const {
  const auto it = ewma_bps.find(ue);
  if (it == ewma_bps.end()) throw std::out_of_range("no EWMA state for ue " + std::to_string(ue));
  return it->second;
}

double mpf_metric(double rate_on_candidate_bps, double ewma_bps, double weight) {
  if (ewma_bps <= 0.0) throw std::invalid_argument("MPF metric requires a positive EWMA");
  return rate_on_candidate_bps / ewma_bps * weight;
}

double update_ewma(double prev_bps, double achieved_bps, double alpha) {
  return (1.0 - alpha) * prev_bps + alpha * achieved_bps;
}

namespace {

double weight_of(const std::map<UeId, double>& weights, UeId ue) {
  const auto it = weights.find(ue);
  return it == weights.end() ? 1.0 : it->second;
}

double rate_of(const RateMatrix& rates, UeId ue, PrbId prb) {
  const auto it = rates.find(ue);
  if (it == rates.end() || prb < 0 || prb >= static_cast<PrbId>(it->second.size())) return 0.0;
  return it->second[static_cast<std::size_t>(prb)];
}

// Occupants of `prb` that conflict with `ue`.
std::vector<UeId> conflicting_occupants(const ConflictGraph& graph,
                                        const std::map<UeId, PrbId>& prb_of, UeId ue, PrbId prb) {
  std::vector<UeId> occupants;
  for (UeId n : graph.neighbors(ue)) {
    const auto it = prb_of.find(n);
    if (it != prb_of.end() && it->second == prb) occupants.push_back(n);
  }
  return occupants;
}

void unschedule(SlotAssignment& assignment, const std::vector<UeId>& ues) {
  for (UeId ue : ues) {
    assignment.prb_of.erase(ue);
    assignment.preempted.insert(ue);
  }
}

SlotAssignment schedule_mpf(const Coloring& coloring, const ConflictGraph& graph,
                            const FairnessState& state, const RateMatrix& rates,
                            const std::map<UeId, double>& weights, int prbs) {
  SlotAssignment assignment;
  assignment.prb_of = coloring.color_of;
  for (UeId ue : coloring.uncolored) {
    // Candidate metric depends on the PRB only through the rate.
    PrbId best = kNoPrb;
    double best_metric = -1.0;
    for (PrbId p = 0; p < prbs; ++p) {
      const double m = mpf_metric(rate_of(rates, ue, p), state.ewma(ue), weight_of(weights, ue));
      if (m > best_metric) {
        best_metric = m;
        best = p;
      }
    }
    if (best == kNoPrb) continue;
    const auto occupants = conflicting_occupants(graph, assignment.prb_of, ue, best);
    if (occupants.empty()) {
      assignment.prb_of[ue] = best;
      continue;
    }
    // Preempt only when strictly beating every conflicting occupant
    // (all of them are displaced, keeping the slot conflict-free).
    bool beats_all = true;
    for (UeId v : occupants) {
      const double mv = mpf_metric(rate_of(rates, v, best), state.ewma(v), weight_of(weights, v));
      if (!(best_metric > mv)) {
        beats_all = false;
        break;
      }
    }
    if (beats_all) {
      unschedule(assignment, occupants);
      assignment.prb_of[ue] = best;
    }
  }
  return assignment;
}

SlotAssignment schedule_rr(const Coloring& coloring, const ConflictGraph& graph,
                           const FairnessState& state, int prbs) {
  SlotAssignment assignment;
  assignment.prb_of = coloring.color_of;
  std::set<UeId> immune;  // winners of this slot keep their PRB

  const auto recency = [&](UeId ue) {
    const auto it = state.last_served.find(ue);
    const long long last = it == state.last_served.end() ? -1 : it->second;
    return std::pair<long long, UeId>(last, ue);
  };

  for (UeId ue : coloring.uncolored) {
    for (PrbId p = 0; p < prbs; ++p) {
      const auto occupants = conflicting_occupants(graph, assignment.prb_of, ue, p);
      if (occupants.empty()) {
        assignment.prb_of[ue] = p;
        immune.insert(ue);
        break;
      }
      bool contestable = true;
      bool wins = true;
      for (UeId v : occupants) {
        if (immune.count(v) != 0) {
          contestable = false;
          break;
        }
        if (recency(ue) >= recency(v)) wins = false;
      }
      if (contestable && wins) {
        unschedule(assignment, occupants);
        assignment.prb_of[ue] = p;
        immune.insert(ue);
        break;
      }
    }
  }
  return assignment;
}

SlotAssignment schedule_pf(const Coloring& coloring, const ConflictGraph& graph,
                           const FairnessState& state, const RateMatrix& rates, int prbs) {
  SlotAssignment assignment;
  assignment.prb_of = coloring.color_of;
  std::set<UeId> immune;

  for (UeId ue : coloring.uncolored) {
    PrbId best = kNoPrb;
    double best_metric = -1.0;
    for (PrbId p = 0; p < prbs; ++p) {
      const double m = rate_of(rates, ue, p) / state.ewma(ue);
      if (m > best_metric) {
        best_metric = m;
        best = p;
      }
    }
    if (best == kNoPrb) continue;
    const auto occupants = conflicting_occupants(graph, assignment.prb_of, ue, best);
    if (occupants.empty()) {
      assignment.prb_of[ue] = best;
      immune.insert(ue);
      continue;
    }
    // Symmetric contest: the claimant wins on a strictly better
    // rate/ewma metric, ties resolve toward the lower ue id.
    bool wins = true;
    for (UeId v : occupants) {
      if (immune.count(v) != 0) {
        wins = false;
        break;
      }
      const double mv = rate_of(rates, v, best) / state.ewma(v);
      if (best_metric < mv || (best_metric == mv && v < ue)) wins = false;
    }
    if (wins) {
      unschedule(assignment, occupants);
      assignment.prb_of[ue] = best;
      immune.insert(ue);
    }
  }
  return assignment;
}

}  // namespace

SlotAssignment schedule_slot(FairnessScheme scheme, const Coloring& coloring,
                             const ConflictGraph& graph, const FairnessState& state,
                             const RateMatrix& rates, const std::map<UeId, double>& weights,
                             int prbs) {
  if (!verify_coloring(graph, coloring, prbs)) {
    throw std::invalid_argument("scheduling requires a proper input coloring");
  }
  switch (scheme) {
    case FairnessScheme::kNone: {
      SlotAssignment assignment;
      assignment.prb_of = coloring.color_of;
      return assignment;
    }
    case FairnessScheme::kModifiedProportionalFair:
      return schedule_mpf(coloring, graph, state, rates, weights, prbs);
    case FairnessScheme::kRoundRobin:
      return schedule_rr(coloring, graph, state, prbs);
    case FairnessScheme::kProportionalFair:
      return schedule_pf(coloring, graph, state, rates, prbs);
  }
  throw std::logic_error("unreachable");
}

void commit_slot(FairnessState& state, long long slot, const SlotAssignment& assignment,
                 const std::map<UeId, double>& realized_rate_bps) {
  for (auto& [ue, ewma] : state.ewma_bps) {
    const auto it = realized_rate_bps.find(ue);
    const double achieved = it == realized_rate_bps.end() ? 0.0 : it->second;
    ewma = std::max(state.ewma_floor_bps, update_ewma(ewma, achieved, state.alpha));
    if (assignment.has(ue)) state.last_served[ue] = slot;
  }
}

}  // namespace dsa
