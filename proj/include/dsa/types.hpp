#pragma once

#include <map>
#include <set>

namespace dsa {

using UeId = int;
using PrbId = int;  // 0-based PRB index

inline constexpr PrbId kNoPrb = -1;

/// Per-slot UE -> PRB map as enforced at the O-DU. Partial: UEs
/// without a PRB are simply absent.
struct SlotAssignment {
  std::map<UeId, PrbId> prb_of;
  std::set<UeId> preempted;  // displaced by the fairness step this slot

  bool has(UeId ue) const { return prb_of.count(ue) != 0; }
  PrbId prb(UeId ue) const {
    auto it = prb_of.find(ue);
    return it == prb_of.end() ? kNoPrb : it->second;
  }
};

}  // namespace dsa
