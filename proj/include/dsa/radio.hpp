#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsa/rng.hpp"
#include "dsa/types.hpp"

namespace dsa {

inline constexpr double kPrbBaseHz = 180000.0;  // 12 subcarriers x 15 kHz
inline constexpr int kMinNumerology = 0;
inline constexpr int kMaxNumerology = 4;

/// 5G NR PRB grid for one numerology.
struct SpectrumGrid {
  double total_bandwidth_hz = 0.0;
  double guard_band_hz = 0.0;  // one-sided
  int numerology = 0;
  int prbs = 0;
  double prb_bandwidth_hz = 0.0;

  static SpectrumGrid make(double bandwidth_hz, double guard_band_hz, int numerology);
};

/// Number of PRBs that fit in the usable band at numerology mu.
/// Throws std::invalid_argument on non-positive usable bandwidth,
/// mu outside 0..4, or a zero-PRB grid.
int prb_count(double bandwidth_hz, double guard_band_hz, int numerology);

/// PRB bandwidth W = 12 * 15 kHz * 2^mu.
double prb_bandwidth_hz(int numerology);

enum class RuKind { kMacro, kMicro };

RuKind parse_ru_kind(const std::string& token);
std::string to_token(RuKind kind);

struct RuConfig {
  int id = 0;
  RuKind kind = RuKind::kMacro;
  double x_m = 0.0;
  double y_m = 0.0;
  double radius_m = 0.0;
  double prb_power_w = 0.0;  // uniform per PRB
  double max_power_w = 0.0;
  double min_power_w = 0.0;  // beacon floor
  double pathloss_constant = 1.0;
  double pathloss_exponent = 2.0;
};

/// Large-scale gain K * D^-alpha. Distances below 1 m are clamped to
/// 1 m so the gain never exceeds K when a UE walks over an RU.
double path_loss(double constant, double exponent, double distance_m);

/// Rayleigh amplitude fading as a unit-mean exponential power gain.
double sample_fading(Rng& rng);

/// Thermal noise over `bandwidth_hz` from a dBm/Hz density, in watts.
double noise_power_w(double psd_dbm_per_hz, double bandwidth_hz);

/// Shannon rate of one PRB, bits/s.
double per_prb_rate_bps(double prb_bandwidth_hz, double sinr);

/// Satisfaction test with tolerance margin eta in [0, 1].
bool is_satisfied(double rate_bps, double demand_bps, double eta);

/// Radio state of one UE for one slot, as reported over E2: received
/// power from every RU, with and without the slot's fading draw.
struct UeRadioState {
  UeId ue = 0;
  int serving_ru = 0;  // index into the scenario RU list
  double x_m = 0.0;
  double y_m = 0.0;
  double demand_bps = 0.0;
  double weight = 1.0;
  double eta = 0.0;
  std::vector<double> expected_rx_w;          // [ru], E[h] = 1
  std::vector<std::vector<double>> rx_w;      // [ru][prb], sampled fading
};

/// Everything the xApp engines need to decide one slot.
struct SlotRadioView {
  long long episode = 0;
  long long slot = 0;
  int prbs = 0;
  double prb_bandwidth_hz = 0.0;
  double noise_w = 0.0;
  std::uint64_t decision_seed = 0;
  std::vector<UeRadioState> ues;  // ascending ue id

  const UeRadioState* find(UeId ue) const;
};

/// SINR of `ue` on `prb` under the co-channel activity implied by
/// `assignment`. Returns 0 when the PRB is not assigned to the UE.
/// Interference counts every other RU with an occupant on the PRB.
double sinr(const SlotRadioView& view, const SlotAssignment& assignment, UeId ue, PrbId prb);

/// Sum of per-PRB Shannon rates over the UE's assigned PRBs.
double ue_total_rate_bps(const SlotRadioView& view, const SlotAssignment& assignment, UeId ue);

/// Achievable rate of every (ue, prb) pair under a fixed activity
/// pattern; the candidate UE itself is never counted as interference.
std::vector<std::vector<double>> rate_matrix(const SlotRadioView& view,
                                             const SlotAssignment& activity);

}  // namespace dsa
