#include "dsa/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsa {

int prb_count(double bandwidth_hz, double guard_band_hz, int numerology) {
  if (numerology < kMinNumerology || numerology > kMaxNumerology) {
    throw std::invalid_argument("numerology must be in 0..4");
  }
  const double usable = bandwidth_hz - 2.0 * guard_band_hz;
  if (usable <= 0.0) {
    throw std::invalid_argument("usable bandwidth is non-positive");
  }
  const double block = kPrbBaseHz * static_cast<double>(1 << numerology);
  const int count = static_cast<int>(std::floor(usable / block));
  if (count < 1) {
    throw std::invalid_argument("grid yields zero PRBs at this numerology");
  }
  return count;
}

double prb_bandwidth_hz(int numerology) {
  return 12.0 * 15000.0 * static_cast<double>(1 << numerology);
}

SpectrumGrid SpectrumGrid::make(double bandwidth_hz, double guard_band_hz, int numerology) {
  SpectrumGrid grid;
  grid.total_bandwidth_hz = bandwidth_hz;
  grid.guard_band_hz = guard_band_hz;
  grid.numerology = numerology;
  grid.prbs = prb_count(bandwidth_hz, guard_band_hz, numerology);
  grid.prb_bandwidth_hz = dsa::prb_bandwidth_hz(numerology);
  return grid;
}

RuKind parse_ru_kind(const std::string& token) {
  if (token == "macro") return RuKind::kMacro;
  if (token == "micro") return RuKind::kMicro;
  throw std::invalid_argument("unknown RU kind: " + token);
}

std::string to_token(RuKind kind) { return kind == RuKind::kMacro ? "macro" : "micro"; }

double path_loss(double constant, double exponent, double distance_m) {
  const double d = std::max(distance_m, 1.0);
  return constant * std::pow(d, -exponent);
}

double sample_fading(Rng& rng) { return rng.exponential(); }

double noise_power_w(double psd_dbm_per_hz, double bandwidth_hz) {
  const double dbm = psd_dbm_per_hz + 10.0 * std::log10(bandwidth_hz);
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double per_prb_rate_bps(double prb_bandwidth_hz, double sinr) {
  return prb_bandwidth_hz * std::log2(1.0 + sinr);
}

bool is_satisfied(double rate_bps, double demand_bps, double eta) {
  return rate_bps >= (1.0 - eta) * demand_bps;
}

const UeRadioState* SlotRadioView::find(UeId ue) const {
  for (const auto& u : ues) {
    if (u.ue == ue) return &u;
  }
  return nullptr;
}

namespace {

// RUs with at least one occupant on `prb`, except `self_ru`.
double interference_w(const SlotRadioView& view, const SlotAssignment& assignment, UeId self,
                      int self_ru, PrbId prb) {
  double sum = 0.0;
  std::set<int> rus;  // RUs active on this PRB
  for (const auto& [ue, p] : assignment.prb_of) {
    if (p != prb || ue == self) continue;
    const UeRadioState* state = view.find(ue);
    if (state != nullptr) rus.insert(state->serving_ru);
  }
  const UeRadioState* me = view.find(self);
  for (int ru : rus) {
    if (ru == self_ru) continue;
    sum += me->rx_w[static_cast<std::size_t>(ru)][static_cast<std::size_t>(prb)];
  }
  return sum;
}

}  // namespace

double sinr(const SlotRadioView& view, const SlotAssignment& assignment, UeId ue, PrbId prb) {
  if (assignment.prb(ue) != prb || prb == kNoPrb) return 0.0;
  const UeRadioState* state = view.find(ue);
  if (state == nullptr) return 0.0;
  const double signal =
      state->rx_w[static_cast<std::size_t>(state->serving_ru)][static_cast<std::size_t>(prb)];
  const double denom = view.noise_w + interference_w(view, assignment, ue, state->serving_ru, prb);
  return signal / denom;
}

double ue_total_rate_bps(const SlotRadioView& view, const SlotAssignment& assignment, UeId ue) {
  const PrbId prb = assignment.prb(ue);
  if (prb == kNoPrb) return 0.0;
  return per_prb_rate_bps(view.prb_bandwidth_hz, sinr(view, assignment, ue, prb));
}

std::vector<std::vector<double>> rate_matrix(const SlotRadioView& view,
                                             const SlotAssignment& activity) {
  // Active RUs per PRB under `activity`.
  std::vector<std::vector<bool>> ru_active;
  int ru_count = 0;
  for (const auto& u : view.ues) ru_count = std::max(ru_count, u.serving_ru + 1);
  ru_active.assign(static_cast<std::size_t>(ru_count),
                   std::vector<bool>(static_cast<std::size_t>(view.prbs), false));
  for (const auto& [ue, p] : activity.prb_of) {
    const UeRadioState* state = view.find(ue);
    if (state != nullptr && p >= 0 && p < view.prbs) {
      ru_active[static_cast<std::size_t>(state->serving_ru)][static_cast<std::size_t>(p)] = true;
    }
  }

  std::vector<std::vector<double>> rates(view.ues.size(),
                                         std::vector<double>(static_cast<std::size_t>(view.prbs)));
  for (std::size_t i = 0; i < view.ues.size(); ++i) {
    const auto& u = view.ues[i];
    for (PrbId p = 0; p < view.prbs; ++p) {
      double interference = 0.0;
      for (int r = 0; r < ru_count; ++r) {
        if (r == u.serving_ru || !ru_active[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)])
          continue;
        interference += u.rx_w[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)];
      }
      const double signal =
          u.rx_w[static_cast<std::size_t>(u.serving_ru)][static_cast<std::size_t>(p)];
      rates[i][static_cast<std::size_t>(p)] =
          per_prb_rate_bps(view.prb_bandwidth_hz, signal / (view.noise_w + interference));
    }
  }
  return rates;
}

}  // namespace dsa
