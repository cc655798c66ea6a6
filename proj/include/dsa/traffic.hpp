#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsa/rng.hpp"

namespace dsa {

inline constexpr int kSamplesPerDay = 96;       // one sample per 15 minutes
inline constexpr long long kSampleSeconds = 900;

enum class TimestampKind { kIndex, kIso8601 };

/// Aligned per-RU load series at 15-minute granularity. `stamps` are
/// either plain sample indices or epoch seconds (ISO-8601 input);
/// spacing is validated as uniform on ingest.
struct TrafficTable {
  TimestampKind kind = TimestampKind::kIndex;
  std::vector<long long> stamps;
  std::map<int, std::vector<double>> load_by_ru;

  std::size_t samples() const { return stamps.size(); }
  /// Timestamp rendered the way it was read (index or ISO-8601).
  std::string stamp_text(std::size_t i) const;
};

/// Parses `timestamp,ru_id,load` CSV (header required). Timestamps may
/// be integer sample indices or ISO-8601; mixing the two is rejected,
/// as are gaps, non-increasing stamps, negative loads and (when
/// `known_rus` is given) unknown RU ids. Errors carry the line number.
TrafficTable ingest_traffic_csv(const std::string& path, const std::set<int>* known_rus);

/// Sinusoidal day profile: base + amplitude * sin(2 pi t / 96 - pi/2)
/// plus Gaussian noise, clamped at zero. Trough at the first sample of
/// each day, peak mid-day.
std::vector<double> synth_diurnal(int days, double base, double amplitude, double noise_sd,
                                  Rng& rng);

/// synth_diurnal for every RU id with independent noise streams.
TrafficTable synth_diurnal_table(const std::vector<int>& ru_ids, int days, double base,
                                 double amplitude, double noise_sd, std::uint64_t seed);

enum class ForecastKind { kSeasonalNaive, kMovingAverage, kExternal };

ForecastKind parse_forecast_kind(const std::string& token);
std::string to_token(ForecastKind kind);

struct ForecastConfig {
  ForecastKind kind = ForecastKind::kSeasonalNaive;
  int lookback = 4;
  int horizon = 1;  // samples
};

/// Predictions supplied by an external model, keyed (ru, stamp).
struct ExternalPredictions {
  std::map<std::pair<int, long long>, double> value;
};
ExternalPredictions load_predictions_csv(const std::string& path);

/// Predicts series[t + horizon] from samples 0..t (t is the 0-based
/// index of the last observed sample). Seasonal-naive returns the
/// same-slot-yesterday value when a full day of history exists, else
/// the last value; moving-average returns the mean of the last
/// `lookback` samples. Throws on insufficient history.
double forecast(const std::vector<double>& series, const ForecastConfig& cfg, long long t);

/// Table-level forecast for one RU, dispatching to the external
/// prediction file when configured.
double forecast_ru(const TrafficTable& table, int ru, const ForecastConfig& cfg, long long t,
                   const ExternalPredictions* external);

/// Max over per-RU predictions; throws on an empty map.
double worst_case(const std::map<int, double>& predictions);

struct UeSpawn {
  double demand_bps = 0.0;
  std::string sla_class;
  double x_m = 0.0;
  double y_m = 0.0;
  double heading_rad = 0.0;
};

struct DemandMixEntry {
  double demand_bps = 0.0;
  double probability = 0.0;
};
struct ClassMixEntry {
  std::string name;
  double probability = 0.0;
};

/// Spawns round(lambda) UEs uniformly in the disc of radius `radius_m`
/// around (cx, cy), demands and classes drawn from the mixes.
std::vector<UeSpawn> load_to_population(double lambda, const std::vector<DemandMixEntry>& demands,
                                        const std::vector<ClassMixEntry>& classes, double cx,
                                        double cy, double radius_m, Rng& rng);

/// Plain mean squared error; callers normalize first where required.
double mse(const std::vector<double>& predicted, const std::vector<double>& actual);

/// Min-max bounds of a range, for normalized-MSE reporting.
struct MinMax {
  double lo = 0.0;
  double hi = 0.0;
  double normalize(double x) const { return hi > lo ? (x - lo) / (hi - lo) : 0.0; }
};
MinMax min_max(const std::vector<double>& values, std::size_t first, std::size_t last);

}  // namespace dsa
