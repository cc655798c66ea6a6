#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsa/policy.hpp"
#include "dsa/radio.hpp"
#include "dsa/traffic.hpp"

namespace dsa {

struct EpisodeSettings {
  long long rapp = 4;        // rApp episodes per run
  long long xapp_slots = 100;  // xApp slots per episode
  double slot_seconds = 1.0;
};

struct GridSettings {
  double bandwidth_hz = 10e6;
  double guard_band_hz = 0.25e6;
};

struct UeSettings {
  double speed_mps = 1.5;
  double max_turn_rad = 0.39269908169872414;  // pi/8
  std::vector<DemandMixEntry> demand_mix;
  std::vector<ClassMixEntry> class_mix;
};

struct SlaSettings {
  std::map<std::string, double> weights;
  std::map<std::string, double> tolerances;
};

struct SchemeSettings {
  FairnessScheme fairness = FairnessScheme::kModifiedProportionalFair;
  ColoringScheme coloring = ColoringScheme::kWelshPowell;
};

struct PolicySettings {
  double headroom = 1.2;
  std::optional<int> numerology_override;  // empty -> rApp forecast-driven
};

struct FairnessSettings {
  double alpha = 0.1;
  double ewma_floor_bps = 1.0;
};

struct SyntheticTraffic {
  int days = 2;
  double base = 4.5;
  double amplitude = 0.0;
  double noise_sd = 0.35;
};

struct TrafficSettings {
  std::string source = "synthetic";  // synthetic | csv
  SyntheticTraffic synthetic;
  std::optional<std::string> csv_path;
  std::optional<long long> start_offset;  // first consumed sample index
  std::optional<std::string> predictions_csv;
};

struct DebugSettings {
  std::optional<std::string> graph_dump_dir;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  EpisodeSettings episodes;
  GridSettings grid;
  double noise_psd_dbm_per_hz = -174.0;
  std::vector<RuConfig> rus;
  UeSettings ue;
  SlaSettings sla;
  SchemeSettings schemes;
  PolicySettings policy;
  FairnessSettings fairness;
  TrafficSettings traffic;
  ForecastConfig forecast;
  DebugSettings debug;
};

/// Parses and validates a scenario document; every violation is
/// collected and reported with its field path in one exception.
ScenarioConfig scenario_from_json(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::string& path);

/// Full round-trip: defaults materialized, canonical key order.
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

/// FNV-1a over the canonical serialization, for output provenance.
std::string config_hash(const ScenarioConfig& cfg);

/// Applies one `--set path.to.key=value` override onto a raw document.
void apply_override(nlohmann::json& doc, const std::string& spec);

/// Validation warnings (UE counts outside the reference 10..160 band);
/// callers decide where to print them.
std::vector<std::string> scenario_warnings(const ScenarioConfig& cfg, const TrafficTable& table,
                                           long long start_offset);

/// Resolved default for the first consumed traffic sample.
long long resolve_start_offset(const ScenarioConfig& cfg, const TrafficTable& table);

/// Builds (synthetic) or loads (csv) the per-RU traffic table.
TrafficTable build_traffic(const ScenarioConfig& cfg);

}  // namespace dsa
