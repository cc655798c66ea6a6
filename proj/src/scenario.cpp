#include "dsa/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dsa {

namespace {

using nlohmann::json;

class Validator {
 public:
  void fail(const std::string& path, const std::string& what) {
    errors_.push_back(path + ": " + what);
  }
  void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) fail(path, what);
  }
  void finish() const {
    if (errors_.empty()) return;
    std::ostringstream out;
    out << "invalid scenario config:";
    for (const auto& e : errors_) out << "\n  - " << e;
    throw std::runtime_error(out.str());
  }

 private:
  std::vector<std::string> errors_;
};

template <typename T>
T get_or(const json& doc, const std::string& key, const T& fallback) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  return doc.at(key).get<T>();
}

const json& subobject(const json& doc, const std::string& key) {
  static const json empty = json::object();
  if (!doc.contains(key) || doc.at(key).is_null()) return empty;
  return doc.at(key);
}

}  // namespace

ScenarioConfig scenario_from_json(const json& doc) {
  Validator v;
  ScenarioConfig cfg;

  if (!doc.contains("seed") || doc.at("seed").is_null()) {
    v.fail("seed", "a seed is mandatory (no wall-clock entropy)");
  } else {
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }

  const json& episodes = subobject(doc, "episodes");
  cfg.episodes.rapp = get_or<long long>(episodes, "rapp", cfg.episodes.rapp);
  cfg.episodes.xapp_slots = get_or<long long>(episodes, "xapp_slots", cfg.episodes.xapp_slots);
  cfg.episodes.slot_seconds = get_or<double>(episodes, "slot_seconds", cfg.episodes.slot_seconds);
  v.require(cfg.episodes.rapp >= 1, "episodes.rapp", "must be >= 1");
  v.require(cfg.episodes.xapp_slots >= 1, "episodes.xapp_slots", "must be >= 1");
  v.require(cfg.episodes.slot_seconds > 0.0, "episodes.slot_seconds", "must be > 0");

  const json& grid = subobject(doc, "grid");
  cfg.grid.bandwidth_hz = get_or<double>(grid, "bandwidth_hz", cfg.grid.bandwidth_hz);
  cfg.grid.guard_band_hz = get_or<double>(grid, "guard_band_hz", cfg.grid.guard_band_hz);
  v.require(cfg.grid.bandwidth_hz > 2.0 * cfg.grid.guard_band_hz, "grid.bandwidth_hz",
            "usable bandwidth must be positive");

  cfg.noise_psd_dbm_per_hz =
      get_or<double>(doc, "noise_psd_dbm_per_hz", cfg.noise_psd_dbm_per_hz);

  if (!doc.contains("rus") || !doc.at("rus").is_array() || doc.at("rus").empty()) {
    v.fail("rus", "at least one RU is required");
  } else {
    std::set<int> ids;
    std::size_t i = 0;
    for (const auto& r : doc.at("rus")) {
      const std::string path = "rus[" + std::to_string(i) + "]";
      RuConfig ru;
      try {
        ru.id = r.at("id").get<int>();
        ru.kind = parse_ru_kind(r.at("kind").get<std::string>());
        ru.x_m = r.at("position").at(0).get<double>();
        ru.y_m = r.at("position").at(1).get<double>();
        ru.radius_m = r.at("radius_m").get<double>();
        ru.prb_power_w = r.at("prb_power_w").get<double>();
        ru.max_power_w = r.at("max_power_w").get<double>();
        ru.min_power_w = get_or<double>(r, "min_power_w", 0.001);
        ru.pathloss_constant = get_or<double>(r, "pathloss_constant", 1.0);
        ru.pathloss_exponent = r.at("pathloss_exponent").get<double>();
      } catch (const std::exception& e) {
        v.fail(path, std::string("malformed RU: ") + e.what());
        ++i;
        continue;
      }
      v.require(ids.insert(ru.id).second, path + ".id", "duplicate RU id");
      v.require(ru.radius_m > 0.0, path + ".radius_m", "must be > 0");
      v.require(ru.pathloss_exponent > 0.0, path + ".pathloss_exponent", "must be > 0");
      v.require(ru.prb_power_w > 0.0, path + ".prb_power_w", "must be > 0");
      v.require(ru.min_power_w <= ru.prb_power_w, path + ".min_power_w",
                "beacon floor exceeds the per-PRB power");
      cfg.rus.push_back(ru);
      ++i;
    }
  }

  const json& ue = subobject(doc, "ue");
  cfg.ue.speed_mps = get_or<double>(ue, "speed_mps", cfg.ue.speed_mps);
  cfg.ue.max_turn_rad = get_or<double>(ue, "max_turn_rad", cfg.ue.max_turn_rad);
  v.require(cfg.ue.speed_mps >= 0.0, "ue.speed_mps", "must be >= 0");
  v.require(cfg.ue.max_turn_rad >= 0.0, "ue.max_turn_rad", "must be >= 0");
  if (ue.contains("demand_mix")) {
    for (const auto& d : ue.at("demand_mix")) {
      DemandMixEntry entry;
      entry.demand_bps = d.at("demand_bps").get<double>();
      entry.probability = d.at("probability").get<double>();
      cfg.ue.demand_mix.push_back(entry);
    }
  }
  if (cfg.ue.demand_mix.empty()) cfg.ue.demand_mix.push_back({1.0e6, 1.0});
  if (ue.contains("class_mix")) {
    for (const auto& c : ue.at("class_mix")) {
      ClassMixEntry entry;
      entry.name = c.at("name").get<std::string>();
      entry.probability = c.at("probability").get<double>();
      cfg.ue.class_mix.push_back(entry);
    }
  }
  if (cfg.ue.class_mix.empty()) cfg.ue.class_mix.push_back({"default", 1.0});

  double demand_p = 0.0;
  for (const auto& d : cfg.ue.demand_mix) {
    v.require(d.demand_bps > 0.0, "ue.demand_mix", "demands must be > 0");
    v.require(d.probability >= 0.0, "ue.demand_mix", "probabilities must be >= 0");
    demand_p += d.probability;
  }
  v.require(std::abs(demand_p - 1.0) < 1e-9, "ue.demand_mix", "probabilities must sum to 1");
  double class_p = 0.0;
  for (const auto& c : cfg.ue.class_mix) class_p += c.probability;
  v.require(std::abs(class_p - 1.0) < 1e-9, "ue.class_mix", "probabilities must sum to 1");

  const json& sla = subobject(doc, "sla");
  if (sla.contains("weights")) {
    for (const auto& [cls, w] : sla.at("weights").items()) {
      cfg.sla.weights[cls] = w.get<double>();
    }
  }
  if (sla.contains("tolerances")) {
    for (const auto& [cls, eta] : sla.at("tolerances").items()) {
      cfg.sla.tolerances[cls] = eta.get<double>();
    }
  }
  if (cfg.sla.weights.empty()) cfg.sla.weights["default"] = 1.0;
  if (cfg.sla.tolerances.empty()) cfg.sla.tolerances["default"] = 0.0;
  for (const auto& [cls, w] : cfg.sla.weights) {
    v.require(w > 0.0, "sla.weights." + cls, "must be > 0");
  }
  for (const auto& [cls, eta] : cfg.sla.tolerances) {
    v.require(eta >= 0.0 && eta <= 1.0, "sla.tolerances." + cls, "must be in [0,1]");
  }
  for (const auto& c : cfg.ue.class_mix) {
    v.require(cfg.sla.weights.count(c.name) != 0, "ue.class_mix",
              "class '" + c.name + "' has no SLA weight");
    v.require(cfg.sla.tolerances.count(c.name) != 0, "ue.class_mix",
              "class '" + c.name + "' has no SLA tolerance");
  }

  const json& schemes = subobject(doc, "schemes");
  try {
    cfg.schemes.fairness =
        parse_fairness_scheme(get_or<std::string>(schemes, "fairness", "mpf"));
  } catch (const std::exception& e) {
    v.fail("schemes.fairness", e.what());
  }
  try {
    cfg.schemes.coloring =
        parse_coloring_scheme(get_or<std::string>(schemes, "coloring", "welsh-powell"));
  } catch (const std::exception& e) {
    v.fail("schemes.coloring", e.what());
  }

  const json& policy = subobject(doc, "policy");
  cfg.policy.headroom = get_or<double>(policy, "headroom", cfg.policy.headroom);
  v.require(cfg.policy.headroom >= 1.0, "policy.headroom", "must be >= 1");
  if (policy.contains("numerology_override") && !policy.at("numerology_override").is_null()) {
    cfg.policy.numerology_override = policy.at("numerology_override").get<int>();
    v.require(*cfg.policy.numerology_override >= kMinNumerology &&
                  *cfg.policy.numerology_override <= kMaxNumerology,
              "policy.numerology_override", "must be in 0..4");
  }

  const json& fairness = subobject(doc, "fairness");
  cfg.fairness.alpha = get_or<double>(fairness, "alpha", cfg.fairness.alpha);
  cfg.fairness.ewma_floor_bps =
      get_or<double>(fairness, "ewma_floor_bps", cfg.fairness.ewma_floor_bps);
  v.require(cfg.fairness.alpha > 0.0 && cfg.fairness.alpha <= 1.0, "fairness.alpha",
            "must be in (0,1]");
  v.require(cfg.fairness.ewma_floor_bps > 0.0, "fairness.ewma_floor_bps", "must be > 0");

  const json& traffic = subobject(doc, "traffic");
  cfg.traffic.source = get_or<std::string>(traffic, "source", cfg.traffic.source);
  v.require(cfg.traffic.source == "synthetic" || cfg.traffic.source == "csv", "traffic.source",
            "must be 'synthetic' or 'csv'");
  const json& synth = subobject(traffic, "synthetic");
  cfg.traffic.synthetic.days = get_or<int>(synth, "days", cfg.traffic.synthetic.days);
  cfg.traffic.synthetic.base = get_or<double>(synth, "base", cfg.traffic.synthetic.base);
  cfg.traffic.synthetic.amplitude =
      get_or<double>(synth, "amplitude", cfg.traffic.synthetic.amplitude);
  cfg.traffic.synthetic.noise_sd =
      get_or<double>(synth, "noise_sd", cfg.traffic.synthetic.noise_sd);
  v.require(cfg.traffic.synthetic.days >= 1, "traffic.synthetic.days", "must be >= 1");
  v.require(cfg.traffic.synthetic.base >= cfg.traffic.synthetic.amplitude &&
                cfg.traffic.synthetic.amplitude >= 0.0,
            "traffic.synthetic", "requires base >= amplitude >= 0");
  v.require(cfg.traffic.synthetic.noise_sd >= 0.0, "traffic.synthetic.noise_sd", "must be >= 0");
  if (traffic.contains("csv_path") && !traffic.at("csv_path").is_null()) {
    cfg.traffic.csv_path = traffic.at("csv_path").get<std::string>();
  }
  v.require(cfg.traffic.source != "csv" || cfg.traffic.csv_path.has_value(), "traffic.csv_path",
            "required when traffic.source is 'csv'");
  if (traffic.contains("start_offset") && !traffic.at("start_offset").is_null()) {
    cfg.traffic.start_offset = traffic.at("start_offset").get<long long>();
    v.require(*cfg.traffic.start_offset >= 0, "traffic.start_offset", "must be >= 0");
  }
  if (traffic.contains("predictions_csv") && !traffic.at("predictions_csv").is_null()) {
    cfg.traffic.predictions_csv = traffic.at("predictions_csv").get<std::string>();
  }

  const json& forecast = subobject(doc, "forecast");
  try {
    cfg.forecast.kind =
        parse_forecast_kind(get_or<std::string>(forecast, "kind", "seasonal-naive"));
  } catch (const std::exception& e) {
    v.fail("forecast.kind", e.what());
  }
  cfg.forecast.lookback = get_or<int>(forecast, "lookback", cfg.forecast.lookback);
  cfg.forecast.horizon = get_or<int>(forecast, "horizon", cfg.forecast.horizon);
  v.require(cfg.forecast.lookback >= 1, "forecast.lookback", "must be >= 1");
  v.require(cfg.forecast.horizon >= 1, "forecast.horizon", "must be >= 1");
  v.require(cfg.forecast.kind != ForecastKind::kExternal ||
                cfg.traffic.predictions_csv.has_value(),
            "traffic.predictions_csv", "required by the pluggable-external forecaster");

  const json& debug = subobject(doc, "debug");
  if (debug.contains("graph_dump_dir") && !debug.at("graph_dump_dir").is_null()) {
    cfg.debug.graph_dump_dir = debug.at("graph_dump_dir").get<std::string>();
  }

  // Eq.-1 style power budget: the densest grid that can be selected
  // must fit under the RU sum-power cap.
  int worst_prbs = 0;
  try {
    const int mu = cfg.policy.numerology_override.value_or(kMinNumerology);
    worst_prbs = prb_count(cfg.grid.bandwidth_hz, cfg.grid.guard_band_hz, mu);
  } catch (const std::exception&) {
    worst_prbs = 0;
    v.fail("grid", "no usable PRB grid at the selectable numerology");
  }
  for (std::size_t i = 0; i < cfg.rus.size(); ++i) {
    const auto& ru = cfg.rus[i];
    v.require(static_cast<double>(worst_prbs) * ru.prb_power_w <= ru.max_power_w,
              "rus[" + std::to_string(i) + "].max_power_w",
              "P * prb_power exceeds the RU power budget at the densest grid");
  }

  v.finish();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return scenario_from_json(doc);
}

json scenario_to_json(const ScenarioConfig& cfg) {
  json rus = json::array();
  for (const auto& ru : cfg.rus) {
    rus.push_back(json{{"id", ru.id},
                       {"kind", to_token(ru.kind)},
                       {"position", {ru.x_m, ru.y_m}},
                       {"radius_m", ru.radius_m},
                       {"prb_power_w", ru.prb_power_w},
                       {"max_power_w", ru.max_power_w},
                       {"min_power_w", ru.min_power_w},
                       {"pathloss_constant", ru.pathloss_constant},
                       {"pathloss_exponent", ru.pathloss_exponent}});
  }
  json demand_mix = json::array();
  for (const auto& d : cfg.ue.demand_mix) {
    demand_mix.push_back(json{{"demand_bps", d.demand_bps}, {"probability", d.probability}});
  }
  json class_mix = json::array();
  for (const auto& c : cfg.ue.class_mix) {
    class_mix.push_back(json{{"name", c.name}, {"probability", c.probability}});
  }
  return json{
      {"seed", cfg.seed},
      {"episodes",
       {{"rapp", cfg.episodes.rapp},
        {"xapp_slots", cfg.episodes.xapp_slots},
        {"slot_seconds", cfg.episodes.slot_seconds}}},
      {"grid",
       {{"bandwidth_hz", cfg.grid.bandwidth_hz}, {"guard_band_hz", cfg.grid.guard_band_hz}}},
      {"noise_psd_dbm_per_hz", cfg.noise_psd_dbm_per_hz},
      {"rus", std::move(rus)},
      {"ue",
       {{"speed_mps", cfg.ue.speed_mps},
        {"max_turn_rad", cfg.ue.max_turn_rad},
        {"demand_mix", std::move(demand_mix)},
        {"class_mix", std::move(class_mix)}}},
      {"sla", {{"weights", cfg.sla.weights}, {"tolerances", cfg.sla.tolerances}}},
      {"schemes",
       {{"fairness", to_token(cfg.schemes.fairness)}, {"coloring", to_token(cfg.schemes.coloring)}}},
      {"policy",
       {{"headroom", cfg.policy.headroom},
        {"numerology_override", cfg.policy.numerology_override.has_value()
                                    ? json(*cfg.policy.numerology_override)
                                    : json(nullptr)}}},
      {"fairness",
       {{"alpha", cfg.fairness.alpha}, {"ewma_floor_bps", cfg.fairness.ewma_floor_bps}}},
      {"traffic",
       {{"source", cfg.traffic.source},
        {"synthetic",
         {{"days", cfg.traffic.synthetic.days},
          {"base", cfg.traffic.synthetic.base},
          {"amplitude", cfg.traffic.synthetic.amplitude},
          {"noise_sd", cfg.traffic.synthetic.noise_sd}}},
        {"csv_path", cfg.traffic.csv_path.has_value() ? json(*cfg.traffic.csv_path) : json(nullptr)},
        {"start_offset",
         cfg.traffic.start_offset.has_value() ? json(*cfg.traffic.start_offset) : json(nullptr)},
        {"predictions_csv", cfg.traffic.predictions_csv.has_value()
                                ? json(*cfg.traffic.predictions_csv)
                                : json(nullptr)}}},
      {"forecast",
       {{"kind", to_token(cfg.forecast.kind)},
        {"lookback", cfg.forecast.lookback},
        {"horizon", cfg.forecast.horizon}}},
      {"debug",
       {{"graph_dump_dir",
         cfg.debug.graph_dump_dir.has_value() ? json(*cfg.debug.graph_dump_dir) : json(nullptr)}}}};
}

std::string config_hash(const ScenarioConfig& cfg) {
  const std::string text = scenario_to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void apply_override(json& doc, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::runtime_error("override must be key.path=value, got '" + spec + "'");
  }
  const std::string path = spec.substr(0, eq);
  const std::string value = spec.substr(eq + 1);

  std::string pointer = "/";
  for (char c : path) pointer += (c == '.') ? '/' : c;
  pointer.erase(0, 0);
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;  // bare strings (scheme tokens, paths) stay strings
  }
  doc[json::json_pointer(pointer)] = parsed;
}

TrafficTable build_traffic(const ScenarioConfig& cfg) {
  if (cfg.traffic.source == "csv") {
    std::set<int> known;
    for (const auto& ru : cfg.rus) known.insert(ru.id);
    TrafficTable table = ingest_traffic_csv(*cfg.traffic.csv_path, &known);
    for (const auto& ru : cfg.rus) {
      if (table.load_by_ru.count(ru.id) == 0) {
        throw std::runtime_error("traffic CSV has no series for ru " + std::to_string(ru.id));
      }
    }
    return table;
  }
  std::vector<int> ids;
  for (const auto& ru : cfg.rus) ids.push_back(ru.id);
  return synth_diurnal_table(ids, cfg.traffic.synthetic.days, cfg.traffic.synthetic.base,
                             cfg.traffic.synthetic.amplitude, cfg.traffic.synthetic.noise_sd,
                             cfg.seed);
}

long long resolve_start_offset(const ScenarioConfig& cfg, const TrafficTable& table) {
  long long start;
  if (cfg.traffic.start_offset.has_value()) {
    start = *cfg.traffic.start_offset;
  } else {
    // Leave the forecaster a full day of history when the series
    // allows it, else whatever the lookback strictly needs.
    const long long total = static_cast<long long>(table.samples());
    start = std::min<long long>(kSamplesPerDay, total - cfg.episodes.rapp);
    start = std::max<long long>(start, cfg.forecast.lookback + cfg.forecast.horizon - 1);
  }
  const long long needed = start + cfg.episodes.rapp;
  if (needed > static_cast<long long>(table.samples())) {
    throw std::runtime_error("traffic series too short: need " + std::to_string(needed) +
                             " samples, have " + std::to_string(table.samples()));
  }
  if (start - cfg.forecast.horizon + 1 < cfg.forecast.lookback &&
      cfg.forecast.kind == ForecastKind::kMovingAverage) {
    throw std::runtime_error("start_offset leaves insufficient history for the forecaster");
  }
  if (start < cfg.forecast.horizon) {
    throw std::runtime_error("start_offset must be >= forecast.horizon");
  }
  return start;
}

std::vector<std::string> scenario_warnings(const ScenarioConfig& cfg, const TrafficTable& table,
                                           long long start_offset) {
  std::vector<std::string> warnings;
  bool outside = false;
  for (long long e = 0; e < cfg.episodes.rapp && !outside; ++e) {
    double total = 0.0;
    for (const auto& ru : cfg.rus) {
      const auto& series = table.load_by_ru.at(ru.id);
      total += std::floor(series[static_cast<std::size_t>(start_offset + e)] + 0.5);
    }
    if (total < 10.0 || total > 160.0) {
      warnings.push_back("episode " + std::to_string(e) + " spawns " +
                         std::to_string(static_cast<long long>(total)) +
                         " UEs, outside the reference 10..160 band");
      outside = true;  // one line is enough
    }
  }
  return warnings;
}

}  // namespace dsa
