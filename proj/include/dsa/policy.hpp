#pragma once

#include <map>
#include <string>

#include <json.hpp>

namespace dsa {

enum class FairnessScheme { kNone, kRoundRobin, kProportionalFair, kModifiedProportionalFair };
enum class ColoringScheme { kRandom, kSequential, kGreedy, kWelshPowell, kDsatur };

FairnessScheme parse_fairness_scheme(const std::string& token);
ColoringScheme parse_coloring_scheme(const std::string& token);
std::string to_token(FairnessScheme scheme);
std::string to_token(ColoringScheme scheme);

/// The rApp -> xApp tuple pi = (pi1..pi5). Weights and tolerances are
/// keyed by SLA class; per-UE values are resolved when UEs spawn.
/// Immutable once issued for an episode.
struct PolicyProfile {
  long long episode = 0;
  long long valid_from = 0;  // traffic sample index the policy covers
  std::map<std::string, double> class_weight;     // pi1
  FairnessScheme fairness = FairnessScheme::kModifiedProportionalFair;  // pi2
  std::map<std::string, double> class_tolerance;  // pi3
  ColoringScheme coloring = ColoringScheme::kWelshPowell;  // pi4
  int numerology = 0;                              // pi5
  std::map<int, double> forecast_by_ru;            // provenance
  double forecast_worst = 0.0;

  double weight_of(const std::string& sla_class) const;
  double tolerance_of(const std::string& sla_class) const;
};

/// Largest numerology whose grid still offers at least
/// ceil(headroom * predicted_worst) PRBs; 0 when none qualifies.
/// Low predicted traffic therefore maps to few, wide PRBs.
int select_numerology(double predicted_worst, double bandwidth_hz, double guard_band_hz,
                      double headroom);

/// Assembles the episode profile: pi5 from the worst-case forecast,
/// pi1/pi3 from the SLA maps, pi2/pi4 from configuration. Throws when
/// the forecast map is empty or a referenced SLA class is missing from
/// either map.
PolicyProfile build_policy_profile(const std::map<int, double>& forecasts,
                                   const std::map<std::string, double>& sla_weights,
                                   const std::map<std::string, double>& sla_tolerances,
                                   FairnessScheme fairness, ColoringScheme coloring,
                                   double bandwidth_hz, double guard_band_hz, double headroom,
                                   long long episode, long long valid_from);

nlohmann::json policy_to_json(const PolicyProfile& profile);
PolicyProfile policy_from_json(const nlohmann::json& body);

}  // namespace dsa
