#include "dsa/policy.hpp"

#include <cmath>
#include <stdexcept>

#include "dsa/radio.hpp"
#include "dsa/traffic.hpp"

namespace dsa {

FairnessScheme parse_fairness_scheme(const std::string& token) {
  if (token == "none") return FairnessScheme::kNone;
  if (token == "rr") return FairnessScheme::kRoundRobin;
  if (token == "pf") return FairnessScheme::kProportionalFair;
  if (token == "mpf") return FairnessScheme::kModifiedProportionalFair;
  throw std::invalid_argument("unknown fairness scheme: " + token);
}

ColoringScheme parse_coloring_scheme(const std::string& token) {
  if (token == "random") return ColoringScheme::kRandom;
  if (token == "sequential") return ColoringScheme::kSequential;
  if (token == "greedy") return ColoringScheme::kGreedy;
  if (token == "welsh-powell") return ColoringScheme::kWelshPowell;
  if (token == "dsatur") return ColoringScheme::kDsatur;
  throw std::invalid_argument("unknown coloring scheme: " + token);
}

std::string to_token(FairnessScheme scheme) {
  switch (scheme) {
    case FairnessScheme::kNone:
      return "none";
    case FairnessScheme::kRoundRobin:
      return "rr";
    case FairnessScheme::kProportionalFair:
      return "pf";
    case FairnessScheme::kModifiedProportionalFair:
      return "mpf";
  }
  return "?";
}

std::string to_token(ColoringScheme scheme) {
  switch (scheme) {
    case ColoringScheme::kRandom:
      return "random";
    case ColoringScheme::kSequential:
      return "sequential";
    case ColoringScheme::kGreedy:
      return "greedy";
    case ColoringScheme::kWelshPowell:
      return "welsh-powell";
    case ColoringScheme::kDsatur:
      return "dsatur";
  }
  return "?";
}

double PolicyProfile::weight_of(const std::string& sla_class) const {
  const auto it = class_weight.find(sla_class);
  if (it == class_weight.end()) {
    throw std::runtime_error("SLA class without a priority weight: " + sla_class);
  }
  return it->second;
}

double PolicyProfile::tolerance_of(const std::string& sla_class) const {
  const auto it = class_tolerance.find(sla_class);
  if (it == class_tolerance.end()) {
    throw std::runtime_error("SLA class without a tolerance: " + sla_class);
  }
  return it->second;
}

int select_numerology(double predicted_worst, double bandwidth_hz, double guard_band_hz,
                      double headroom) {
  const double need = std::ceil(headroom * std::max(predicted_worst, 0.0));
  for (int mu = kMaxNumerology; mu >= kMinNumerology; --mu) {
    int prbs = 0;
    try {
      prbs = prb_count(bandwidth_hz, guard_band_hz, mu);
    } catch (const std::invalid_argument&) {
      continue;  // grid unusable at this numerology
    }
    if (static_cast<double>(prbs) >= need) return mu;
  }
  return 0;
}

PolicyProfile build_policy_profile(const std::map<int, double>& forecasts,
                                   const std::map<std::string, double>& sla_weights,
                                   const std::map<std::string, double>& sla_tolerances,
                                   FairnessScheme fairness, ColoringScheme coloring,
                                   double bandwidth_hz, double guard_band_hz, double headroom,
                                   long long episode, long long valid_from) {
  if (forecasts.empty()) throw std::runtime_error("cannot build a policy without forecasts");
  for (const auto& [cls, w] : sla_weights) {
    if (w <= 0.0) throw std::runtime_error("SLA weight must be positive for class " + cls);
    if (sla_tolerances.count(cls) == 0) {
      throw std::runtime_error("SLA class without a tolerance: " + cls);
    }
  }
  for (const auto& [cls, eta] : sla_tolerances) {
    if (eta < 0.0 || eta > 1.0) {
      throw std::runtime_error("SLA tolerance outside [0,1] for class " + cls);
    }
    if (sla_weights.count(cls) == 0) {
      throw std::runtime_error("SLA class without a priority weight: " + cls);
    }
  }

  PolicyProfile profile;
  profile.episode = episode;
  profile.valid_from = valid_from;
  profile.class_weight = sla_weights;
  profile.fairness = fairness;
  profile.class_tolerance = sla_tolerances;
  profile.coloring = coloring;
  profile.forecast_by_ru = forecasts;
  profile.forecast_worst = worst_case(forecasts);
  profile.numerology =
      select_numerology(profile.forecast_worst, bandwidth_hz, guard_band_hz, headroom);
  return profile;
}

nlohmann::json policy_to_json(const PolicyProfile& profile) {
  nlohmann::json weights = nlohmann::json::object();
  for (const auto& [cls, w] : profile.class_weight) weights[cls] = w;
  nlohmann::json tolerances = nlohmann::json::object();
  for (const auto& [cls, eta] : profile.class_tolerance) tolerances[cls] = eta;
  nlohmann::json forecast = nlohmann::json::object();
  for (const auto& [ru, value] : profile.forecast_by_ru) forecast[std::to_string(ru)] = value;
  return nlohmann::json{{"episode", profile.episode},
                        {"valid_from", profile.valid_from},
                        {"weights", weights},
                        {"fairness", to_token(profile.fairness)},
                        {"tolerances", tolerances},
                        {"coloring", to_token(profile.coloring)},
                        {"numerology", profile.numerology},
                        {"forecast_by_ru", forecast},
                        {"forecast_worst", profile.forecast_worst}};
}

PolicyProfile policy_from_json(const nlohmann::json& body) {
  PolicyProfile profile;
  profile.episode = body.at("episode").get<long long>();
  profile.valid_from = body.at("valid_from").get<long long>();
  for (const auto& [cls, w] : body.at("weights").items()) {
    profile.class_weight[cls] = w.get<double>();
  }
  profile.fairness = parse_fairness_scheme(body.at("fairness").get<std::string>());
  for (const auto& [cls, eta] : body.at("tolerances").items()) {
    profile.class_tolerance[cls] = eta.get<double>();
  }
  profile.coloring = parse_coloring_scheme(body.at("coloring").get<std::string>());
  profile.numerology = body.at("numerology").get<int>();
  if (profile.numerology < kMinNumerology || profile.numerology > kMaxNumerology) {
    throw std::runtime_error("policy numerology outside 0..4");
  }
  for (const auto& [ru, value] : body.at("forecast_by_ru").items()) {
    profile.forecast_by_ru[std::stoi(ru)] = value.get<double>();
  }
  profile.forecast_worst = body.at("forecast_worst").get<double>();
  return profile;
}

}  // namespace dsa
