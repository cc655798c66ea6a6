#include "dsa/messages.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dsa {

namespace {

using nlohmann::json;

void require_keys(const json& object, const std::set<std::string>& expected,
                  const std::string& where) {
  if (!object.is_object()) throw std::runtime_error(where + ": expected a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (expected.count(key) == 0) {
      throw std::runtime_error(where + ": unknown field '" + key + "'");
    }
  }
  for (const auto& key : expected) {
    if (!object.contains(key)) {
      throw std::runtime_error(where + ": missing field '" + key + "'");
    }
  }
}

json envelope(const std::string& type, json body) {
  return json{{"schema_version", kSchemaVersion}, {"type", type}, {"body", std::move(body)}};
}

json open_envelope(const std::string& line, std::string* type_out) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("malformed message line: ") + e.what());
  }
  require_keys(doc, {"schema_version", "type", "body"}, "envelope");
  const int version = doc.at("schema_version").get<int>();
  if (version != kSchemaVersion) {
    throw std::runtime_error("schema version mismatch: got " + std::to_string(version) +
                             ", expected " + std::to_string(kSchemaVersion));
  }
  *type_out = doc.at("type").get<std::string>();
  return doc.at("body");
}

json body_of_expected(const std::string& line, const std::string& expected_type) {
  std::string type;
  json body = open_envelope(line, &type);
  if (type == "error") {
    require_keys(body, {"message"}, "error");
    throw std::runtime_error("peer reported: " + body.at("message").get<std::string>());
  }
  if (type != expected_type) {
    throw std::runtime_error("expected message type '" + expected_type + "', got '" + type + "'");
  }
  return body;
}

std::string kind_token(TimestampKind kind) {
  return kind == TimestampKind::kIndex ? "index" : "iso8601";
}

TimestampKind parse_kind(const std::string& token) {
  if (token == "index") return TimestampKind::kIndex;
  if (token == "iso8601") return TimestampKind::kIso8601;
  throw std::runtime_error("unknown timestamp kind: " + token);
}

}  // namespace

std::string encode(const O1Report& msg) {
  json samples = json::array();
  for (const auto& s : msg.samples) {
    samples.push_back(json{{"t", s.stamp}, {"ru", s.ru}, {"load", s.load}});
  }
  return envelope("o1_report", json{{"episode", msg.episode},
                                    {"kind", kind_token(msg.kind)},
                                    {"samples", std::move(samples)}})
      .dump();
}

std::string encode(const A1Message& msg) {
  return envelope("a1_policy", policy_to_json(msg.policy)).dump();
}

std::string encode(const E2Report& msg) {
  const SlotRadioView& view = msg.view;
  json ues = json::array();
  for (const auto& u : view.ues) {
    ues.push_back(json{{"ue", u.ue},
                       {"ru", u.serving_ru},
                       {"x_m", u.x_m},
                       {"y_m", u.y_m},
                       {"demand_bps", u.demand_bps},
                       {"weight", u.weight},
                       {"eta", u.eta},
                       {"expected_rx_w", u.expected_rx_w},
                       {"rx_w", u.rx_w}});
  }
  return envelope("e2_report", json{{"episode", view.episode},
                                    {"slot", view.slot},
                                    {"prbs", view.prbs},
                                    {"prb_bandwidth_hz", view.prb_bandwidth_hz},
                                    {"noise_w", view.noise_w},
                                    {"decision_seed", view.decision_seed},
                                    {"ues", std::move(ues)}})
      .dump();
}

std::string encode(const E2Control& msg) {
  json prb_of = json::object();
  for (const auto& [ue, prb] : msg.prb_of) prb_of[std::to_string(ue)] = prb;
  json occupancy = json::object();
  for (const auto& [ru, prbs] : msg.occupancy) occupancy[std::to_string(ru)] = prbs;
  return envelope("e2_control", json{{"episode", msg.episode},
                                     {"slot", msg.slot},
                                     {"prb_of", std::move(prb_of)},
                                     {"preempted", msg.preempted},
                                     {"occupancy", std::move(occupancy)},
                                     {"colored", msg.colored},
                                     {"uncolored", msg.uncolored}})
      .dump();
}

std::string encode(const Ack& msg) {
  return envelope("ack", json{{"episode", msg.episode}}).dump();
}

std::string encode_error(const std::string& message) {
  return envelope("error", json{{"message", message}}).dump();
}

MessageType peek_type(const std::string& line) {
  std::string type;
  open_envelope(line, &type);
  if (type == "o1_report") return MessageType::kO1Report;
  if (type == "a1_policy") return MessageType::kA1Policy;
  if (type == "e2_report") return MessageType::kE2Report;
  if (type == "e2_control") return MessageType::kE2Control;
  if (type == "ack") return MessageType::kAck;
  throw std::runtime_error("unknown message type: " + type);
}

O1Report decode_o1(const std::string& line) {
  const json body = body_of_expected(line, "o1_report");
  require_keys(body, {"episode", "kind", "samples"}, "o1_report");
  O1Report msg;
  msg.episode = body.at("episode").get<long long>();
  msg.kind = parse_kind(body.at("kind").get<std::string>());
  for (const auto& s : body.at("samples")) {
    require_keys(s, {"t", "ru", "load"}, "o1_report.samples");
    O1Report::Sample sample{};
    sample.stamp = s.at("t").get<long long>();
    sample.ru = s.at("ru").get<int>();
    sample.load = s.at("load").get<double>();
    if (sample.load < 0.0) throw std::runtime_error("o1_report: negative load");
    msg.samples.push_back(sample);
  }
  return msg;
}

A1Message decode_a1(const std::string& line) {
  const json body = body_of_expected(line, "a1_policy");
  require_keys(body,
               {"episode", "valid_from", "weights", "fairness", "tolerances", "coloring",
                "numerology", "forecast_by_ru", "forecast_worst"},
               "a1_policy");
  A1Message msg;
  msg.policy = policy_from_json(body);
  return msg;
}

E2Report decode_e2_report(const std::string& line) {
  const json body = body_of_expected(line, "e2_report");
  require_keys(body, {"episode", "slot", "prbs", "prb_bandwidth_hz", "noise_w", "decision_seed",
                      "ues"},
               "e2_report");
  E2Report msg;
  SlotRadioView& view = msg.view;
  view.episode = body.at("episode").get<long long>();
  view.slot = body.at("slot").get<long long>();
  view.prbs = body.at("prbs").get<int>();
  view.prb_bandwidth_hz = body.at("prb_bandwidth_hz").get<double>();
  view.noise_w = body.at("noise_w").get<double>();
  view.decision_seed = body.at("decision_seed").get<std::uint64_t>();
  for (const auto& u : body.at("ues")) {
    require_keys(u, {"ue", "ru", "x_m", "y_m", "demand_bps", "weight", "eta", "expected_rx_w",
                     "rx_w"},
                 "e2_report.ues");
    UeRadioState state;
    state.ue = u.at("ue").get<UeId>();
    state.serving_ru = u.at("ru").get<int>();
    state.x_m = u.at("x_m").get<double>();
    state.y_m = u.at("y_m").get<double>();
    state.demand_bps = u.at("demand_bps").get<double>();
    state.weight = u.at("weight").get<double>();
    state.eta = u.at("eta").get<double>();
    state.expected_rx_w = u.at("expected_rx_w").get<std::vector<double>>();
    state.rx_w = u.at("rx_w").get<std::vector<std::vector<double>>>();
    for (const auto& row : state.rx_w) {
      if (static_cast<int>(row.size()) != view.prbs) {
        throw std::runtime_error("e2_report: rx_w row length does not match prbs");
      }
    }
    view.ues.push_back(std::move(state));
  }
  return msg;
}

E2Control decode_e2_control(const std::string& line) {
  const json body = body_of_expected(line, "e2_control");
  require_keys(body, {"episode", "slot", "prb_of", "preempted", "occupancy", "colored",
                      "uncolored"},
               "e2_control");
  E2Control msg;
  msg.episode = body.at("episode").get<long long>();
  msg.slot = body.at("slot").get<long long>();
  for (const auto& [ue, prb] : body.at("prb_of").items()) {
    msg.prb_of[std::stoi(ue)] = prb.get<PrbId>();
  }
  msg.preempted = body.at("preempted").get<std::vector<UeId>>();
  for (const auto& [ru, prbs] : body.at("occupancy").items()) {
    msg.occupancy[std::stoi(ru)] = prbs.get<std::vector<PrbId>>();
  }
  msg.colored = body.at("colored").get<int>();
  msg.uncolored = body.at("uncolored").get<int>();
  return msg;
}

Ack decode_ack(const std::string& line) {
  const json body = body_of_expected(line, "ack");
  require_keys(body, {"episode"}, "ack");
  Ack msg;
  msg.episode = body.at("episode").get<long long>();
  return msg;
}

void validate_control(const E2Control& control, const SlotRadioView& view,
                      const ConflictGraph& graph) {
  std::map<int, std::set<PrbId>> seen;  // ru -> PRBs in use
  for (const auto& [ue, prb] : control.prb_of) {
    const UeRadioState* state = view.find(ue);
    if (state == nullptr) {
      throw std::runtime_error("e2_control: assignment for unknown ue " + std::to_string(ue));
    }
    if (prb < 0 || prb >= view.prbs) {
      throw std::runtime_error("e2_control: PRB out of range for ue " + std::to_string(ue));
    }
    if (!seen[state->serving_ru].insert(prb).second) {
      throw std::runtime_error("e2_control: PRB " + std::to_string(prb) +
                               " assigned twice within ru " + std::to_string(state->serving_ru));
    }
    for (UeId n : graph.neighbors(ue)) {
      const auto it = control.prb_of.find(n);
      if (it != control.prb_of.end() && it->second == prb) {
        throw std::runtime_error("e2_control: conflicting UEs " + std::to_string(ue) + " and " +
                                 std::to_string(n) + " share PRB " + std::to_string(prb));
      }
    }
  }
  for (const auto& [ru, prbs] : control.occupancy) {
    const auto it = seen.find(ru);
    const std::set<PrbId> expected = it == seen.end() ? std::set<PrbId>{} : it->second;
    if (std::set<PrbId>(prbs.begin(), prbs.end()) != expected) {
      throw std::runtime_error("e2_control: occupancy inconsistent for ru " + std::to_string(ru));
    }
  }
  for (const auto& [ru, prbs] : seen) {
    if (!prbs.empty() && control.occupancy.count(ru) == 0) {
      throw std::runtime_error("e2_control: occupancy missing for ru " + std::to_string(ru));
    }
  }
}

}  // namespace dsa
