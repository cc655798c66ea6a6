#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsa/conflict_graph.hpp"
#include "dsa/policy.hpp"
#include "dsa/radio.hpp"
#include "dsa/traffic.hpp"
#include "dsa/types.hpp"

namespace dsa {

inline constexpr int kSchemaVersion = 1;

/// O1: measurement window feeding the rApp (timestamp, ru, load).
struct O1Report {
  long long episode = 0;
  TimestampKind kind = TimestampKind::kIndex;
  struct Sample {
    long long stamp;
    int ru;
    double load;
  };
  std::vector<Sample> samples;
};

/// A1: the per-episode policy profile.
struct A1Message {
  PolicyProfile policy;
};

/// E2 uplink: the slot radio view the xApp engines consume.
struct E2Report {
  SlotRadioView view;
};

/// E2 downlink: the assignment the O-DU enforces.
struct E2Control {
  long long episode = 0;
  long long slot = 0;
  std::map<UeId, PrbId> prb_of;
  std::vector<UeId> preempted;                 // ascending
  std::map<int, std::vector<PrbId>> occupancy;  // ru -> sorted PRBs in use
  int colored = 0;
  int uncolored = 0;
};

struct Ack {
  long long episode = 0;
};

/// One message per line: canonical JSON (sorted keys), versioned,
/// strict on decode (unknown fields and version mismatches are
/// errors). decode(encode(m)) == m, bit-exactly for doubles.
std::string encode(const O1Report& msg);
std::string encode(const A1Message& msg);
std::string encode(const E2Report& msg);
std::string encode(const E2Control& msg);
std::string encode(const Ack& msg);

/// Fault reply a server sends before closing the session; decoding it
/// on the client raises the carried message.
std::string encode_error(const std::string& message);

enum class MessageType { kO1Report, kA1Policy, kE2Report, kE2Control, kAck };

/// Parses the envelope and returns the payload type; throws on
/// malformed lines, schema violations (naming the field) or version
/// mismatch.
MessageType peek_type(const std::string& line);

O1Report decode_o1(const std::string& line);
A1Message decode_a1(const std::string& line);
E2Report decode_e2_report(const std::string& line);
E2Control decode_e2_control(const std::string& line);
Ack decode_ack(const std::string& line);

/// Codec-boundary guard: properness against the slot graph plus per-RU
/// PRB uniqueness and occupancy consistency. Throws on violation.
void validate_control(const E2Control& control, const SlotRadioView& view,
                      const ConflictGraph& graph);

}  // namespace dsa
