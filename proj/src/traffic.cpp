#include "dsa/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dsa {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void csv_error(const std::string& path, std::size_t line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

bool parse_long(const std::string& text, long long& out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(text, &pos);
  } catch (...) {
    return false;
  }
  return pos == text.size();
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stod(text, &pos);
  } catch (...) {
    return false;
  }
  return pos == text.size();
}

// Days since civil epoch, Howard Hinnant's algorithm.
long long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097LL + static_cast<long long>(doe) - 719468LL;
}

// Accepts YYYY-MM-DDTHH:MM:SS with optional trailing 'Z'.
bool parse_iso8601(const std::string& text, long long& epoch_s) {
  int y, mo, d, h, mi, s;
  char t;
  std::string body = text;
  if (!body.empty() && body.back() == 'Z') body.pop_back();
  if (std::sscanf(body.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &t, &h, &mi, &s) != 7) {
    return false;
  }
  if (t != 'T' && t != ' ') return false;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) return false;
  epoch_s = days_from_civil(y, mo, d) * 86400LL + h * 3600LL + mi * 60LL + s;
  return true;
}

std::string iso8601(long long epoch_s) {
  long long days = epoch_s / 86400;
  long long rem = epoch_s % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  // Inverse of days_from_civil.
  long long z = days + 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long long y = static_cast<long long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ", y + (m <= 2), m, d,
                rem / 3600, (rem % 3600) / 60, rem % 60);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string TrafficTable::stamp_text(std::size_t i) const {
  if (kind == TimestampKind::kIso8601) return iso8601(stamps[i]);
  return std::to_string(stamps[i]);
}

TrafficTable ingest_traffic_csv(const std::string& path, const std::set<int>* known_rus) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open traffic CSV: " + path);

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": no samples (empty file)");
  ++line_no;
  // Tolerate a UTF-8 BOM on the header.
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line = line.substr(3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "timestamp,ru_id,load") {
    csv_error(path, line_no, "expected header 'timestamp,ru_id,load'");
  }

  struct Row {
    long long stamp;
    int ru;
    double load;
  };
  std::vector<Row> rows;
  std::optional<TimestampKind> kind;
  std::map<int, long long> last_stamp_of_ru;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) csv_error(path, line_no, "expected 3 fields");

    long long stamp;
    TimestampKind row_kind;
    if (parse_long(fields[0], stamp)) {
      row_kind = TimestampKind::kIndex;
    } else if (parse_iso8601(fields[0], stamp)) {
      row_kind = TimestampKind::kIso8601;
    } else {
      csv_error(path, line_no, "bad timestamp '" + fields[0] + "'");
    }
    if (kind && *kind != row_kind) {
      csv_error(path, line_no, "mixing integer and ISO-8601 timestamps");
    }
    kind = row_kind;

    long long ru;
    if (!parse_long(fields[1], ru)) csv_error(path, line_no, "bad ru_id '" + fields[1] + "'");
    if (known_rus != nullptr && known_rus->count(static_cast<int>(ru)) == 0) {
      csv_error(path, line_no, "unknown ru_id " + fields[1]);
    }
    double load;
    if (!parse_double(fields[2], load)) csv_error(path, line_no, "bad load '" + fields[2] + "'");
    if (load < 0.0) csv_error(path, line_no, "negative load");
    const auto prev_it = last_stamp_of_ru.find(static_cast<int>(ru));
    if (prev_it != last_stamp_of_ru.end() && stamp <= prev_it->second) {
      csv_error(path, line_no, "timestamps must be strictly increasing per RU");
    }
    last_stamp_of_ru[static_cast<int>(ru)] = stamp;
    rows.push_back({stamp, static_cast<int>(ru), load});
  }
  if (rows.empty()) throw std::runtime_error(path + ": no samples");

  TrafficTable table;
  table.kind = *kind;
  const long long step = table.kind == TimestampKind::kIso8601 ? kSampleSeconds : 1;

  // Collect the shared axis and validate spacing.
  std::map<long long, std::size_t> index_of;
  for (const Row& r : rows) index_of.emplace(r.stamp, 0);
  long long prev = 0;
  bool first = true;
  for (auto& [stamp, idx] : index_of) {
    if (!first && stamp - prev != step) {
      throw std::runtime_error(path + ": timestamps are not uniformly spaced at 15 minutes (" +
                               std::to_string(prev) + " -> " + std::to_string(stamp) + ")");
    }
    idx = table.stamps.size();
    table.stamps.push_back(stamp);
    prev = stamp;
    first = false;
  }

  std::set<int> rus;
  for (const Row& r : rows) rus.insert(r.ru);
  for (int ru : rus) {
    table.load_by_ru[ru].assign(table.stamps.size(), -1.0);
  }
  for (const Row& r : rows) {
    auto& series = table.load_by_ru[r.ru];
    series[index_of[r.stamp]] = r.load;
  }
  for (const auto& [ru, series] : table.load_by_ru) {
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (series[i] < 0.0) {
        throw std::runtime_error(path + ": ru " + std::to_string(ru) +
                                 " is missing a sample at timestamp " +
                                 std::to_string(table.stamps[i]));
      }
    }
  }
  // Per-RU rows may arrive grouped; ordering within the file is free as
  // long as the merged axis is uniform and strictly increasing, which
  // the map pass above enforces.
  return table;
}

std::vector<double> synth_diurnal(int days, double base, double amplitude, double noise_sd,
                                  Rng& rng) {
  if (days < 1) throw std::invalid_argument("synth_diurnal requires days >= 1");
  if (!(base >= amplitude) || amplitude < 0.0) {
    throw std::invalid_argument("synth_diurnal requires base >= amplitude >= 0");
  }
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(days) * kSamplesPerDay);
  for (int t = 0; t < days * kSamplesPerDay; ++t) {
    const double phase = 2.0 * kPi * static_cast<double>(t) / kSamplesPerDay - kPi / 2.0;
    const double noise = noise_sd > 0.0 ? rng.normal(0.0, noise_sd) : 0.0;
    series.push_back(std::max(0.0, base + amplitude * std::sin(phase) + noise));
  }
  return series;
}

TrafficTable synth_diurnal_table(const std::vector<int>& ru_ids, int days, double base,
                                 double amplitude, double noise_sd, std::uint64_t seed) {
  TrafficTable table;
  table.kind = TimestampKind::kIndex;
  for (int t = 0; t < days * kSamplesPerDay; ++t) table.stamps.push_back(t);
  for (int ru : ru_ids) {
    Rng rng(derive_seed(seed, {0x7261666669ULL /*traffic*/, static_cast<std::uint64_t>(ru)}));
    table.load_by_ru[ru] = synth_diurnal(days, base, amplitude, noise_sd, rng);
  }
  return table;
}

ForecastKind parse_forecast_kind(const std::string& token) {
  if (token == "seasonal-naive") return ForecastKind::kSeasonalNaive;
  if (token == "moving-average") return ForecastKind::kMovingAverage;
  if (token == "pluggable-external") return ForecastKind::kExternal;
  throw std::invalid_argument("unknown forecaster: " + token);
}

std::string to_token(ForecastKind kind) {
  switch (kind) {
    case ForecastKind::kSeasonalNaive:
      return "seasonal-naive";
    case ForecastKind::kMovingAverage:
      return "moving-average";
    case ForecastKind::kExternal:
      return "pluggable-external";
  }
  return "?";
}

ExternalPredictions load_predictions_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open predictions CSV: " + path);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty predictions file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "timestamp,ru_id,predicted_load") {
    csv_error(path, line_no, "expected header 'timestamp,ru_id,predicted_load'");
  }
  ExternalPredictions preds;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) csv_error(path, line_no, "expected 3 fields");
    long long stamp;
    if (!parse_long(fields[0], stamp) && !parse_iso8601(fields[0], stamp)) {
      csv_error(path, line_no, "bad timestamp '" + fields[0] + "'");
    }
    long long ru;
    if (!parse_long(fields[1], ru)) csv_error(path, line_no, "bad ru_id");
    double load;
    if (!parse_double(fields[2], load)) csv_error(path, line_no, "bad predicted_load");
    preds.value[{static_cast<int>(ru), stamp}] = load;
  }
  return preds;
}

double forecast(const std::vector<double>& series, const ForecastConfig& cfg, long long t) {
  if (t < 0 || t >= static_cast<long long>(series.size())) {
    throw std::runtime_error("forecast index out of range");
  }
  switch (cfg.kind) {
    case ForecastKind::kSeasonalNaive: {
      const long long target = t + cfg.horizon;
      const long long yesterday = target - kSamplesPerDay;
      if (yesterday >= 0 && yesterday <= t) {
        return series[static_cast<std::size_t>(yesterday)];
      }
      return series[static_cast<std::size_t>(t)];
    }
    case ForecastKind::kMovingAverage: {
      if (t + 1 < cfg.lookback) {
        throw std::runtime_error("insufficient history: need " + std::to_string(cfg.lookback) +
                                 " samples, have " + std::to_string(t + 1));
      }
      double sum = 0.0;
      for (long long i = t - cfg.lookback + 1; i <= t; ++i) {
        sum += series[static_cast<std::size_t>(i)];
      }
      return sum / static_cast<double>(cfg.lookback);
    }
    case ForecastKind::kExternal:
      throw std::runtime_error("external forecaster requires a predictions file");
  }
  throw std::logic_error("unreachable");
}

double forecast_ru(const TrafficTable& table, int ru, const ForecastConfig& cfg, long long t,
                   const ExternalPredictions* external) {
  const auto it = table.load_by_ru.find(ru);
  if (it == table.load_by_ru.end()) throw std::runtime_error("no series for ru");
  if (cfg.kind == ForecastKind::kExternal) {
    if (external == nullptr) throw std::runtime_error("external forecaster requires a predictions file");
    const long long target_index = t + cfg.horizon;
    if (target_index < 0 || target_index >= static_cast<long long>(table.stamps.size())) {
      throw std::runtime_error("forecast target outside series");
    }
    const long long stamp = table.stamps[static_cast<std::size_t>(target_index)];
    const auto pit = external->value.find({ru, stamp});
    if (pit == external->value.end()) {
      throw std::runtime_error("no external prediction for ru " + std::to_string(ru) +
                               " at timestamp " + std::to_string(stamp));
    }
    return pit->second;
  }
  return forecast(it->second, cfg, t);
}

double worst_case(const std::map<int, double>& predictions) {
  if (predictions.empty()) throw std::runtime_error("worst_case over an empty prediction map");
  double worst = predictions.begin()->second;
  for (const auto& [ru, value] : predictions) worst = std::max(worst, value);
  return worst;
}

std::vector<UeSpawn> load_to_population(double lambda, const std::vector<DemandMixEntry>& demands,
                                        const std::vector<ClassMixEntry>& classes, double cx,
                                        double cy, double radius_m, Rng& rng) {
  const long long count = static_cast<long long>(std::floor(lambda + 0.5));  // round half-up
  std::vector<UeSpawn> ues;
  for (long long i = 0; i < count; ++i) {
    UeSpawn ue;
    const double du = rng.uniform01();
    double acc = 0.0;
    ue.demand_bps = demands.back().demand_bps;
    for (const auto& d : demands) {
      acc += d.probability;
      if (du < acc) {
        ue.demand_bps = d.demand_bps;
        break;
      }
    }
    const double cu = rng.uniform01();
    acc = 0.0;
    ue.sla_class = classes.back().name;
    for (const auto& c : classes) {
      acc += c.probability;
      if (cu < acc) {
        ue.sla_class = c.name;
        break;
      }
    }
    // Uniform over the disc.
    const double r = radius_m * std::sqrt(rng.uniform01());
    const double phi = rng.uniform(-kPi, kPi);
    ue.x_m = cx + r * std::cos(phi);
    ue.y_m = cy + r * std::sin(phi);
    ue.heading_rad = rng.uniform(-kPi, kPi);
    ues.push_back(ue);
  }
  return ues;
}

double mse(const std::vector<double>& predicted, const std::vector<double>& actual) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("mse: length mismatch");
  }
  if (predicted.empty()) throw std::invalid_argument("mse: empty series");
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double e = predicted[i] - actual[i];
    sum += e * e;
  }
  return sum / static_cast<double>(predicted.size());
}

MinMax min_max(const std::vector<double>& values, std::size_t first, std::size_t last) {
  MinMax mm;
  if (first >= last || last > values.size()) return mm;
  mm.lo = values[first];
  mm.hi = values[first];
  for (std::size_t i = first; i < last; ++i) {
    mm.lo = std::min(mm.lo, values[i]);
    mm.hi = std::max(mm.hi, values[i]);
  }
  return mm;
}

}  // namespace dsa
