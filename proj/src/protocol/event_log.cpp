#include "decoynet/protocol/event_log.hpp"

#include <ctime>
#include <istream>
#include <ostream>

namespace decoynet {

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::Open: return "open";
    case RecordKind::Command: return "command";
    case RecordKind::Audit: return "audit";
    case RecordKind::Survey: return "survey";
  }
  return "?";
}

RecordKind parse_record_kind(std::string_view text) {
  for (auto k : {RecordKind::Open, RecordKind::Command, RecordKind::Audit, RecordKind::Survey}) {
    if (to_string(k) == text) return k;
  }
  throw LogError(LogErrorCode::CorruptLog, "unknown record kind '" + std::string(text) + "'");
}

std::string_view to_string(LogErrorCode code) {
  switch (code) {
    case LogErrorCode::CorruptLog: return "CorruptLog";
    case LogErrorCode::GapInLog: return "GapInLog";
    case LogErrorCode::DivergenceDetected: return "DivergenceDetected";
  }
  return "?";
}

LogError::LogError(LogErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

nlohmann::json to_json(const EventRecord& r) {
  return {{"seq", r.seq},
          {"session", r.session_id},
          {"round", r.round_index},
          {"kind", to_string(r.kind)},
          {"time_before_s", r.time_before_s},
          {"time_after_s", r.time_after_s},
          {"elapsed_s", r.elapsed_s},
          {"command", r.command},
          {"data", r.data},
          {"rng_draws", r.rng_draws},
          {"wall_time", r.wall_time}};
}

EventRecord event_record_from_json(const nlohmann::json& doc) {
  try {
    EventRecord r;
    r.seq = doc.at("seq").get<std::uint64_t>();
    r.session_id = doc.at("session").get<std::string>();
    r.round_index = doc.at("round").get<int>();
    r.kind = parse_record_kind(doc.at("kind").get<std::string>());
    r.time_before_s = doc.at("time_before_s").get<double>();
    r.time_after_s = doc.at("time_after_s").get<double>();
    r.elapsed_s = doc.at("elapsed_s").get<double>();
    r.command = doc.at("command").get<std::string>();
    r.data = doc.at("data");
    r.rng_draws = doc.at("rng_draws").get<std::uint64_t>();
    r.wall_time = doc.at("wall_time").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw LogError(LogErrorCode::CorruptLog, e.what());
  }
}

std::string serialize_record(const EventRecord& record) { return to_json(record).dump(); }

EventRecord parse_record(std::string_view line) {
  auto doc = nlohmann::json::parse(line, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw LogError(LogErrorCode::CorruptLog, "line is not a JSON object");
  return event_record_from_json(doc);
}

std::vector<EventRecord> read_log(std::istream& in) {
  std::vector<EventRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_record(line));
  }
  return out;
}

std::vector<EventRecord> read_log_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LogError(LogErrorCode::CorruptLog, "cannot open " + path.string());
  return read_log(in);
}

void write_log(std::ostream& out, const std::vector<EventRecord>& records) {
  for (const auto& r : records) out << serialize_record(r) << '\n';
}

WallClock system_wall_clock() {
  return [] { return std::chrono::system_clock::now(); };
}

std::string format_wall_time(std::chrono::system_clock::time_point t) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms % 1000));
  return out;
}

LogWriter::LogWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::app) {
  if (!out_) throw std::runtime_error("cannot open log file " + path.string());
}

void LogWriter::append(const EventRecord& record) { append(to_json(record)); }

void LogWriter::append(const nlohmann::json& line) {
  out_ << line.dump() << '\n';
  out_.flush();
}

}  // namespace decoynet
