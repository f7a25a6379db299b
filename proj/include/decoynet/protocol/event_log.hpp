#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace decoynet {

enum class RecordKind {
  Open,     // session header; data holds the replay inputs
  Command,  // one engine command; data holds the CommandOutcome
  Audit,    // rejected message; no engine state touched
  Survey,   // post-experiment answers
};

std::string_view to_string(RecordKind kind);
RecordKind parse_record_kind(std::string_view text);

struct EventRecord {
  std::uint64_t seq = 0;
  std::string session_id;
  int round_index = 1;
  RecordKind kind = RecordKind::Command;
  double time_before_s = 0;
  double time_after_s = 0;
  double elapsed_s = 0;
  std::string command;
  nlohmann::json data;
  std::uint64_t rng_draws = 0;
  std::string wall_time;

  bool operator==(const EventRecord&) const = default;
};

enum class LogErrorCode { CorruptLog, GapInLog, DivergenceDetected };

std::string_view to_string(LogErrorCode code);

class LogError : public std::runtime_error {
 public:
  LogError(LogErrorCode code, const std::string& detail);
  LogErrorCode code() const { return code_; }

 private:
  LogErrorCode code_;
};

nlohmann::json to_json(const EventRecord& record);
EventRecord event_record_from_json(const nlohmann::json& doc);

/// One line, no trailing newline.
std::string serialize_record(const EventRecord& record);
EventRecord parse_record(std::string_view line);

std::vector<EventRecord> read_log(std::istream& in);
std::vector<EventRecord> read_log_file(const std::filesystem::path& path);
void write_log(std::ostream& out, const std::vector<EventRecord>& records);

using WallClock = std::function<std::chrono::system_clock::time_point()>;
WallClock system_wall_clock();
/// ISO-8601 UTC with milliseconds.
std::string format_wall_time(std::chrono::system_clock::time_point t);

/// Append-only JSON-lines file. Every append is flushed before returning.
class LogWriter {
 public:
  explicit LogWriter(const std::filesystem::path& path);
  void append(const EventRecord& record);
  void append(const nlohmann::json& line);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace decoynet
