#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "decoynet/protocol/event_log.hpp"
#include "decoynet/session/session.hpp"

namespace decoynet {

/// Everything replay needs to rebuild a session. Stored as the data of the
/// Open record.
struct SessionHeader {
  std::string session_id;
  std::string study_id;
  std::string participant_id;
  ScenarioSpec scenario;
  std::uint64_t session_seed = 0;
  EngineConfig engine;

  bool operator==(const SessionHeader&) const = default;
};

nlohmann::json to_json(const SessionHeader& header);
SessionHeader session_header_from_json(const nlohmann::json& doc);

/// A session plus its event stream. Each call appends exactly one record;
/// the optional sink sees records as they are made (used for log files).
class Recorder {
 public:
  using Sink = std::function<void(const EventRecord&)>;

  explicit Recorder(SessionHeader header, WallClock clock = system_wall_clock(), Sink sink = {});

  CommandOutcome execute_line(std::string_view line, double elapsed_s);
  const EventRecord& audit(std::string_view raw, const nlohmann::json& detail);
  const EventRecord& survey(const nlohmann::json& answers);

  const SessionHeader& header() const { return header_; }
  const Session& session() const { return session_; }
  const std::vector<EventRecord>& records() const { return records_; }

 private:
  EventRecord next(RecordKind kind);
  const EventRecord& push(EventRecord record);

  SessionHeader header_;
  Session session_;
  WallClock clock_;
  Sink sink_;
  std::vector<EventRecord> records_;
};

}  // namespace decoynet
