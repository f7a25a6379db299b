#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "decoynet/protocol/event_log.hpp"
#include "decoynet/protocol/recorder.hpp"

namespace decoynet {

enum class AssignmentPolicy { Fixed, RoundRobin };

struct StudyConfig {
  std::string study_id = "study";
  AssignmentPolicy assignment = AssignmentPolicy::RoundRobin;
  Condition fixed_condition = Condition::Default;  // used by Fixed
  int rounds_per_participant = 2;
  int n_machines = 40;
  int n_honeypots = 20;
  std::uint64_t master_seed = 0;
  bool vary_layout_by_round = true;
  EngineConfig engine;

  bool operator==(const StudyConfig&) const = default;
};

nlohmann::json to_json(const StudyConfig& config);
/// Missing keys take the defaults above. Rejects rounds other than 2.
StudyConfig study_config_from_json(const nlohmann::json& doc);
StudyConfig load_study_config(const std::filesystem::path& path);

enum class StudyErrorCode {
  MalformedMessage,
  UnknownSession,
  SessionEnded,
  DuplicateSession,
  ConfirmationRequired,
  StudyComplete,
  IncompleteRequired,
  SurveyLocked,
};

std::string_view to_string(StudyErrorCode code);

class StudyError : public std::runtime_error {
 public:
  StudyError(StudyErrorCode code, const std::string& detail);
  StudyErrorCode code() const { return code_; }

 private:
  StudyErrorCode code_;
};

struct SessionHandle {
  std::string session_id;
  std::string participant_id;
  Condition condition = Condition::Default;
  int round_index = 1;

  bool operator==(const SessionHandle&) const = default;
};

/// Time sources. `monotonic_s` drives the session clocks; `wall` only
/// stamps records. Both are injectable so tests can script think time.
struct StudyClock {
  std::function<double()> monotonic_s;
  WallClock wall;

  static StudyClock system();
};

/// Multi-participant study. Thread-safe: the roster is guarded by one
/// mutex, each session by its own, so distinct sessions run in parallel
/// while commands within one session are serialized.
class Study {
 public:
  explicit Study(StudyConfig config, std::optional<std::filesystem::path> log_dir = {},
                 StudyClock clock = StudyClock::system());
  ~Study();
  Study(const Study&) = delete;
  Study& operator=(const Study&) = delete;

  /// Round 1 on first call; round 2 once round 1 has ended and `confirm` is
  /// set. Throws StudyError.
  SessionHandle open_session(const std::string& participant_id, bool confirm = false);

  /// One response per message, and exactly one appended record per
  /// response. Never throws.
  nlohmann::json handle_message(const nlohmann::json& message);
  nlohmann::json handle_text(std::string_view text);
  /// Audited MalformedMessage response for input that never parsed as a
  /// message (e.g. a broken frame).
  nlohmann::json reject(const std::string& detail, std::string_view raw);

  const StudyConfig& config() const { return config_; }
  std::vector<SessionHandle> roster() const;
  std::vector<EventRecord> session_records(const std::string& session_id) const;
  std::vector<EventRecord> audit_records() const;
  std::size_t record_count() const;

 private:
  struct Live;
  struct Participant {
    std::size_t index = 0;
    Condition condition = Condition::Default;
    std::vector<std::string> sessions;  // one per opened round
    bool surveyed = false;
  };

  std::shared_ptr<Live> find(const std::string& session_id) const;
  nlohmann::json audit_error(StudyErrorCode code, const std::string& detail, const nlohmann::json& raw);
  nlohmann::json on_open(const nlohmann::json& message);
  nlohmann::json on_command(const nlohmann::json& message);
  nlohmann::json on_survey(const nlohmann::json& message);

  StudyConfig config_;
  std::optional<std::filesystem::path> log_dir_;
  StudyClock clock_;

  mutable std::mutex mutex_;
  std::map<std::string, Participant> participants_;
  std::map<std::string, std::shared_ptr<Live>> sessions_;
  std::vector<EventRecord> audit_;
  std::unique_ptr<LogWriter> audit_log_;
  std::unique_ptr<LogWriter> index_log_;
};

}  // namespace decoynet
