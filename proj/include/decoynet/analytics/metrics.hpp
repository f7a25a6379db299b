#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "decoynet/protocol/event_log.hpp"
#include "decoynet/scenario/scenario.hpp"
#include "decoynet/session/outcome.hpp"

namespace decoynet {

/// One successful exploitation. Times are seconds on the session clock.
struct TargetTiming {
  std::string machine;
  bool honeypot = false;
  double exploit_phase_s = 0;              // phase start to the exploiting command
  std::optional<double> exfil_phase_s;     // exploiting command to scp, if fetched

  bool operator==(const TargetTiming&) const = default;
};

struct SessionMetrics {
  std::string session_id;
  std::string participant_id;
  Condition condition = Condition::Default;
  int round_index = 1;

  int exploit_attempts = 0;
  int honeypot_attempts = 0;
  int successful_exploits = 0;
  int honeypot_successes = 0;
  int fetches = 0;
  int honeypot_fetches = 0;

  int systems_exploited = 0;  // distinct machines
  std::optional<double> honeypot_attack_proportion;
  std::optional<double> successful_honeypot_attack_proportion;
  std::optional<double> exfiltration_proportion;
  int total_score = 0;

  std::vector<TargetTiming> targets;  // in exploitation order

  /// The first two entries of `targets`, or fewer when the session has fewer.
  std::vector<TargetTiming> first_two_exploit_times() const;

  bool operator==(const SessionMetrics&) const = default;
};

nlohmann::json to_json(const TargetTiming& t);
nlohmann::json to_json(const SessionMetrics& m);

/// Folds outcomes one at a time. Used online next to a live session and
/// offline by compute_metrics.
///
/// The exploit phase of a target starts at the session start or at the most
/// recent scp, whichever is later, and ends at the successful use_exploit.
/// The exfiltration phase runs from that command to the scp on the same
/// foothold.
class MetricsAccumulator {
 public:
  MetricsAccumulator(const NetworkScenario& scenario, std::string session_id = {}, std::string participant_id = {});

  /// `clock_s` is the session clock when the command was issued, i.e. after
  /// its think time.
  void add(const CommandOutcome& outcome, double clock_s);

  SessionMetrics result() const;

 private:
  const NetworkScenario& scenario_;
  SessionMetrics m_;
  std::vector<std::string> exploited_;
  double phase_start_ = 0;
  double exploit_clock_ = 0;
  std::optional<std::size_t> open_target_;
};

/// Replays the log against a scenario rebuilt from its header, then derives
/// the metrics. Throws LogError (CorruptLog, GapInLog or DivergenceDetected).
SessionMetrics compute_metrics(const std::vector<EventRecord>& records);

}  // namespace decoynet
