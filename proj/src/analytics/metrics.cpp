#include "decoynet/analytics/metrics.hpp"

#include <algorithm>

#include "decoynet/protocol/recorder.hpp"
#include "decoynet/protocol/replay.hpp"
#include "decoynet/scenario/scenario_json.hpp"

namespace decoynet {

using json = nlohmann::json;

std::vector<TargetTiming> SessionMetrics::first_two_exploit_times() const {
  return {targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(2, targets.size()))};
}

namespace {
json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> ratio(int num, int den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / den;
}
}  // namespace

json to_json(const TargetTiming& t) {
  return {{"machine", t.machine},
          {"honeypot", t.honeypot},
          {"exploit_phase_s", t.exploit_phase_s},
          {"exfil_phase_s", optional_json(t.exfil_phase_s)}};
}

json to_json(const SessionMetrics& m) {
  json targets = json::array();
  for (const auto& t : m.targets) targets.push_back(to_json(t));
  json first_two = json::array();
  for (const auto& t : m.first_two_exploit_times()) first_two.push_back(to_json(t));
  return {{"session", m.session_id},
          {"participant", m.participant_id},
          {"condition", to_string(m.condition)},
          {"round", m.round_index},
          {"exploit_attempts", m.exploit_attempts},
          {"honeypot_attempts", m.honeypot_attempts},
          {"successful_exploits", m.successful_exploits},
          {"honeypot_successes", m.honeypot_successes},
          {"fetches", m.fetches},
          {"honeypot_fetches", m.honeypot_fetches},
          {"systems_exploited", m.systems_exploited},
          {"honeypot_attack_proportion", optional_json(m.honeypot_attack_proportion)},
          {"successful_honeypot_attack_proportion", optional_json(m.successful_honeypot_attack_proportion)},
          {"exfiltration_proportion", optional_json(m.exfiltration_proportion)},
          {"total_score", m.total_score},
          {"targets", std::move(targets)},
          {"first_two_exploit_times", std::move(first_two)}};
}

MetricsAccumulator::MetricsAccumulator(const NetworkScenario& scenario, std::string session_id,
                                       std::string participant_id)
    : scenario_(scenario) {
  m_.session_id = std::move(session_id);
  m_.participant_id = std::move(participant_id);
  m_.condition = scenario.spec().condition;
  m_.round_index = scenario.spec().round_index;
}

void MetricsAccumulator::add(const CommandOutcome& outcome, double clock_s) {
  auto honeypot = [&](const std::string& name) {
    const auto* m = scenario_.find(name);
    return m && m->honeypot();
  };

  if (const auto* r = std::get_if<ExploitResult>(&outcome.payload)) {
    const bool hp = honeypot(r->machine);
    ++m_.exploit_attempts;
    m_.honeypot_attempts += hp;
    if (r->success) {
      ++m_.successful_exploits;
      m_.honeypot_successes += hp;
      if (std::ranges::find(exploited_, r->machine) == exploited_.end()) exploited_.push_back(r->machine);
      m_.targets.push_back({r->machine, hp, std::max(0.0, clock_s - phase_start_), std::nullopt});
      open_target_ = m_.targets.size() - 1;
      exploit_clock_ = clock_s;
    }
  } else if (const auto* t = std::get_if<TransferResult>(&outcome.payload)) {
    ++m_.fetches;
    m_.honeypot_fetches += honeypot(t->machine);
    if (open_target_) {
      auto& target = m_.targets[*open_target_];
      if (!target.exfil_phase_s) target.exfil_phase_s = std::max(0.0, clock_s - exploit_clock_);
    }
    phase_start_ = clock_s;
  } else if (std::holds_alternative<FeedbackReport>(outcome.payload) ||
             std::holds_alternative<TimeExpired>(outcome.payload)) {
    open_target_.reset();
  }
  if (const auto* f = std::get_if<FeedbackReport>(&outcome.payload)) m_.total_score = f->total_score;
  if (const auto* t = std::get_if<TransferResult>(&outcome.payload)) m_.total_score = t->total_score;
  if (const auto* e = std::get_if<TimeExpired>(&outcome.payload)) m_.total_score = e->total_score;
}

SessionMetrics MetricsAccumulator::result() const {
  auto out = m_;
  out.systems_exploited = static_cast<int>(exploited_.size());
  out.honeypot_attack_proportion = ratio(m_.honeypot_attempts, m_.exploit_attempts);
  out.successful_honeypot_attack_proportion = ratio(m_.honeypot_successes, m_.successful_exploits);
  out.exfiltration_proportion = ratio(m_.honeypot_fetches, m_.fetches);
  return out;
}

SessionMetrics compute_metrics(const std::vector<EventRecord>& records) {
  if (records.empty() || records.front().kind != RecordKind::Open) {
    throw LogError(LogErrorCode::CorruptLog, "log does not start with an open record");
  }
  replay_log(records);
  const auto header = session_header_from_json(records.front().data);
  const auto scenario = make_scenario(header.scenario);
  MetricsAccumulator acc(*scenario, header.session_id, header.participant_id);
  const double budget = header.engine.time_budget_s;
  for (const auto& r : records) {
    if (r.kind != RecordKind::Command) continue;
    acc.add(outcome_from_json(r.data), budget - r.time_before_s + r.elapsed_s);
  }
  return acc.result();
}

}  // namespace decoynet
