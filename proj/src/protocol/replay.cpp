#include "decoynet/protocol/replay.hpp"

#include "decoynet/protocol/recorder.hpp"

namespace decoynet {

namespace {

void diverged(const EventRecord& r, const std::string& what) {
  throw LogError(LogErrorCode::DivergenceDetected, "record " + std::to_string(r.seq) + ": " + what);
}

}  // namespace

Session replay_log(const std::vector<EventRecord>& records, const ScenarioSpec& spec, std::uint64_t session_seed,
                   const EngineConfig& config) {
  const std::string id = records.empty() ? std::string{} : records.front().session_id;
  Session session(make_scenario(spec), session_seed, config, id);

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.seq != i) {
      throw LogError(LogErrorCode::GapInLog, "expected seq " + std::to_string(i) + ", found " + std::to_string(r.seq));
    }
    if (r.session_id != id) throw LogError(LogErrorCode::CorruptLog, "record " + std::to_string(i) + " is from another session");

    if (r.kind == RecordKind::Open) {
      if (i != 0) throw LogError(LogErrorCode::CorruptLog, "open record after the start of the log");
      const auto header = session_header_from_json(r.data);
      if (header.scenario != spec || header.session_seed != session_seed || header.engine != config) {
        diverged(r, "header does not match the replay inputs");
      }
      continue;
    }
    if (r.time_before_s != session.time_remaining()) diverged(r, "clock before command");
    if (r.rng_draws < session.rng_draws()) diverged(r, "draw count went backwards");
    if (r.kind != RecordKind::Command) {
      if (r.rng_draws != session.rng_draws()) diverged(r, "draw count on a non-command record");
      continue;
    }

    const auto outcome = session.execute_line(r.command, r.elapsed_s);
    if (to_json(outcome).dump() != r.data.dump()) diverged(r, "outcome differs for '" + r.command + "'");
    if (r.time_after_s != session.time_remaining()) diverged(r, "clock after command");
    if (r.rng_draws != session.rng_draws()) diverged(r, "draw count after command");
  }
  return session;
}

Session replay_log(const std::vector<EventRecord>& records) {
  if (records.empty() || records.front().kind != RecordKind::Open) {
    throw LogError(LogErrorCode::CorruptLog, "log does not start with an open record");
  }
  const auto header = session_header_from_json(records.front().data);
  return replay_log(records, header.scenario, header.session_seed, header.engine);
}

}  // namespace decoynet
