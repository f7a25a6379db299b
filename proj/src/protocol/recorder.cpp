#include "decoynet/protocol/recorder.hpp"

#include "decoynet/scenario/scenario_json.hpp"

namespace decoynet {

nlohmann::json to_json(const SessionHeader& h) {
  return {{"session", h.session_id},     {"study", h.study_id},
          {"participant", h.participant_id}, {"scenario", to_json(h.scenario)},
          {"session_seed", h.session_seed}, {"engine", to_json(h.engine)}};
}

SessionHeader session_header_from_json(const nlohmann::json& doc) {
  try {
    SessionHeader h;
    h.session_id = doc.at("session").get<std::string>();
    h.study_id = doc.at("study").get<std::string>();
    h.participant_id = doc.at("participant").get<std::string>();
    h.scenario = scenario_spec_from_json(doc.at("scenario"));
    h.session_seed = doc.at("session_seed").get<std::uint64_t>();
    h.engine = engine_config_from_json(doc.at("engine"));
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw LogError(LogErrorCode::CorruptLog, std::string("bad session header: ") + e.what());
  }
}

Recorder::Recorder(SessionHeader header, WallClock clock, Sink sink)
    : header_(std::move(header)),
      session_(make_scenario(header_.scenario), header_.session_seed, header_.engine, header_.session_id),
      clock_(std::move(clock)),
      sink_(std::move(sink)) {
  auto open = next(RecordKind::Open);
  open.data = to_json(header_);
  push(std::move(open));
}

EventRecord Recorder::next(RecordKind kind) {
  EventRecord r;
  r.seq = records_.size();
  r.session_id = header_.session_id;
  r.round_index = header_.scenario.round_index;
  r.kind = kind;
  r.time_before_s = session_.time_remaining();
  r.time_after_s = session_.time_remaining();
  r.rng_draws = session_.rng_draws();
  r.wall_time = format_wall_time(clock_());
  return r;
}

const EventRecord& Recorder::push(EventRecord record) {
  records_.push_back(std::move(record));
  if (sink_) sink_(records_.back());
  return records_.back();
}

CommandOutcome Recorder::execute_line(std::string_view line, double elapsed_s) {
  auto r = next(RecordKind::Command);
  auto outcome = session_.execute_line(line, elapsed_s);
  r.command = std::string(line);
  r.elapsed_s = elapsed_s;
  r.data = to_json(outcome);
  r.time_after_s = session_.time_remaining();
  r.rng_draws = session_.rng_draws();
  push(std::move(r));
  return outcome;
}

const EventRecord& Recorder::audit(std::string_view raw, const nlohmann::json& detail) {
  auto r = next(RecordKind::Audit);
  r.command = std::string(raw);
  r.data = detail;
  return push(std::move(r));
}

const EventRecord& Recorder::survey(const nlohmann::json& answers) {
  auto r = next(RecordKind::Survey);
  r.data = answers;
  return push(std::move(r));
}

}  // namespace decoynet
