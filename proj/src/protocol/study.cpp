#include "decoynet/protocol/study.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "decoynet/protocol/survey.hpp"

namespace decoynet {

using json = nlohmann::json;

nlohmann::json to_json(const StudyConfig& c) {
  return {{"study_id", c.study_id},
          {"assignment", c.assignment == AssignmentPolicy::Fixed ? "fixed" : "round-robin"},
          {"condition", to_string(c.fixed_condition)},
          {"rounds", c.rounds_per_participant},
          {"n_machines", c.n_machines},
          {"n_honeypots", c.n_honeypots},
          {"master_seed", c.master_seed},
          {"vary_layout_by_round", c.vary_layout_by_round},
          {"engine", to_json(c.engine)}};
}

StudyConfig study_config_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("study config must be an object");
  StudyConfig c;
  c.study_id = doc.value("study_id", c.study_id);
  const auto assignment = doc.value("assignment", std::string("round-robin"));
  if (assignment == "fixed") {
    c.assignment = AssignmentPolicy::Fixed;
  } else if (assignment == "round-robin") {
    c.assignment = AssignmentPolicy::RoundRobin;
  } else {
    throw std::invalid_argument("unknown assignment policy '" + assignment + "'");
  }
  if (doc.contains("condition")) {
    const auto name = doc.at("condition").get<std::string>();
    const auto parsed = parse_condition(name);
    if (!parsed) throw std::invalid_argument("unknown condition '" + name + "'");
    c.fixed_condition = *parsed;
  }
  c.rounds_per_participant = doc.value("rounds", c.rounds_per_participant);
  c.n_machines = doc.value("n_machines", c.n_machines);
  c.n_honeypots = doc.value("n_honeypots", c.n_honeypots);
  c.master_seed = doc.value("master_seed", c.master_seed);
  c.vary_layout_by_round = doc.value("vary_layout_by_round", c.vary_layout_by_round);
  if (doc.contains("engine")) c.engine = engine_config_from_json(doc.at("engine"));

  if (c.rounds_per_participant != 2) throw std::invalid_argument("rounds per participant must be 2");
  if (c.n_machines < 1 || c.n_honeypots < 0 || c.n_honeypots > c.n_machines) {
    throw std::invalid_argument("need 1 <= n_machines and 0 <= n_honeypots <= n_machines");
  }
  if (c.study_id.empty()) throw std::invalid_argument("study_id must not be empty");
  return c;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open study config " + path.string());
  return study_config_from_json(json::parse(in));
}

std::string_view to_string(StudyErrorCode code) {
  switch (code) {
    case StudyErrorCode::MalformedMessage: return "MalformedMessage";
    case StudyErrorCode::UnknownSession: return "UnknownSession";
    case StudyErrorCode::SessionEnded: return "SessionEnded";
    case StudyErrorCode::DuplicateSession: return "DuplicateSession";
    case StudyErrorCode::ConfirmationRequired: return "ConfirmationRequired";
    case StudyErrorCode::StudyComplete: return "StudyComplete";
    case StudyErrorCode::IncompleteRequired: return "IncompleteRequired";
    case StudyErrorCode::SurveyLocked: return "SurveyLocked";
  }
  return "?";
}

StudyError::StudyError(StudyErrorCode code, const std::string& detail) : std::runtime_error(detail), code_(code) {}

StudyClock StudyClock::system() {
  const auto start = std::chrono::steady_clock::now();
  return {[start] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); },
          system_wall_clock()};
}

struct Study::Live {
  std::mutex mutex;
  SessionHandle handle;
  std::unique_ptr<LogWriter> log;
  std::unique_ptr<Recorder> recorder;
  std::optional<double> last_activity;
  bool surveyed = false;
};

namespace {

constexpr std::size_t kMaxLine = 4096;

std::string token_for(const StudyConfig& c, std::size_t participant, int round) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(derive_seed(c.master_seed, "token", participant * 16 + round)));
  return c.study_id + "-" + buf;
}

json error_response(StudyErrorCode code, const std::string& detail, std::uint64_t seq, const std::string& session) {
  json out{{"type", "error"}, {"code", to_string(code)}, {"detail", detail}, {"seq", seq}};
  if (!session.empty()) out["session"] = session;
  return out;
}

bool is_feedback(const CommandOutcome& o) {
  return std::holds_alternative<TransferResult>(o.payload) || std::holds_alternative<FeedbackReport>(o.payload);
}

const std::string& required_string(const json& message, const char* key) {
  if (!message.contains(key) || !message[key].is_string()) {
    throw StudyError(StudyErrorCode::MalformedMessage, std::string("missing string field '") + key + "'");
  }
  return message[key].get_ref<const std::string&>();
}

}  // namespace

Study::Study(StudyConfig config, std::optional<std::filesystem::path> log_dir, StudyClock clock)
    : config_(std::move(config)), log_dir_(std::move(log_dir)), clock_(std::move(clock)) {
  if (log_dir_) {
    std::filesystem::create_directories(*log_dir_);
    audit_log_ = std::make_unique<LogWriter>(*log_dir_ / "audit.jsonl");
    index_log_ = std::make_unique<LogWriter>(*log_dir_ / "index.jsonl");
  }
}

Study::~Study() = default;

SessionHandle Study::open_session(const std::string& participant_id, bool confirm) {
  if (participant_id.empty() || participant_id.size() > 128) {
    throw StudyError(StudyErrorCode::MalformedMessage, "participant id must be 1-128 characters");
  }
  std::lock_guard lock(mutex_);
  auto [it, fresh] = participants_.try_emplace(participant_id);
  auto& p = it->second;
  if (fresh) {
    p.index = participants_.size() - 1;
    p.condition = config_.assignment == AssignmentPolicy::Fixed ? config_.fixed_condition
                                                                : kAllConditions[p.index % std::size(kAllConditions)];
  } else {
    auto& last = *sessions_.at(p.sessions.back());
    bool ended;
    {
      std::lock_guard session_lock(last.mutex);
      ended = last.recorder->session().ended();
    }
    if (!ended) throw StudyError(StudyErrorCode::DuplicateSession, participant_id + " already has a live session");
    if (static_cast<int>(p.sessions.size()) >= config_.rounds_per_participant) {
      throw StudyError(StudyErrorCode::StudyComplete, participant_id + " has finished every round");
    }
    if (!confirm) {
      throw StudyError(StudyErrorCode::ConfirmationRequired, "round " + std::to_string(p.sessions.size()) +
                                                                 " is over; send open with confirm=true to continue");
    }
  }

  const int round = static_cast<int>(p.sessions.size()) + 1;
  SessionHeader header;
  header.session_id = token_for(config_, p.index, round);
  header.study_id = config_.study_id;
  header.participant_id = participant_id;
  header.scenario = {p.condition, round, config_.n_machines, config_.n_honeypots,
                     derive_seed(config_.master_seed, "participant-scenario", p.index), config_.vary_layout_by_round,
                     PortConfig{}};
  header.session_seed = derive_seed(config_.master_seed, "participant-session", p.index * 16 + round);
  header.engine = config_.engine;

  auto live = std::make_shared<Live>();
  live->handle = {header.session_id, participant_id, p.condition, round};
  if (log_dir_) live->log = std::make_unique<LogWriter>(*log_dir_ / (header.session_id + ".jsonl"));
  Recorder::Sink sink;
  if (live->log) sink = [w = live->log.get()](const EventRecord& r) { w->append(r); };
  live->recorder = std::make_unique<Recorder>(header, clock_.wall, std::move(sink));

  if (index_log_) {
    index_log_->append(json{{"session", header.session_id},
                            {"participant", participant_id},
                            {"condition", to_string(p.condition)},
                            {"round", round},
                            {"file", header.session_id + ".jsonl"},
                            {"opened_at", format_wall_time(clock_.wall())}});
  }
  p.sessions.push_back(header.session_id);
  sessions_.emplace(header.session_id, live);
  return live->handle;
}

std::shared_ptr<Study::Live> Study::find(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw StudyError(StudyErrorCode::UnknownSession, "no session '" + session_id + "'");
  return it->second;
}

json Study::audit_error(StudyErrorCode code, const std::string& detail, const json& raw) {
  std::lock_guard lock(mutex_);
  EventRecord r;
  r.seq = audit_.size();
  r.round_index = 0;
  r.kind = RecordKind::Audit;
  r.command = raw.is_string() ? raw.get<std::string>() : raw.dump();
  r.data = {{"code", to_string(code)}, {"detail", detail}};
  r.wall_time = format_wall_time(clock_.wall());
  audit_.push_back(r);
  if (audit_log_) audit_log_->append(r);
  return error_response(code, detail, r.seq, {});
}

json Study::on_open(const json& message) {
  const auto& participant = required_string(message, "participant");
  bool confirm = false;
  if (message.contains("confirm")) {
    if (!message["confirm"].is_boolean()) throw StudyError(StudyErrorCode::MalformedMessage, "confirm must be boolean");
    confirm = message["confirm"].get<bool>();
  }
  const auto handle = open_session(participant, confirm);
  const auto live = find(handle.session_id);
  std::lock_guard lock(live->mutex);
  const auto& s = live->recorder->session();
  return {{"type", "open"},
          {"session", handle.session_id},
          {"participant", handle.participant_id},
          {"condition", to_string(handle.condition)},
          {"round", handle.round_index},
          {"time_remaining_s", s.time_remaining()},
          {"seq", live->recorder->records().back().seq}};
}

json Study::on_command(const json& message) {
  const auto& id = required_string(message, "session");
  const auto& line = required_string(message, "line");
  if (line.size() > kMaxLine) throw StudyError(StudyErrorCode::MalformedMessage, "command line too long");
  const auto live = find(id);

  std::lock_guard lock(live->mutex);
  auto& rec = *live->recorder;
  if (rec.session().ended()) {
    const auto& r = rec.audit(message.dump(), {{"code", "SessionEnded"}, {"detail", "session has ended"}});
    return error_response(StudyErrorCode::SessionEnded, "session has ended", r.seq, id);
  }

  const double now = clock_.monotonic_s();
  const double elapsed = live->last_activity ? std::max(0.0, now - *live->last_activity) : 0.0;
  const auto outcome = rec.execute_line(line, elapsed);
  live->last_activity = clock_.monotonic_s();

  const auto& s = rec.session();
  json out{{"type", outcome.session_ended ? "end" : is_feedback(outcome) ? "feedback" : "result"},
           {"session", id},
           {"seq", rec.records().back().seq},
           {"outcome", to_json(outcome)},
           {"time_remaining_s", s.time_remaining()}};
  if (outcome.session_ended || is_feedback(outcome)) out["score"] = s.score();
  if (outcome.session_ended) {
    out["round"] = live->handle.round_index;
    if (live->handle.round_index < config_.rounds_per_participant) {
      out["next"] = "confirm_round";
      out["prompt"] = "Round " + std::to_string(live->handle.round_index) +
                      " is over. Send open with confirm=true to start the next round.";
    } else {
      out["next"] = "survey";
      out["survey"] = survey_to_json();
    }
  }
  return out;
}

json Study::on_survey(const json& message) {
  const auto& id = required_string(message, "session");
  const auto live = find(id);
  std::lock_guard lock(live->mutex);
  auto& rec = *live->recorder;

  auto refuse = [&](StudyErrorCode code, const std::string& detail, const json& extra = json::array()) {
    const auto& r = rec.audit(message.dump(), {{"code", to_string(code)}, {"detail", detail}, {"problems", extra}});
    auto out = error_response(code, detail, r.seq, id);
    if (!extra.empty()) out["problems"] = extra;
    return out;
  };

  if (live->handle.round_index != config_.rounds_per_participant || !rec.session().ended()) {
    return refuse(StudyErrorCode::SurveyLocked, "the survey opens after the final round ends");
  }
  if (live->surveyed) return refuse(StudyErrorCode::SurveyLocked, "survey already submitted");
  const json answers = message.contains("answers") ? message["answers"] : json();
  const auto problems = validate_survey(answers);
  if (!problems.empty()) return refuse(StudyErrorCode::IncompleteRequired, "survey answers rejected", problems);

  const auto& r = rec.survey(answers);
  live->surveyed = true;
  return {{"type", "survey"}, {"session", id}, {"seq", r.seq}, {"status", "recorded"}};
}

json Study::handle_message(const json& message) {
  try {
    if (!message.is_object()) throw StudyError(StudyErrorCode::MalformedMessage, "message must be an object");
    const auto& type = required_string(message, "type");
    if (type == "open") return on_open(message);
    if (type == "command") return on_command(message);
    if (type == "survey") return on_survey(message);
    throw StudyError(StudyErrorCode::MalformedMessage, "unknown message type '" + type + "'");
  } catch (const StudyError& e) {
    return audit_error(e.code(), e.what(), message);
  } catch (const std::exception& e) {
    return audit_error(StudyErrorCode::MalformedMessage, e.what(), message);
  }
}

json Study::handle_text(std::string_view text) {
  auto doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) return audit_error(StudyErrorCode::MalformedMessage, "not valid JSON", json(std::string(text)));
  return handle_message(doc);
}

json Study::reject(const std::string& detail, std::string_view raw) {
  return audit_error(StudyErrorCode::MalformedMessage, detail, json(std::string(raw.substr(0, kMaxLine))));
}

std::vector<SessionHandle> Study::roster() const {
  std::lock_guard lock(mutex_);
  std::vector<SessionHandle> out;
  for (const auto& [_, p] : participants_) {
    for (const auto& id : p.sessions) out.push_back(sessions_.at(id)->handle);
  }
  return out;
}

std::vector<EventRecord> Study::session_records(const std::string& session_id) const {
  const auto live = find(session_id);
  std::lock_guard lock(live->mutex);
  return live->recorder->records();
}

std::vector<EventRecord> Study::audit_records() const {
  std::lock_guard lock(mutex_);
  return audit_;
}

std::size_t Study::record_count() const {
  std::vector<std::shared_ptr<Live>> all;
  std::size_t n;
  {
    std::lock_guard lock(mutex_);
    n = audit_.size();
    for (const auto& [_, live] : sessions_) all.push_back(live);
  }
  for (const auto& live : all) {
    std::lock_guard lock(live->mutex);
    n += live->recorder->records().size();
  }
  return n;
}

}  // namespace decoynet
