#include "decoynet/agents/bot.hpp"

#include <chrono>
#include <cstdio>

namespace decoynet {

BotRun run_bot(const PolicySpec& policy_spec, const ScenarioSpec& scenario, std::uint64_t seed,
               const EngineConfig& engine) {
  char id[96];
  std::snprintf(id, sizeof id, "bot-%s-%s-%016llx", std::string(to_string(policy_spec.kind)).c_str(),
                std::string(to_string(scenario.condition)).c_str(), static_cast<unsigned long long>(seed));

  SessionHeader header;
  header.session_id = id;
  header.study_id = "simulate";
  header.participant_id = std::string(to_string(policy_spec.kind));
  header.scenario = scenario;
  header.session_seed = derive_seed(seed, "bot-session");
  header.engine = engine;

  // Wall stamps follow the virtual clock so identical runs give identical logs.
  double virtual_now = 0;
  Recorder recorder(header, [&virtual_now] {
    return std::chrono::system_clock::time_point(
        std::chrono::duration_cast<std::chrono::system_clock::duration>(std::chrono::duration<double>(virtual_now)));
  });

  auto policy = make_policy(policy_spec, derive_seed(seed, "bot-policy"));
  Observation obs(engine.time_budget_s);
  BotRun run;
  run.header = header;

  while (!recorder.session().ended()) {
    const auto command = policy->next(obs);
    if (!command) {
      run.stop_reason = "policy-exhausted";
      break;
    }
    const double elapsed = policy_spec.time.elapsed_for(*command);
    const auto line = render_command(*command);
    virtual_now += elapsed;
    const auto outcome = recorder.execute_line(line, elapsed);
    virtual_now += outcome.time_charged_s;
    obs.record(*command, outcome, elapsed);
    run.commands.push_back(line);

    if (const auto* err = outcome.error()) {
      if (err->code != ErrorCode::AccessDenied && err->code != ErrorCode::InsufficientTime) {
        throw BotError(std::string(to_string(policy_spec.kind)) + " issued '" + line + "' after " +
                       std::to_string(run.commands.size() - 1) + " commands: " + outcome.text);
      }
    }
  }

  const auto& s = recorder.session();
  if (run.stop_reason.empty()) run.stop_reason = s.time_remaining() <= 0 ? "time" : "all-settled";
  run.records = recorder.records();
  run.final_score = s.score();
  run.time_remaining_s = s.time_remaining();
  run.session_ended = s.ended();
  return run;
}

}  // namespace decoynet
