#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "decoynet/agents/bot.hpp"
#include "decoynet/analytics/metrics.hpp"
#include "decoynet/analytics/report.hpp"
#include "decoynet/protocol/replay.hpp"
#include "decoynet/protocol/study.hpp"
#include "decoynet/protocol/tcp_server.hpp"
#include "decoynet/scenario/scenario_json.hpp"

using namespace decoynet;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

Condition condition_arg(const std::string& text) {
  if (auto c = parse_condition(text)) return *c;
  throw CLI::ValidationError("--condition", "unknown condition '" + text + "'");
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return json::parse(in);
}

PolicySpec load_policy(const std::string& arg) {
  if (fs::exists(arg)) return policy_spec_from_json(read_json_file(arg));
  PolicySpec spec;
  spec.kind = parse_policy_kind(arg);
  return spec;
}

struct ScenarioArgs {
  std::string condition = "default";
  int n = 40;
  int k = 20;
  int round = 1;
  std::uint64_t seed = 1;
};

void add_scenario_options(CLI::App* app, ScenarioArgs& a) {
  app->add_option("--condition", a.condition, "default | concealed-honeypot | concealed-honeypot-real")
      ->capture_default_str();
  app->add_option("--machines,-n", a.n, "machines in the network")->capture_default_str();
  app->add_option("--honeypots,-k", a.k, "honeypots among them")->capture_default_str();
  app->add_option("--round", a.round, "round index (1 or 2)")->capture_default_str();
  app->add_option("--seed", a.seed, "scenario seed")->capture_default_str();
}

ScenarioSpec to_spec(const ScenarioArgs& a) {
  ScenarioSpec s;
  s.condition = condition_arg(a.condition);
  s.n_machines = a.n;
  s.n_honeypots = a.k;
  s.round_index = a.round;
  s.seed = a.seed;
  return s;
}

int cmd_scenario_gen(const ScenarioArgs& a, const std::string& out) {
  const auto doc = to_json(build_scenario(to_spec(a))).dump(2);
  if (out.empty() || out == "-") {
    std::cout << doc << "\n";
  } else {
    std::ofstream(out) << doc << "\n";
  }
  return 0;
}

int cmd_serve(const std::string& study_path, std::string listen, std::string log_dir) {
  auto config = study_path.empty() ? StudyConfig{} : load_study_config(study_path);
  if (listen.empty()) listen = env_or("DECOYNET_LISTEN", "127.0.0.1:7878");
  if (log_dir.empty()) log_dir = env_or("DECOYNET_LOG_DIR", "logs");

  // Block termination signals before any thread starts so that only the
  // sigwait below sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Study study(config, fs::path(log_dir));
  TcpServer server(study, parse_listen_address(listen));
  server.start();
  std::cerr << "study " << config.study_id << " listening on " << listen.substr(0, listen.rfind(':')) << ":"
            << server.port() << ", logs in " << log_dir << "\n";

  int sig = 0;
  sigwait(&signals, &sig);
  std::cerr << "signal " << sig << ", shutting down\n";
  server.stop();
  return 0;
}

int cmd_simulate(const std::string& policy_arg, const ScenarioArgs& a, int runs, std::uint64_t seed,
                 const std::string& out, int jobs) {
  const auto policy = load_policy(policy_arg);
  const auto base = to_spec(a);
  fs::create_directories(out);

  std::vector<json> manifest(static_cast<std::size_t>(runs));
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::string first_error;

  auto worker = [&] {
    for (int i = next++; i < runs; i = next++) {
      auto spec = base;
      spec.seed = derive_seed(seed, "simulate-scenario", static_cast<std::uint64_t>(i));
      const auto run_seed = derive_seed(seed, "simulate-run", static_cast<std::uint64_t>(i));
      try {
        const auto run = run_bot(policy, spec, run_seed);
        const auto file = run.header.session_id + ".jsonl";
        std::ofstream log(fs::path(out) / file);
        write_log(log, run.records);
        manifest[static_cast<std::size_t>(i)] = {{"run", i},
                                                 {"file", file},
                                                 {"session", run.header.session_id},
                                                 {"scenario_seed", spec.seed},
                                                 {"run_seed", run_seed},
                                                 {"commands", run.commands.size()},
                                                 {"final_score", run.final_score},
                                                 {"time_remaining_s", run.time_remaining_s},
                                                 {"stop_reason", run.stop_reason}};
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mutex);
        if (first_error.empty()) first_error = "run " + std::to_string(i) + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (!first_error.empty()) throw std::runtime_error(first_error);

  json doc{{"policy", to_json(policy)},
           {"scenario", to_json(base)},
           {"master_seed", seed},
           {"runs", json(manifest)}};
  std::ofstream(fs::path(out) / "manifest.json") << doc.dump(2) << "\n";
  std::cerr << runs << " runs written to " << out << "\n";
  return 0;
}

int cmd_analyze(const std::string& logs, const std::string& out) {
  std::vector<SessionMetrics> sessions;
  for (const auto& path : find_session_logs(logs)) {
    try {
      sessions.push_back(compute_metrics(read_log_file(path)));
    } catch (const LogError& e) {
      std::cerr << path.filename().string() << ": " << to_string(e.code()) << ": " << e.what() << "\n";
      return 2;
    }
  }
  if (sessions.empty()) {
    std::cerr << "no session logs in " << logs << "\n";
    return 2;
  }
  write_report(out, sessions);
  std::cout << "analyzed " << sessions.size() << " sessions, report in " << out << "\n";
  return 0;
}

int cmd_replay(const std::string& path) {
  try {
    const auto records = read_log_file(path);
    const auto session = replay_log(records);
    std::cout << "ok: " << records.size() << " records, score " << session.score() << ", time remaining "
              << session.time_remaining() << " s\n";
    return 0;
  } catch (const LogError& e) {
    std::cout << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
}

int cmd_play(const ScenarioArgs& a, std::uint64_t session_seed) {
  Session session(make_scenario(to_spec(a)), session_seed);
  std::cout << "time remaining " << session.time_remaining() << " s; type 'help' for commands\n";
  std::string line;
  while (!session.ended() && std::cout << "> " << std::flush && std::getline(std::cin, line)) {
    if (line.empty()) continue;
    const auto outcome = session.execute_line(line);
    std::cout << outcome.text << "\n";
  }
  std::cout << "final score " << session.score() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decoynet: honeypot deception testbed"};
  app.require_subcommand(1);

  auto* scenario = app.add_subcommand("scenario", "scenario tools");
  scenario->require_subcommand(1);
  auto* gen = scenario->add_subcommand("gen", "print a generated scenario as JSON");
  ScenarioArgs gen_args;
  std::string gen_out;
  add_scenario_options(gen, gen_args);
  gen->add_option("--out,-o", gen_out, "output file (default stdout)");

  auto* serve = app.add_subcommand("serve", "run the study server");
  std::string study_path, listen, log_dir;
  serve->add_option("--study", study_path, "study config JSON");
  serve->add_option("--listen", listen, "host:port (env DECOYNET_LISTEN, default 127.0.0.1:7878)");
  serve->add_option("--log-dir", log_dir, "event log directory (env DECOYNET_LOG_DIR, default ./logs)");

  auto* simulate = app.add_subcommand("simulate", "run scripted attackers and write their logs");
  std::string policy_arg;
  ScenarioArgs sim_args;
  int runs = 100, jobs = 1;
  std::string sim_out;
  simulate->add_option("--policy", policy_arg, "policy spec JSON file, or a policy name")->required();
  add_scenario_options(simulate, sim_args);
  simulate->add_option("--runs", runs, "number of runs")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--out,-o", sim_out, "output directory")->required();
  simulate->add_option("--jobs,-j", jobs, "parallel runs")->capture_default_str();
  // Here --seed is the sweep seed; each run derives its scenario and engine seeds from it.
  simulate->get_option("--seed")->description("sweep seed");

  auto* analyze = app.add_subcommand("analyze", "compute metrics and ANOVA from session logs");
  std::string logs, report_out;
  analyze->add_option("--logs", logs, "directory of session logs")->required()->check(CLI::ExistingDirectory);
  analyze->add_option("--out,-o", report_out, "report directory")->required();

  auto* replay = app.add_subcommand("replay", "verify that a session log replays");
  std::string replay_path;
  replay->add_option("log", replay_path, "session log (.jsonl)")->required()->check(CLI::ExistingFile);

  auto* play = app.add_subcommand("play", "play one session locally on stdin");
  ScenarioArgs play_args;
  std::uint64_t play_seed = 1;
  add_scenario_options(play, play_args);
  play->add_option("--session-seed", play_seed, "engine seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_scenario_gen(gen_args, gen_out);
    if (serve->parsed()) return cmd_serve(study_path, listen, log_dir);
    if (simulate->parsed()) return cmd_simulate(policy_arg, sim_args, runs, sim_args.seed, sim_out, jobs);
    if (analyze->parsed()) return cmd_analyze(logs, report_out);
    if (replay->parsed()) return cmd_replay(replay_path);
    if (play->parsed()) return cmd_play(play_args, play_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
