#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "decoynet/scenario/scenario.hpp"
#include "decoynet/session/command.hpp"
#include "decoynet/session/outcome.hpp"

namespace decoynet {

struct EngineConfig {
  double time_budget_s = 3600;
  double rtt_cost_s = 10;
  double checkhs_cost_s = 10;
  double checkhs_reliability = 0.5;
  double benchmark_rtt_ms = 0.2;
  /// Multiplicative RTT jitter half-width; 0 reports exact profile latency.
  double rtt_jitter = 0.0;
  std::string exfil_address = "172.22.31.31";
  std::string obsolete_os_label = "Ubuntu 8.04 LTS (Linux 2.6.24)";
  std::string current_os_label = "Ubuntu 22.04 LTS (Linux 5.15)";
  int fetch_points = 100;
  int access_points = 30;

  bool operator==(const EngineConfig&) const = default;
};

nlohmann::json to_json(const EngineConfig& config);
EngineConfig engine_config_from_json(const nlohmann::json& doc);

enum class Phase { Recon, Foothold, Ended };

enum class MachineOutcome { NotTouched, Abandoned, ExploitedNoFetch, ExploitedFetched };

std::string_view to_string(Phase phase);
std::string_view to_string(MachineOutcome outcome);

struct Settlement {
  std::string machine;
  int points = 0;
  bool operator==(const Settlement&) const = default;
};

struct TimeState {
  double time_remaining_s = 0;
  bool session_ended = false;
};

/// One attacker working through a scenario. Strictly sequential: callers
/// must not run two commands on the same session concurrently. The object
/// is movable, so a session can change threads between commands.
///
/// Scoring: a machine settles once. Logging out without the file settles
/// +/-30 (real/honeypot); copying pin.txt settles +/-100 and makes the later
/// logout worth nothing. Re-exploiting a settled machine is allowed but pays
/// nothing.
class Session {
 public:
  Session(std::shared_ptr<const NetworkScenario> scenario, std::uint64_t seed, EngineConfig config = {},
          std::string session_id = {});

  /// Charges `elapsed_s` of think time, then runs the command. Never throws
  /// for command-level failures; they come back as an ErrorReport payload.
  CommandOutcome execute(const Command& command, double elapsed_s = 0);
  CommandOutcome execute_line(std::string_view line, double elapsed_s = 0);

  // Typed operations. These throw CommandError on failure.
  MachineList nmap_list() const;
  ProbeReport nmap_probe(std::string_view machine, bool rtt);
  DeceptionScore check_hs(std::string_view machine);
  ExploitDetail info_exploit(std::string_view exploit) const;
  ExploitResult use_exploit(std::string_view exploit, std::string_view machine);
  DirListing ls() const;
  ChangedDir cd(std::string_view path);
  ProcessList ps() const;
  VmVerdict check_vm() const;
  TransferResult scp(std::string_view file, std::string_view address);
  FeedbackReport logout();

  /// Deducts time, floored at zero. Reaching zero ends the session and
  /// settles an open foothold as a logout without fetch.
  TimeState charge_time(double cost_s);

  const std::string& id() const { return id_; }
  const NetworkScenario& scenario() const { return *scenario_; }
  std::shared_ptr<const NetworkScenario> scenario_ptr() const { return scenario_; }
  const EngineConfig& config() const { return config_; }
  std::uint64_t seed() const { return seed_; }

  Phase phase() const { return phase_; }
  bool ended() const { return phase_ == Phase::Ended; }
  const std::optional<std::string>& current_machine() const { return current_; }
  std::string working_directory() const;
  double time_remaining() const { return time_remaining_; }
  int score() const { return score_; }
  MachineOutcome outcome(std::string_view machine) const;
  const std::vector<Settlement>& ledger() const { return ledger_; }
  std::uint64_t rng_draws() const { return rng_.draws(); }
  bool all_settled() const;

 private:
  const MachineRecord& machine(std::string_view name) const;
  void require_phase(Phase wanted, std::string_view verb) const;
  void require_time(double cost, std::string_view what) const;
  int settle(const MachineRecord& m, int magnitude, MachineOutcome as);
  void end_session();
  Payload dispatch(const Command& command);
  CommandOutcome run(const Command* command, const ErrorReport* rejected, double elapsed_s);

  std::shared_ptr<const NetworkScenario> scenario_;
  std::uint64_t seed_;
  EngineConfig config_;
  std::string id_;
  Rng rng_;

  Phase phase_ = Phase::Recon;
  std::optional<std::string> current_;
  std::size_t cwd_ = FileTree::root();
  double time_remaining_;
  int score_ = 0;
  std::map<std::string, MachineOutcome, std::less<>> outcomes_;
  std::vector<Settlement> ledger_;
  std::optional<TimeExpired> expiry_;
  double last_cost_ = 0;
};

}  // namespace decoynet
