#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "decoynet/session/command.hpp"
#include "decoynet/session/outcome.hpp"

namespace decoynet {

/// What an attacker has learned about one machine.
struct MachineView {
  std::optional<ProbeReport> probe;  // latest probe
  std::optional<RttPair> rtt;        // latest -rtt measurement
  std::vector<double> checkhs_scores;
  int attempts = 0;
  int successes = 0;
  std::optional<bool> virtual_machine;
  std::optional<std::size_t> process_count;
  std::optional<int> suspicious_folders;  // known once every user subfolder was visited
  bool settled = false;
  bool fetched = false;
  int points = 0;

  std::vector<std::string> listed_exploits() const;
};

/// File system knowledge for the machine currently held.
struct FootholdView {
  std::string machine;
  std::string cwd = "/";
  std::map<std::string, DirListing> listings;  // by absolute path
  std::set<std::string> denied;
  std::optional<std::string> pin_dir;
};

std::string join_path(const std::string& dir, const std::string& name);

/// Accumulated from command outcomes only. Policies read this and nothing
/// else, so they cannot see ground truth.
class Observation {
 public:
  explicit Observation(double time_budget_s = 3600);

  void record(const Command& command, const CommandOutcome& outcome, double elapsed_s);

  const std::vector<std::string>& machines() const { return machines_; }
  const MachineView& view(const std::string& machine) const;
  const std::map<std::string, MachineView>& views() const { return views_; }
  const std::optional<FootholdView>& foothold() const { return foothold_; }
  const std::map<std::string, ExploitDetail>& exploit_details() const { return details_; }
  double time_remaining() const { return time_remaining_; }
  int score() const { return score_; }
  bool ended() const { return ended_; }
  std::size_t commands() const { return commands_; }
  const std::optional<ErrorReport>& last_error() const { return last_error_; }

 private:
  void update_folder_count();

  std::vector<std::string> machines_;
  std::map<std::string, MachineView> views_;
  std::optional<FootholdView> foothold_;
  std::map<std::string, ExploitDetail> details_;
  double time_remaining_;
  int score_ = 0;
  bool ended_ = false;
  std::size_t commands_ = 0;
  std::optional<ErrorReport> last_error_;
};

}  // namespace decoynet
