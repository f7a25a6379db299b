#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "decoynet/agents/observation.hpp"
#include "decoynet/scenario/rng.hpp"

namespace decoynet {

enum class PolicyKind { UniformRandom, CheckHsThreshold, FeatureHeuristic, Exhaustive };

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view text);

/// Virtual think time charged before each command.
struct TimeModel {
  double default_s = 15;
  std::map<std::string, double> per_verb;  // keyed by verb, e.g. "checkHS"

  double elapsed_for(const Command& command) const;
  bool operator==(const TimeModel&) const = default;
};

/// One weight per indicator; an observed indicator adds its weight.
struct HeuristicParams {
  double w_honeypot_ports = 1;
  double w_obsolete_os = 1;
  double w_rtt = 1;
  double w_vm = 1;
  double w_processes = 1;
  double w_folders = 1;

  double rtt_ratio_threshold = 2.0;  // machine/benchmark above this is suspicious
  int process_threshold = 5;         // fewer processes than this is suspicious
  int folder_threshold = 3;          // at least this many empty/denied folders
  double fetch_below = 3.0;          // fetch only when suspicion is lower

  std::vector<std::uint16_t> indicator_ports{2222, 4433, 5001};
  std::string obsolete_os_label = "Ubuntu 8.04 LTS (Linux 2.6.24)";

  bool operator==(const HeuristicParams&) const = default;
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::UniformRandom;
  double tau = 0.5;  // CheckHsThreshold
  HeuristicParams heuristic;
  TimeModel time;
  int max_attempts = 8;  // per machine before giving up on it

  bool operator==(const PolicySpec&) const = default;
};

nlohmann::json to_json(const PolicySpec& spec);
PolicySpec policy_spec_from_json(const nlohmann::json& doc);

/// Weighted sum over the six indicators that have been observed.
double suspicion_score(const MachineView& view, const HeuristicParams& params);

/// Machines ordered least suspicious first. Ties are broken by `rng`.
std::vector<std::string> rank_by_suspicion(const Observation& obs, const HeuristicParams& params, Rng& rng);

class Policy {
 public:
  explicit Policy(PolicySpec spec, std::uint64_t seed);
  virtual ~Policy() = default;

  /// Next command, or nothing when the policy has no further move.
  virtual std::optional<Command> next(const Observation& obs) = 0;

  const PolicySpec& spec() const { return spec_; }

 protected:
  /// Shared walk: lists and enters directories until pin.txt is found.
  /// With `full`, keeps going until every reachable directory is listed.
  std::optional<Command> explore(const FootholdView& fh, bool full) const;
  /// cd to the pin directory and copy it, or nothing if it is not known.
  std::optional<Command> fetch(const FootholdView& fh) const;
  /// Probe if needed, then one exploit attempt on `machine`.
  std::optional<Command> attack(const Observation& obs, const std::string& machine, bool with_rtt);
  bool affordable(const Observation& obs, const Command& command, double cost) const;
  std::vector<std::string> open_targets(const Observation& obs) const;

  PolicySpec spec_;
  Rng rng_;
};

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::uint64_t seed);

}  // namespace decoynet
