#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "decoynet/scenario/catalog.hpp"
#include "decoynet/scenario/filesystem.hpp"
#include "decoynet/scenario/profile.hpp"
#include "decoynet/scenario/rng.hpp"

namespace decoynet {

struct ScenarioSpec {
  Condition condition = Condition::Default;
  int round_index = 1;
  int n_machines = 40;
  int n_honeypots = 20;
  std::uint64_t seed = 0;
  /// When false, both rounds of a participant reuse the round-1 layout.
  bool vary_layout_by_round = true;
  PortConfig ports;

  bool operator==(const ScenarioSpec&) const = default;
};

struct MachineRecord {
  std::string name;
  MachineKind kind = MachineKind::DefaultReal;
  FeatureVector features;
  FileTree files;
  std::vector<ExploitInfo> exploits;

  bool honeypot() const { return is_honeypot(kind); }
  bool has_exploit(std::string_view exploit) const;
  bool operator==(const MachineRecord&) const = default;
};

/// Immutable once built; share it read-only between sessions.
class NetworkScenario {
 public:
  NetworkScenario(ScenarioSpec spec, std::string id, std::vector<MachineRecord> machines);

  const ScenarioSpec& spec() const { return spec_; }
  const std::string& id() const { return id_; }
  const std::vector<MachineRecord>& machines() const { return machines_; }
  const MachineRecord* find(std::string_view name) const;
  int honeypot_count() const;

  bool operator==(const NetworkScenario&) const = default;

 private:
  ScenarioSpec spec_;
  std::string id_;
  std::vector<MachineRecord> machines_;
};

/// Picks 2-4 exploits from the catalog entries matching the profile's
/// exploit-info age, without replacement.
std::vector<ExploitInfo> assign_exploits(const FeatureVector& profile, Rng& rng);

/// Throws std::invalid_argument when n_honeypots is outside [0, n_machines]
/// or n_machines < 1.
NetworkScenario build_scenario(const ScenarioSpec& spec);

std::shared_ptr<const NetworkScenario> make_scenario(const ScenarioSpec& spec);

std::string machine_name(std::size_t index);

}  // namespace decoynet
