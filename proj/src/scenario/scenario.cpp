#include "decoynet/scenario/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace decoynet {

bool MachineRecord::has_exploit(std::string_view exploit) const {
  return std::any_of(exploits.begin(), exploits.end(), [&](const ExploitInfo& e) { return e.name == exploit; });
}

NetworkScenario::NetworkScenario(ScenarioSpec spec, std::string id, std::vector<MachineRecord> machines)
    : spec_(std::move(spec)), id_(std::move(id)), machines_(std::move(machines)) {}

const MachineRecord* NetworkScenario::find(std::string_view name) const {
  for (const auto& m : machines_) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

int NetworkScenario::honeypot_count() const {
  return static_cast<int>(std::count_if(machines_.begin(), machines_.end(), [](const auto& m) { return m.honeypot(); }));
}

std::string machine_name(std::size_t index) { return "System" + std::to_string(index + 1); }

std::vector<ExploitInfo> assign_exploits(const FeatureVector& profile, Rng& rng) {
  auto pool = catalog_entries(profile.exploit_info_age);
  if (pool.empty()) throw std::logic_error("exploit catalog has no entries for this age");
  const int wanted = rng.uniform_int(2, 4);
  const auto count = std::min(pool.size(), static_cast<std::size_t>(wanted));
  std::vector<ExploitInfo> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(pool[i], pool[i + rng.uniform_index(pool.size() - i)]);
    out.push_back(*pool[i]);
  }
  return out;
}

NetworkScenario build_scenario(const ScenarioSpec& spec) {
  if (spec.n_machines < 1) throw std::invalid_argument("scenario needs at least one machine");
  if (spec.n_honeypots < 0 || spec.n_honeypots > spec.n_machines) {
    throw std::invalid_argument("honeypot count must be within [0, n_machines]");
  }
  if (spec.round_index < 1) throw std::invalid_argument("round index starts at 1");

  const std::uint64_t layout_seed =
      spec.vary_layout_by_round ? derive_seed(spec.seed, "round", static_cast<std::uint64_t>(spec.round_index))
                                : spec.seed;

  const auto n = static_cast<std::size_t>(spec.n_machines);
  std::vector<bool> honeypot(n, false);
  {
    Rng placement(derive_seed(layout_seed, "placement"));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < static_cast<std::size_t>(spec.n_honeypots); ++i) {
      std::swap(idx[i], idx[i + placement.uniform_index(n - i)]);
      honeypot[idx[i]] = true;
    }
  }

  std::vector<MachineRecord> machines;
  machines.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    MachineRecord m;
    m.name = machine_name(i);
    m.kind = kind_for(spec.condition, honeypot[i]);
    m.features = profile_for(m.kind, spec.ports);
    Rng content(derive_seed(layout_seed, "machine", i));
    m.files = generate_filesystem(m.features, content);
    m.exploits = assign_exploits(m.features, content);
    machines.push_back(std::move(m));
  }

  char id[64];
  std::snprintf(id, sizeof id, "%s-r%d-%016llx", std::string(to_string(spec.condition)).c_str(), spec.round_index,
                static_cast<unsigned long long>(spec.seed));
  return NetworkScenario(spec, id, std::move(machines));
}

std::shared_ptr<const NetworkScenario> make_scenario(const ScenarioSpec& spec) {
  return std::make_shared<const NetworkScenario>(build_scenario(spec));
}

}  // namespace decoynet
