#pragma once

#include <memory>

#include "decoynet/agents/observation.hpp"
#include "decoynet/session/session.hpp"

namespace decoynet::testing {

/// Probes every machine with -rtt, then takes a foothold on each and runs
/// ps, checkVM and a full folder walk. Everything goes through the engine,
/// so the result is exactly what an attacker could know.
inline Observation observe_everything(std::shared_ptr<const NetworkScenario> scenario, std::uint64_t seed) {
  EngineConfig config;
  config.time_budget_s = 1e9;
  Session s(scenario, seed, config);
  Observation obs(config.time_budget_s);
  auto run = [&](const Command& c) { obs.record(c, s.execute(c), 0); };

  run(cmd::NmapList{});
  for (const auto& name : obs.machines()) run(cmd::NmapProbe{name, true});
  for (const auto& name : obs.machines()) {
    const auto exploit = obs.view(name).listed_exploits().front();
    while (!obs.foothold()) run(cmd::UseExploit{exploit, name});
    run(cmd::Ps{});
    run(cmd::CheckVm{});
    run(cmd::Ls{});
    for (bool moved = true; moved;) {
      moved = false;
      const auto& fh = *obs.foothold();
      for (const auto& [dir, listing] : fh.listings) {
        for (const auto& e : listing.entries) {
          const auto path = join_path(dir, e.name);
          if (!e.directory || fh.listings.contains(path) || fh.denied.contains(path)) continue;
          run(cmd::Cd{path});
          if (obs.foothold()->cwd == path) run(cmd::Ls{});
          moved = true;
          break;
        }
        if (moved) break;
      }
    }
    run(cmd::Logout{});
  }
  return obs;
}

}  // namespace decoynet::testing
