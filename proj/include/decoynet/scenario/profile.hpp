#pragma once

#include <cstdint>
#include <vector>

#include "decoynet/scenario/types.hpp"

namespace decoynet {

/// Listener sets used to render the "Ports & Services" feature. The two sets
/// must be disjoint.
struct PortConfig {
  std::vector<std::uint16_t> normal{22, 80, 443, 3306};
  std::vector<std::uint16_t> honeypot{2222, 4433, 5001};

  bool operator==(const PortConfig&) const = default;
};

/// Which machine kind a condition deploys for honeypots and for real machines.
MachineKind kind_for(Condition condition, bool honeypot);

/// Canonical feature vector of one of the four machine profiles.
FeatureVector profile_for(MachineKind kind, const PortConfig& ports = {});

FeatureVector profile_for(Condition condition, bool honeypot, const PortConfig& ports = {});

}  // namespace decoynet
