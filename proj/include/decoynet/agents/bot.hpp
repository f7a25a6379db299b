#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "decoynet/agents/policy.hpp"
#include "decoynet/protocol/event_log.hpp"
#include "decoynet/protocol/recorder.hpp"

namespace decoynet {

struct BotRun {
  SessionHeader header;
  std::vector<EventRecord> records;
  std::vector<std::string> commands;
  int final_score = 0;
  double time_remaining_s = 0;
  bool session_ended = false;
  std::string stop_reason;  // "time", "all-settled" or "policy-exhausted"
};

class BotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Drives one session with `policy` on a virtual clock. The session seed
/// and the policy seed are both derived from `seed`. Throws BotError when
/// the engine rejects a command for a reason other than AccessDenied or
/// InsufficientTime.
BotRun run_bot(const PolicySpec& policy, const ScenarioSpec& scenario, std::uint64_t seed,
               const EngineConfig& engine = {});

}  // namespace decoynet
