#pragma once

#include <cstdint>
#include <vector>

#include "decoynet/protocol/event_log.hpp"
#include "decoynet/session/session.hpp"

namespace decoynet {

/// Re-executes every Command record against a fresh engine and checks the
/// recomputed outcome, clock and draw count against the log.
///
/// Throws LogError: GapInLog when sequence numbers skip, DivergenceDetected
/// when anything recomputed differs from what was logged, CorruptLog when
/// records are structurally wrong (mixed sessions, missing header).
Session replay_log(const std::vector<EventRecord>& records, const ScenarioSpec& spec, std::uint64_t session_seed,
                   const EngineConfig& config = {});

/// Takes the replay inputs from the leading Open record.
Session replay_log(const std::vector<EventRecord>& records);

}  // namespace decoynet
