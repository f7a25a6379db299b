#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "decoynet/session/command.hpp"

namespace decoynet {

struct HelpListing {
  std::string text;
  bool operator==(const HelpListing&) const = default;
};

struct MachineList {
  std::vector<std::string> machines;
  bool operator==(const MachineList&) const = default;
};

struct RttPair {
  double benchmark_ms = 0;
  double machine_ms = 0;
  bool operator==(const RttPair&) const = default;
};

struct PortReport {
  std::uint16_t port = 0;
  std::string service;
  std::vector<std::string> exploits;
  bool operator==(const PortReport&) const = default;
};

struct ProbeReport {
  std::string machine;
  std::string os_label;
  std::vector<PortReport> ports;
  std::optional<RttPair> rtt;
  bool operator==(const ProbeReport&) const = default;
};

struct DeceptionScore {
  std::string machine;
  double score = 0;
  bool operator==(const DeceptionScore&) const = default;
};

struct ExploitDetail {
  std::string name;
  std::string title;
  std::uint16_t port = 0;
  std::string disclosure_date;
  std::string description;
  bool operator==(const ExploitDetail&) const = default;
};

struct ExploitResult {
  std::string exploit;
  std::string machine;
  bool success = false;
  bool operator==(const ExploitResult&) const = default;
};

struct DirEntry {
  std::string name;
  bool directory = false;
  bool operator==(const DirEntry&) const = default;
};

struct DirListing {
  std::string path;
  std::vector<DirEntry> entries;
  bool operator==(const DirListing&) const = default;
};

struct ChangedDir {
  std::string path;
  bool operator==(const ChangedDir&) const = default;
};

struct ProcessList {
  std::vector<std::string> processes;
  bool operator==(const ProcessList&) const = default;
};

struct VmVerdict {
  bool virtual_machine = false;
  bool operator==(const VmVerdict&) const = default;
};

/// Result of scp. `points` is the settlement applied by this transfer (zero
/// when the machine was already settled).
struct TransferResult {
  std::string machine;
  std::string file;
  std::string address;
  int points = 0;
  int total_score = 0;
  bool operator==(const TransferResult&) const = default;
};

/// Feedback shown on logout.
struct FeedbackReport {
  std::string machine;
  bool fetched = false;
  int points = 0;
  int total_score = 0;
  bool operator==(const FeedbackReport&) const = default;
};

/// The clock ran out before the command could execute. A foothold still open
/// at that moment is settled as if logged out.
struct TimeExpired {
  std::optional<std::string> settled_machine;
  int points = 0;
  int total_score = 0;
  bool operator==(const TimeExpired&) const = default;
};

struct ErrorReport {
  ErrorCode code = ErrorCode::BadArgument;
  std::string detail;
  bool operator==(const ErrorReport&) const = default;
};

using Payload = std::variant<HelpListing, MachineList, ProbeReport, DeceptionScore, ExploitDetail, ExploitResult,
                             DirListing, ChangedDir, ProcessList, VmVerdict, TransferResult, FeedbackReport,
                             TimeExpired, ErrorReport>;

struct CommandOutcome {
  std::string text;
  Payload payload;
  double time_charged_s = 0;  // command cost, excluding think time
  int score_delta = 0;
  bool session_ended = false;

  bool ok() const { return !std::holds_alternative<ErrorReport>(payload) && !std::holds_alternative<TimeExpired>(payload); }
  const ErrorReport* error() const { return std::get_if<ErrorReport>(&payload); }
  bool operator==(const CommandOutcome&) const = default;
};

/// Payload type tag used on the wire: "help", "machines", "probe", "checkhs",
/// "exploit_info", "exploit", "listing", "cd", "processes", "vm", "transfer",
/// "feedback", "time_expired", "error".
std::string_view payload_type(const Payload& payload);

std::string render_text(const Payload& payload);

nlohmann::json to_json(const Payload& payload);
nlohmann::json to_json(const CommandOutcome& outcome);
CommandOutcome outcome_from_json(const nlohmann::json& doc);

}  // namespace decoynet
