#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace decoynet {

enum class Age { Obsolete, UpToDate };

enum class HostType { Virtual, Physical };

enum class MachineKind { DefaultHoneypot, ConcealedHoneypot, DefaultReal, ConcealedReal };

enum class Condition { Default, ConcealedHoneypot, ConcealedHoneypotReal };

inline constexpr Condition kAllConditions[] = {Condition::Default, Condition::ConcealedHoneypot,
                                               Condition::ConcealedHoneypotReal};

inline constexpr bool is_honeypot(MachineKind kind) {
  return kind == MachineKind::DefaultHoneypot || kind == MachineKind::ConcealedHoneypot;
}

/// Inclusive range of empty-or-denied subfolders under the user folder.
struct FolderRange {
  int min = 0;
  int max = 0;
  bool operator==(const FolderRange&) const = default;
};

/// The observable configuration of one machine. Two machines with equal
/// vectors are indistinguishable before exploitation.
struct FeatureVector {
  Age os_age = Age::UpToDate;
  std::vector<std::uint16_t> normal_ports;
  std::vector<std::uint16_t> honeypot_ports;  // non-empty marks a tell-tale listener set
  Age exploit_info_age = Age::UpToDate;
  double exploit_success_rate = 0.0;
  double link_latency_ms = 0.0;
  HostType host = HostType::Physical;
  int running_process_count = 0;
  FolderRange suspicious_folders;

  std::vector<std::uint16_t> open_ports() const;  // sorted union
  bool operator==(const FeatureVector&) const = default;
};

std::string_view to_string(Age age);
std::string_view to_string(HostType host);
std::string_view to_string(MachineKind kind);
std::string_view to_string(Condition condition);

std::optional<Age> parse_age(std::string_view text);
std::optional<HostType> parse_host_type(std::string_view text);
std::optional<MachineKind> parse_machine_kind(std::string_view text);
/// Accepts the canonical names plus the short forms "default", "concealed-honeypot",
/// "concealed-honeypot-real".
std::optional<Condition> parse_condition(std::string_view text);

}  // namespace decoynet
