#include "decoynet/scenario/profile.hpp"

#include <algorithm>
#include <stdexcept>

namespace decoynet {

std::vector<std::uint16_t> FeatureVector::open_ports() const {
  std::vector<std::uint16_t> ports = normal_ports;
  ports.insert(ports.end(), honeypot_ports.begin(), honeypot_ports.end());
  std::sort(ports.begin(), ports.end());
  ports.erase(std::unique(ports.begin(), ports.end()), ports.end());
  return ports;
}

std::string_view to_string(Age age) { return age == Age::Obsolete ? "Obsolete" : "UpToDate"; }

std::string_view to_string(HostType host) { return host == HostType::Virtual ? "Virtual" : "Physical"; }

std::string_view to_string(MachineKind kind) {
  switch (kind) {
    case MachineKind::DefaultHoneypot: return "DefaultHoneypot";
    case MachineKind::ConcealedHoneypot: return "ConcealedHoneypot";
    case MachineKind::DefaultReal: return "DefaultReal";
    case MachineKind::ConcealedReal: return "ConcealedReal";
  }
  return "?";
}

std::string_view to_string(Condition condition) {
  switch (condition) {
    case Condition::Default: return "Default";
    case Condition::ConcealedHoneypot: return "ConcealedHoneypot";
    case Condition::ConcealedHoneypotReal: return "ConcealedHoneypotReal";
  }
  return "?";
}

std::optional<Age> parse_age(std::string_view text) {
  if (text == "Obsolete") return Age::Obsolete;
  if (text == "UpToDate") return Age::UpToDate;
  return std::nullopt;
}

std::optional<HostType> parse_host_type(std::string_view text) {
  if (text == "Virtual") return HostType::Virtual;
  if (text == "Physical") return HostType::Physical;
  return std::nullopt;
}

std::optional<MachineKind> parse_machine_kind(std::string_view text) {
  for (auto kind : {MachineKind::DefaultHoneypot, MachineKind::ConcealedHoneypot, MachineKind::DefaultReal,
                    MachineKind::ConcealedReal}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::optional<Condition> parse_condition(std::string_view text) {
  for (auto c : kAllConditions) {
    if (text == to_string(c)) return c;
  }
  if (text == "default") return Condition::Default;
  if (text == "concealed-honeypot") return Condition::ConcealedHoneypot;
  if (text == "concealed-honeypot-real") return Condition::ConcealedHoneypotReal;
  return std::nullopt;
}

MachineKind kind_for(Condition condition, bool honeypot) {
  switch (condition) {
    case Condition::Default:
      return honeypot ? MachineKind::DefaultHoneypot : MachineKind::DefaultReal;
    case Condition::ConcealedHoneypot:
      return honeypot ? MachineKind::ConcealedHoneypot : MachineKind::DefaultReal;
    case Condition::ConcealedHoneypotReal:
      return honeypot ? MachineKind::ConcealedHoneypot : MachineKind::ConcealedReal;
  }
  throw std::invalid_argument("unknown condition");
}

FeatureVector profile_for(MachineKind kind, const PortConfig& ports) {
  // Tell-tale profile: legacy OS, extra listeners, VM, sparse processes,
  // mostly empty or locked folders.
  FeatureVector telltale;
  telltale.os_age = Age::Obsolete;
  telltale.normal_ports = ports.normal;
  telltale.honeypot_ports = ports.honeypot;
  telltale.exploit_info_age = Age::Obsolete;
  telltale.link_latency_ms = 1.0;
  telltale.host = HostType::Virtual;
  telltale.running_process_count = 2;
  telltale.suspicious_folders = {4, 5};

  FeatureVector production;
  production.os_age = Age::UpToDate;
  production.normal_ports = ports.normal;
  production.exploit_info_age = Age::UpToDate;
  production.exploit_success_rate = 0.4;
  production.link_latency_ms = 0.2;
  production.host = HostType::Physical;
  production.running_process_count = 10;
  production.suspicious_folders = {1, 1};

  switch (kind) {
    case MachineKind::DefaultHoneypot:
      telltale.exploit_success_rate = 1.0;
      return telltale;
    case MachineKind::ConcealedReal:
      telltale.exploit_success_rate = 0.8;
      return telltale;
    case MachineKind::ConcealedHoneypot:
    case MachineKind::DefaultReal:
      return production;
  }
  throw std::invalid_argument("unknown machine kind");
}

FeatureVector profile_for(Condition condition, bool honeypot, const PortConfig& ports) {
  return profile_for(kind_for(condition, honeypot), ports);
}

}  // namespace decoynet
