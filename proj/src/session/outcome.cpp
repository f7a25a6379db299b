#include "decoynet/session/outcome.hpp"

#include <cstdio>
#include <stdexcept>

namespace decoynet {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string signed_points(int p) { return (p > 0 ? "+" : "") + std::to_string(p); }

struct TypeOf {
  std::string_view operator()(const HelpListing&) const { return "help"; }
  std::string_view operator()(const MachineList&) const { return "machines"; }
  std::string_view operator()(const ProbeReport&) const { return "probe"; }
  std::string_view operator()(const DeceptionScore&) const { return "checkhs"; }
  std::string_view operator()(const ExploitDetail&) const { return "exploit_info"; }
  std::string_view operator()(const ExploitResult&) const { return "exploit"; }
  std::string_view operator()(const DirListing&) const { return "listing"; }
  std::string_view operator()(const ChangedDir&) const { return "cd"; }
  std::string_view operator()(const ProcessList&) const { return "processes"; }
  std::string_view operator()(const VmVerdict&) const { return "vm"; }
  std::string_view operator()(const TransferResult&) const { return "transfer"; }
  std::string_view operator()(const FeedbackReport&) const { return "feedback"; }
  std::string_view operator()(const TimeExpired&) const { return "time_expired"; }
  std::string_view operator()(const ErrorReport&) const { return "error"; }
};

struct Text {
  std::string operator()(const HelpListing& p) const { return p.text; }
  std::string operator()(const MachineList& p) const {
    std::string out;
    for (const auto& m : p.machines) out += m + "\n";
    return out;
  }
  std::string operator()(const ProbeReport& p) const {
    std::string out = "Nmap scan report for " + p.machine + "\nOS: " + p.os_label + "\n";
    out += pad("PORT", 10) + pad("STATE", 7) + pad("SERVICE", 15) + "EXPLOITS\n";
    for (const auto& port : p.ports) {
      out += pad(std::to_string(port.port) + "/tcp", 10) + pad("open", 7) + pad(port.service, 15) +
             (port.exploits.empty() ? "-" : join(port.exploits, ", ")) + "\n";
    }
    if (p.rtt) {
      out += "Benchmark RTT: " + num(p.rtt->benchmark_ms) + " ms\n";
      out += p.machine + " RTT: " + num(p.rtt->machine_ms) + " ms\n";
    }
    return out;
  }
  std::string operator()(const DeceptionScore& p) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", p.score);
    return p.machine + " deception score: " + buf + "\n";
  }
  std::string operator()(const ExploitDetail& p) const {
    return p.name + " (" + p.title + ")\nport: " + std::to_string(p.port) + "\ndisclosed: " + p.disclosure_date +
           "\n" + p.description + "\n";
  }
  std::string operator()(const ExploitResult& p) const {
    return p.success ? "Exploit " + p.exploit + " succeeded. You have access to " + p.machine + ".\n"
                     : "Exploit " + p.exploit + " failed on " + p.machine + ".\n";
  }
  std::string operator()(const DirListing& p) const {
    std::string out;
    for (const auto& e : p.entries) out += e.name + (e.directory ? "/" : "") + "\n";
    return out;
  }
  std::string operator()(const ChangedDir& p) const { return p.path + "\n"; }
  std::string operator()(const ProcessList& p) const {
    std::string out = "  PID CMD\n";
    for (std::size_t i = 0; i < p.processes.size(); ++i) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%5zu ", 100 + i * 37);
      out += buf + p.processes[i] + "\n";
    }
    return out;
  }
  std::string operator()(const VmVerdict& p) const {
    return p.virtual_machine ? "Virtual environment detected.\n" : "Running on physical hardware.\n";
  }
  std::string operator()(const TransferResult& p) const {
    return p.file + " copied from " + p.machine + " to " + p.address + ". Points: " + signed_points(p.points) +
           ". Total score: " + std::to_string(p.total_score) + "\n";
  }
  std::string operator()(const FeedbackReport& p) const {
    return "Logged out of " + p.machine + ". Points: " + signed_points(p.points) +
           ". Total score: " + std::to_string(p.total_score) + "\n";
  }
  std::string operator()(const TimeExpired& p) const {
    std::string out = "Time is up.";
    if (p.settled_machine) out += " Access to " + *p.settled_machine + " settled: " + signed_points(p.points) + ".";
    return out + " Total score: " + std::to_string(p.total_score) + "\n";
  }
  std::string operator()(const ErrorReport& p) const {
    return "error: " + std::string(to_string(p.code)) + ": " + p.detail + "\n";
  }
};

struct ToJson {
  json operator()(const HelpListing& p) const { return json{{"text", p.text}}; }
  json operator()(const MachineList& p) const { return json{{"machines", p.machines}}; }
  json operator()(const ProbeReport& p) const {
    json ports = json::array();
    for (const auto& port : p.ports) {
      ports.push_back(json{{"port", port.port}, {"service", port.service}, {"exploits", port.exploits}});
    }
    json out{{"machine", p.machine}, {"os", p.os_label}, {"ports", std::move(ports)}};
    if (p.rtt) out["rtt"] = json{{"benchmark_ms", p.rtt->benchmark_ms}, {"machine_ms", p.rtt->machine_ms}};
    return out;
  }
  json operator()(const DeceptionScore& p) const { return json{{"machine", p.machine}, {"score", p.score}}; }
  json operator()(const ExploitDetail& p) const {
    return json{{"name", p.name},
                {"title", p.title},
                {"port", p.port},
                {"disclosure_date", p.disclosure_date},
                {"description", p.description}};
  }
  json operator()(const ExploitResult& p) const {
    return json{{"exploit", p.exploit}, {"machine", p.machine}, {"success", p.success}};
  }
  json operator()(const DirListing& p) const {
    json entries = json::array();
    for (const auto& e : p.entries) entries.push_back(json{{"name", e.name}, {"directory", e.directory}});
    return json{{"path", p.path}, {"entries", std::move(entries)}};
  }
  json operator()(const ChangedDir& p) const { return json{{"path", p.path}}; }
  json operator()(const ProcessList& p) const { return json{{"processes", p.processes}}; }
  json operator()(const VmVerdict& p) const { return json{{"verdict", p.virtual_machine ? "Virtual" : "Physical"}}; }
  json operator()(const TransferResult& p) const {
    return json{{"machine", p.machine},
                {"file", p.file},
                {"address", p.address},
                {"points", p.points},
                {"total_score", p.total_score}};
  }
  json operator()(const FeedbackReport& p) const {
    return json{{"machine", p.machine}, {"fetched", p.fetched}, {"points", p.points}, {"total_score", p.total_score}};
  }
  json operator()(const TimeExpired& p) const {
    json out{{"points", p.points}, {"total_score", p.total_score}};
    out["settled_machine"] = p.settled_machine ? json(*p.settled_machine) : json(nullptr);
    return out;
  }
  json operator()(const ErrorReport& p) const { return json{{"code", to_string(p.code)}, {"detail", p.detail}}; }
};

ErrorCode error_code_from_string(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::SessionEnded); ++i) {
    if (to_string(static_cast<ErrorCode>(i)) == s) return static_cast<ErrorCode>(i);
  }
  throw std::invalid_argument("unknown error code: " + std::string(s));
}

Payload payload_from_json(std::string_view type, const json& d) {
  if (type == "help") return HelpListing{d.at("text").get<std::string>()};
  if (type == "machines") return MachineList{d.at("machines").get<std::vector<std::string>>()};
  if (type == "probe") {
    ProbeReport p{d.at("machine").get<std::string>(), d.at("os").get<std::string>(), {}, std::nullopt};
    for (const auto& port : d.at("ports")) {
      p.ports.push_back(PortReport{port.at("port").get<std::uint16_t>(), port.at("service").get<std::string>(),
                                   port.at("exploits").get<std::vector<std::string>>()});
    }
    if (d.contains("rtt")) p.rtt = RttPair{d["rtt"].at("benchmark_ms").get<double>(), d["rtt"].at("machine_ms").get<double>()};
    return p;
  }
  if (type == "checkhs") return DeceptionScore{d.at("machine").get<std::string>(), d.at("score").get<double>()};
  if (type == "exploit_info") {
    return ExploitDetail{d.at("name").get<std::string>(), d.at("title").get<std::string>(),
                         d.at("port").get<std::uint16_t>(), d.at("disclosure_date").get<std::string>(),
                         d.at("description").get<std::string>()};
  }
  if (type == "exploit") {
    return ExploitResult{d.at("exploit").get<std::string>(), d.at("machine").get<std::string>(), d.at("success").get<bool>()};
  }
  if (type == "listing") {
    DirListing p{d.at("path").get<std::string>(), {}};
    for (const auto& e : d.at("entries")) p.entries.push_back(DirEntry{e.at("name").get<std::string>(), e.at("directory").get<bool>()});
    return p;
  }
  if (type == "cd") return ChangedDir{d.at("path").get<std::string>()};
  if (type == "processes") return ProcessList{d.at("processes").get<std::vector<std::string>>()};
  if (type == "vm") return VmVerdict{d.at("verdict").get<std::string>() == "Virtual"};
  if (type == "transfer") {
    return TransferResult{d.at("machine").get<std::string>(), d.at("file").get<std::string>(),
                          d.at("address").get<std::string>(), d.at("points").get<int>(), d.at("total_score").get<int>()};
  }
  if (type == "feedback") {
    return FeedbackReport{d.at("machine").get<std::string>(), d.at("fetched").get<bool>(), d.at("points").get<int>(),
                          d.at("total_score").get<int>()};
  }
  if (type == "time_expired") {
    TimeExpired p;
    if (!d.at("settled_machine").is_null()) p.settled_machine = d["settled_machine"].get<std::string>();
    p.points = d.at("points").get<int>();
    p.total_score = d.at("total_score").get<int>();
    return p;
  }
  if (type == "error") return ErrorReport{error_code_from_string(d.at("code").get<std::string>()), d.at("detail").get<std::string>()};
  throw std::invalid_argument("unknown payload type: " + std::string(type));
}

}  // namespace

std::string_view payload_type(const Payload& payload) { return std::visit(TypeOf{}, payload); }

std::string render_text(const Payload& payload) { return std::visit(Text{}, payload); }

json to_json(const Payload& payload) { return std::visit(ToJson{}, payload); }

json to_json(const CommandOutcome& o) {
  return json{{"type", payload_type(o.payload)},
              {"data", to_json(o.payload)},
              {"text", o.text},
              {"time_charged_s", o.time_charged_s},
              {"score_delta", o.score_delta},
              {"session_ended", o.session_ended}};
}

CommandOutcome outcome_from_json(const json& doc) {
  CommandOutcome o;
  o.payload = payload_from_json(doc.at("type").get<std::string>(), doc.at("data"));
  o.text = doc.at("text").get<std::string>();
  o.time_charged_s = doc.at("time_charged_s").get<double>();
  o.score_delta = doc.at("score_delta").get<int>();
  o.session_ended = doc.at("session_ended").get<bool>();
  return o;
}

}  // namespace decoynet
