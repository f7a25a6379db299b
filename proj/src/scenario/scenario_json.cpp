#include "decoynet/scenario/scenario_json.hpp"

#include <stdexcept>

namespace decoynet {

using nlohmann::json;

namespace {

template <typename T>
T require(std::optional<T> value, std::string_view what, const json& raw) {
  if (!value) throw std::invalid_argument("invalid " + std::string(what) + ": " + raw.dump());
  return *value;
}

std::string_view to_string(NodeKind kind) { return kind == NodeKind::Directory ? "dir" : "file"; }
std::string_view to_string(Access access) { return access == Access::Allowed ? "allowed" : "denied"; }
std::string_view to_string(FileTag tag) {
  switch (tag) {
    case FileTag::None: return "none";
    case FileTag::PinFile: return "pin";
    case FileTag::Filler: return "filler";
  }
  return "none";
}

}  // namespace

json to_json(const FeatureVector& f) {
  return json{{"os_age", to_string(f.os_age)},
              {"normal_ports", f.normal_ports},
              {"honeypot_ports", f.honeypot_ports},
              {"exploit_info_age", to_string(f.exploit_info_age)},
              {"exploit_success_rate", f.exploit_success_rate},
              {"link_latency_ms", f.link_latency_ms},
              {"vm_indicator", to_string(f.host)},
              {"running_process_count", f.running_process_count},
              {"suspicious_folders", {f.suspicious_folders.min, f.suspicious_folders.max}}};
}

FeatureVector feature_vector_from_json(const json& doc) {
  FeatureVector f;
  f.os_age = require(parse_age(doc.at("os_age").get<std::string>()), "os_age", doc.at("os_age"));
  f.normal_ports = doc.at("normal_ports").get<std::vector<std::uint16_t>>();
  f.honeypot_ports = doc.at("honeypot_ports").get<std::vector<std::uint16_t>>();
  f.exploit_info_age =
      require(parse_age(doc.at("exploit_info_age").get<std::string>()), "exploit_info_age", doc.at("exploit_info_age"));
  f.exploit_success_rate = doc.at("exploit_success_rate").get<double>();
  f.link_latency_ms = doc.at("link_latency_ms").get<double>();
  f.host = require(parse_host_type(doc.at("vm_indicator").get<std::string>()), "vm_indicator", doc.at("vm_indicator"));
  f.running_process_count = doc.at("running_process_count").get<int>();
  const auto& range = doc.at("suspicious_folders");
  f.suspicious_folders = {range.at(0).get<int>(), range.at(1).get<int>()};
  return f;
}

json to_json(const ScenarioSpec& s) {
  return json{{"condition", to_string(s.condition)},
              {"round_index", s.round_index},
              {"n_machines", s.n_machines},
              {"n_honeypots", s.n_honeypots},
              {"seed", s.seed},
              {"vary_layout_by_round", s.vary_layout_by_round},
              {"normal_ports", s.ports.normal},
              {"honeypot_ports", s.ports.honeypot}};
}

ScenarioSpec scenario_spec_from_json(const json& doc) {
  ScenarioSpec s;
  s.condition = require(parse_condition(doc.at("condition").get<std::string>()), "condition", doc.at("condition"));
  s.round_index = doc.value("round_index", 1);
  s.n_machines = doc.value("n_machines", 40);
  s.n_honeypots = doc.value("n_honeypots", 20);
  s.seed = doc.value("seed", std::uint64_t{0});
  s.vary_layout_by_round = doc.value("vary_layout_by_round", true);
  if (doc.contains("normal_ports")) s.ports.normal = doc.at("normal_ports").get<std::vector<std::uint16_t>>();
  if (doc.contains("honeypot_ports")) s.ports.honeypot = doc.at("honeypot_ports").get<std::vector<std::uint16_t>>();
  return s;
}

json to_json(const FileTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes()) {
    json node{{"name", n.name}, {"kind", to_string(n.kind)}, {"access", to_string(n.access)}};
    if (n.kind == NodeKind::File) node["tag"] = to_string(n.tag);
    if (n.parent) node["parent"] = *n.parent;
    if (n.kind == NodeKind::Directory) node["children"] = n.children;
    nodes.push_back(std::move(node));
  }
  return nodes;
}

FileTree file_tree_from_json(const json& doc) {
  std::vector<FsNode> nodes;
  for (const auto& raw : doc) {
    FsNode n;
    n.name = raw.at("name").get<std::string>();
    const auto kind = raw.at("kind").get<std::string>();
    if (kind != "dir" && kind != "file") throw std::invalid_argument("invalid node kind: " + kind);
    n.kind = kind == "dir" ? NodeKind::Directory : NodeKind::File;
    const auto access = raw.at("access").get<std::string>();
    if (access != "allowed" && access != "denied") throw std::invalid_argument("invalid access: " + access);
    n.access = access == "allowed" ? Access::Allowed : Access::Denied;
    if (raw.contains("tag")) {
      const auto tag = raw.at("tag").get<std::string>();
      n.tag = tag == "pin" ? FileTag::PinFile : tag == "filler" ? FileTag::Filler : FileTag::None;
    }
    if (raw.contains("parent")) n.parent = raw.at("parent").get<std::size_t>();
    if (raw.contains("children")) n.children = raw.at("children").get<std::vector<std::size_t>>();
    nodes.push_back(std::move(n));
  }
  return FileTree::from_nodes(std::move(nodes));
}

json to_json(const NetworkScenario& scenario) {
  json machines = json::array();
  for (const auto& m : scenario.machines()) {
    json exploits = json::array();
    for (const auto& e : m.exploits) {
      exploits.push_back(json{{"name", e.name},
                              {"title", e.title},
                              {"port", e.port},
                              {"disclosure_date", format_date(e.disclosure_date)},
                              {"description", e.description}});
    }
    machines.push_back(json{{"name", m.name},
                            {"kind", to_string(m.kind)},
                            {"features", to_json(m.features)},
                            {"file_tree", to_json(m.files)},
                            {"exploits", std::move(exploits)}});
  }
  return json{{"scenario_id", scenario.id()},
              {"spec", to_json(scenario.spec())},
              {"honeypot_count", scenario.honeypot_count()},
              {"machines", std::move(machines)}};
}

NetworkScenario scenario_from_json(const json& doc) {
  std::vector<MachineRecord> machines;
  for (const auto& raw : doc.at("machines")) {
    MachineRecord m;
    m.name = raw.at("name").get<std::string>();
    m.kind = require(parse_machine_kind(raw.at("kind").get<std::string>()), "kind", raw.at("kind"));
    m.features = feature_vector_from_json(raw.at("features"));
    m.files = file_tree_from_json(raw.at("file_tree"));
    for (const auto& e : raw.at("exploits")) {
      m.exploits.push_back(ExploitInfo{e.at("name").get<std::string>(), e.at("title").get<std::string>(),
                                       e.at("port").get<std::uint16_t>(),
                                       parse_date(e.at("disclosure_date").get<std::string>()),
                                       e.at("description").get<std::string>()});
    }
    machines.push_back(std::move(m));
  }
  return NetworkScenario(scenario_spec_from_json(doc.at("spec")), doc.at("scenario_id").get<std::string>(),
                         std::move(machines));
}

std::string dump_scenario(const NetworkScenario& scenario) { return to_json(scenario).dump(2) + "\n"; }

NetworkScenario load_scenario(std::string_view text) { return scenario_from_json(json::parse(text)); }

}  // namespace decoynet
