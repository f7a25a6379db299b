#include "decoynet/agents/policy.hpp"

#include <algorithm>
#include <stdexcept>

namespace decoynet {

using json = nlohmann::json;

namespace {
constexpr const char* kExfilAddress = "172.22.31.31";
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::UniformRandom: return "uniform-random";
    case PolicyKind::CheckHsThreshold: return "checkhs-threshold";
    case PolicyKind::FeatureHeuristic: return "feature-heuristic";
    case PolicyKind::Exhaustive: return "exhaustive";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view text) {
  for (auto k : {PolicyKind::UniformRandom, PolicyKind::CheckHsThreshold, PolicyKind::FeatureHeuristic,
                 PolicyKind::Exhaustive}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown policy '" + std::string(text) + "'");
}

double TimeModel::elapsed_for(const Command& command) const {
  auto it = per_verb.find(std::string(verb(command)));
  return it == per_verb.end() ? default_s : it->second;
}

json to_json(const PolicySpec& s) {
  const auto& h = s.heuristic;
  return {{"kind", to_string(s.kind)},
          {"tau", s.tau},
          {"max_attempts", s.max_attempts},
          {"time", {{"default_s", s.time.default_s}, {"per_verb", s.time.per_verb}}},
          {"heuristic",
           {{"weights",
             {{"honeypot_ports", h.w_honeypot_ports},
              {"obsolete_os", h.w_obsolete_os},
              {"rtt", h.w_rtt},
              {"vm", h.w_vm},
              {"processes", h.w_processes},
              {"folders", h.w_folders}}},
            {"rtt_ratio_threshold", h.rtt_ratio_threshold},
            {"process_threshold", h.process_threshold},
            {"folder_threshold", h.folder_threshold},
            {"fetch_below", h.fetch_below},
            {"indicator_ports", h.indicator_ports},
            {"obsolete_os_label", h.obsolete_os_label}}}};
}

PolicySpec policy_spec_from_json(const json& doc) {
  PolicySpec s;
  s.kind = parse_policy_kind(doc.value("kind", std::string(to_string(s.kind))));
  s.tau = doc.value("tau", s.tau);
  s.max_attempts = doc.value("max_attempts", s.max_attempts);
  if (doc.contains("time")) {
    const auto& t = doc.at("time");
    s.time.default_s = t.value("default_s", s.time.default_s);
    if (t.contains("per_verb")) s.time.per_verb = t.at("per_verb").get<std::map<std::string, double>>();
  }
  if (doc.contains("heuristic")) {
    const auto& h = doc.at("heuristic");
    auto& p = s.heuristic;
    if (h.contains("weights")) {
      const auto& w = h.at("weights");
      p.w_honeypot_ports = w.value("honeypot_ports", p.w_honeypot_ports);
      p.w_obsolete_os = w.value("obsolete_os", p.w_obsolete_os);
      p.w_rtt = w.value("rtt", p.w_rtt);
      p.w_vm = w.value("vm", p.w_vm);
      p.w_processes = w.value("processes", p.w_processes);
      p.w_folders = w.value("folders", p.w_folders);
    }
    p.rtt_ratio_threshold = h.value("rtt_ratio_threshold", p.rtt_ratio_threshold);
    p.process_threshold = h.value("process_threshold", p.process_threshold);
    p.folder_threshold = h.value("folder_threshold", p.folder_threshold);
    p.fetch_below = h.value("fetch_below", p.fetch_below);
    p.indicator_ports = h.value("indicator_ports", p.indicator_ports);
    p.obsolete_os_label = h.value("obsolete_os_label", p.obsolete_os_label);
  }
  if (s.tau < 0 || s.tau > 1) throw std::invalid_argument("tau must be in [0,1]");
  if (s.time.default_s <= 0) throw std::invalid_argument("virtual time per command must be positive");
  for (const auto& [verb_name, t] : s.time.per_verb) {
    if (t <= 0) throw std::invalid_argument("virtual time for " + verb_name + " must be positive");
  }
  if (s.max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");
  return s;
}

double suspicion_score(const MachineView& v, const HeuristicParams& p) {
  double s = 0;
  if (v.probe) {
    const bool indicator = std::ranges::any_of(v.probe->ports, [&](const PortReport& r) {
      return std::ranges::find(p.indicator_ports, r.port) != p.indicator_ports.end();
    });
    if (indicator) s += p.w_honeypot_ports;
    if (v.probe->os_label == p.obsolete_os_label) s += p.w_obsolete_os;
  }
  if (v.rtt && v.rtt->benchmark_ms > 0 && v.rtt->machine_ms / v.rtt->benchmark_ms > p.rtt_ratio_threshold) {
    s += p.w_rtt;
  }
  if (v.virtual_machine.value_or(false)) s += p.w_vm;
  if (v.process_count && static_cast<int>(*v.process_count) < p.process_threshold) s += p.w_processes;
  if (v.suspicious_folders && *v.suspicious_folders >= p.folder_threshold) s += p.w_folders;
  return s;
}

std::vector<std::string> rank_by_suspicion(const Observation& obs, const HeuristicParams& params, Rng& rng) {
  std::vector<std::string> order = obs.machines();
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  std::vector<std::pair<double, std::string>> scored;
  for (auto& m : order) scored.emplace_back(suspicion_score(obs.view(m), params), std::move(m));
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (auto& [_, m] : scored) out.push_back(std::move(m));
  return out;
}

Policy::Policy(PolicySpec spec, std::uint64_t seed) : spec_(std::move(spec)), rng_(seed) {}

bool Policy::affordable(const Observation& obs, const Command& command, double cost) const {
  return obs.time_remaining() - spec_.time.elapsed_for(command) >= cost;
}

std::vector<std::string> Policy::open_targets(const Observation& obs) const {
  std::vector<std::string> out;
  for (const auto& m : obs.machines()) {
    const auto& v = obs.view(m);
    if (v.settled) continue;
    if (spec_.kind != PolicyKind::Exhaustive && v.attempts >= spec_.max_attempts) continue;
    if (v.probe && v.listed_exploits().empty()) continue;
    out.push_back(m);
  }
  return out;
}

std::optional<Command> Policy::explore(const FootholdView& fh, bool full) const {
  if (!full && fh.pin_dir) return std::nullopt;
  if (!fh.listings.contains(fh.cwd)) return cmd::Ls{};

  auto unvisited = [&](const std::string& dir) -> std::optional<std::string> {
    for (const auto& e : fh.listings.at(dir).entries) {
      if (!e.directory) continue;
      const auto path = join_path(dir, e.name);
      if (!fh.listings.contains(path) && !fh.denied.contains(path)) return path;
    }
    return std::nullopt;
  };
  if (auto child = unvisited(fh.cwd)) return cmd::Cd{*child};
  for (const auto& [dir, _] : fh.listings) {
    if (auto path = unvisited(dir)) return cmd::Cd{*path};
  }
  return std::nullopt;
}

std::optional<Command> Policy::fetch(const FootholdView& fh) const {
  if (!fh.pin_dir) return std::nullopt;
  if (fh.cwd != *fh.pin_dir) return cmd::Cd{*fh.pin_dir};
  return cmd::Scp{"pin.txt", kExfilAddress};
}

std::optional<Command> Policy::attack(const Observation& obs, const std::string& machine, bool with_rtt) {
  const auto& v = obs.view(machine);
  const cmd::NmapProbe rtt_probe{machine, true};
  const bool want_rtt = with_rtt && !v.rtt && affordable(obs, rtt_probe, 10);
  if (!v.probe || want_rtt) return cmd::NmapProbe{machine, want_rtt};

  const auto exploits = v.listed_exploits();
  if (exploits.empty()) return std::nullopt;
  const std::size_t pick = spec_.kind == PolicyKind::UniformRandom
                               ? rng_.uniform_index(exploits.size())
                               : static_cast<std::size_t>(v.attempts) % exploits.size();
  return cmd::UseExploit{exploits[pick], machine};
}

namespace {

/// Common foothold behaviour for policies that always take the file.
std::optional<Command> grab_and_leave(const Observation& obs, const std::optional<Command>& explore_step,
                                      const std::optional<Command>& fetch_step) {
  const auto& fh = *obs.foothold();
  if (obs.view(fh.machine).fetched) return cmd::Logout{};
  if (explore_step) return explore_step;
  if (fetch_step) return fetch_step;
  return cmd::Logout{};
}

class UniformRandomPolicy : public Policy {
 public:
  using Policy::Policy;

  std::optional<Command> next(const Observation& obs) override {
    if (obs.ended()) return std::nullopt;
    if (obs.machines().empty()) return cmd::NmapList{};
    if (obs.foothold()) return grab_and_leave(obs, explore(*obs.foothold(), false), fetch(*obs.foothold()));

    const auto targets = open_targets(obs);
    if (targets.empty()) return std::nullopt;
    if (!pending_ || std::ranges::find(targets, *pending_) == targets.end()) {
      pending_ = targets[rng_.uniform_index(targets.size())];
    }
    auto step = attack(obs, *pending_, false);
    if (!step || std::holds_alternative<cmd::UseExploit>(*step)) pending_.reset();
    return step;
  }

 private:
  std::optional<std::string> pending_;
};

class CheckHsThresholdPolicy : public Policy {
 public:
  using Policy::Policy;

  std::optional<Command> next(const Observation& obs) override {
    if (obs.ended()) return std::nullopt;
    if (obs.machines().empty()) return cmd::NmapList{};
    if (obs.foothold()) return grab_and_leave(obs, explore(*obs.foothold(), false), fetch(*obs.foothold()));

    const auto targets = open_targets(obs);
    for (const auto& m : targets) {
      if (!obs.view(m).checkhs_scores.empty()) continue;
      const cmd::CheckHs check{m};
      if (affordable(obs, check, 10)) return check;
    }
    for (const auto& m : targets) {
      const auto& scores = obs.view(m).checkhs_scores;
      if (scores.empty() || scores.back() >= spec_.tau) continue;
      if (auto step = attack(obs, m, false)) return step;
    }
    return std::nullopt;
  }
};

class FeatureHeuristicPolicy : public Policy {
 public:
  using Policy::Policy;

  std::optional<Command> next(const Observation& obs) override {
    if (obs.ended()) return std::nullopt;
    if (obs.machines().empty()) return cmd::NmapList{};
    if (obs.foothold()) return in_foothold(obs);

    const auto targets = open_targets(obs);
    for (const auto& m : targets) {
      const auto& v = obs.view(m);
      const cmd::NmapProbe rtt_probe{m, true};
      if (!v.probe || (!v.rtt && affordable(obs, rtt_probe, 10))) return attack(obs, m, true);
    }
    if (order_.empty()) order_ = rank_by_suspicion(obs, spec_.heuristic, rng_);
    for (const auto& m : order_) {
      if (std::ranges::find(targets, m) == targets.end()) continue;
      if (auto step = attack(obs, m, true)) return step;
    }
    return std::nullopt;
  }

 private:
  std::optional<Command> in_foothold(const Observation& obs) {
    const auto& fh = *obs.foothold();
    const auto& v = obs.view(fh.machine);
    if (v.fetched) return cmd::Logout{};
    if (!v.process_count) return cmd::Ps{};
    if (!v.virtual_machine) return cmd::CheckVm{};
    if (auto step = explore(fh, true)) return step;
    if (suspicion_score(v, spec_.heuristic) < spec_.heuristic.fetch_below) {
      if (auto step = fetch(fh)) return step;
    }
    return cmd::Logout{};
  }

  std::vector<std::string> order_;
};

class ExhaustivePolicy : public Policy {
 public:
  using Policy::Policy;

  std::optional<Command> next(const Observation& obs) override {
    if (obs.ended()) return std::nullopt;
    if (obs.machines().empty()) return cmd::NmapList{};
    if (obs.foothold()) return grab_and_leave(obs, explore(*obs.foothold(), false), fetch(*obs.foothold()));
    for (const auto& m : open_targets(obs)) {
      if (auto step = attack(obs, m, false)) return step;
    }
    return std::nullopt;
  }
};

}  // namespace

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case PolicyKind::UniformRandom: return std::make_unique<UniformRandomPolicy>(spec, seed);
    case PolicyKind::CheckHsThreshold: return std::make_unique<CheckHsThresholdPolicy>(spec, seed);
    case PolicyKind::FeatureHeuristic: return std::make_unique<FeatureHeuristicPolicy>(spec, seed);
    case PolicyKind::Exhaustive: return std::make_unique<ExhaustivePolicy>(spec, seed);
  }
  throw std::invalid_argument("unknown policy kind");
}

}  // namespace decoynet
