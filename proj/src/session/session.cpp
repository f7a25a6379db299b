#include "decoynet/session/session.hpp"

#include <algorithm>
#include <stdexcept>

namespace decoynet {

using nlohmann::json;

json to_json(const EngineConfig& c) {
  return json{{"time_budget_s", c.time_budget_s},
              {"rtt_cost_s", c.rtt_cost_s},
              {"checkhs_cost_s", c.checkhs_cost_s},
              {"checkhs_reliability", c.checkhs_reliability},
              {"benchmark_rtt_ms", c.benchmark_rtt_ms},
              {"rtt_jitter", c.rtt_jitter},
              {"exfil_address", c.exfil_address},
              {"obsolete_os_label", c.obsolete_os_label},
              {"current_os_label", c.current_os_label},
              {"fetch_points", c.fetch_points},
              {"access_points", c.access_points}};
}

EngineConfig engine_config_from_json(const json& doc) {
  EngineConfig c;
  c.time_budget_s = doc.value("time_budget_s", c.time_budget_s);
  c.rtt_cost_s = doc.value("rtt_cost_s", c.rtt_cost_s);
  c.checkhs_cost_s = doc.value("checkhs_cost_s", c.checkhs_cost_s);
  c.checkhs_reliability = doc.value("checkhs_reliability", c.checkhs_reliability);
  c.benchmark_rtt_ms = doc.value("benchmark_rtt_ms", c.benchmark_rtt_ms);
  c.rtt_jitter = doc.value("rtt_jitter", c.rtt_jitter);
  c.exfil_address = doc.value("exfil_address", c.exfil_address);
  c.obsolete_os_label = doc.value("obsolete_os_label", c.obsolete_os_label);
  c.current_os_label = doc.value("current_os_label", c.current_os_label);
  c.fetch_points = doc.value("fetch_points", c.fetch_points);
  c.access_points = doc.value("access_points", c.access_points);
  if (c.time_budget_s < 0 || c.rtt_cost_s < 0 || c.checkhs_cost_s < 0) {
    throw std::invalid_argument("engine times must be non-negative");
  }
  if (c.checkhs_reliability < 0 || c.checkhs_reliability > 1) {
    throw std::invalid_argument("checkHS reliability must be in [0,1]");
  }
  return c;
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Recon: return "Recon";
    case Phase::Foothold: return "Foothold";
    case Phase::Ended: return "Ended";
  }
  return "?";
}

std::string_view to_string(MachineOutcome outcome) {
  switch (outcome) {
    case MachineOutcome::NotTouched: return "NotTouched";
    case MachineOutcome::Abandoned: return "Abandoned";
    case MachineOutcome::ExploitedNoFetch: return "ExploitedNoFetch";
    case MachineOutcome::ExploitedFetched: return "ExploitedFetched";
  }
  return "?";
}

namespace {

bool is_settled(MachineOutcome o) {
  return o == MachineOutcome::ExploitedNoFetch || o == MachineOutcome::ExploitedFetched;
}

}  // namespace

Session::Session(std::shared_ptr<const NetworkScenario> scenario, std::uint64_t seed, EngineConfig config,
                 std::string session_id)
    : scenario_(std::move(scenario)),
      seed_(seed),
      config_(std::move(config)),
      id_(std::move(session_id)),
      rng_(seed),
      time_remaining_(config_.time_budget_s) {
  if (!scenario_) throw std::invalid_argument("session needs a scenario");
  if (id_.empty()) id_ = scenario_->id() + "/" + std::to_string(seed);
  for (const auto& m : scenario_->machines()) outcomes_.emplace(m.name, MachineOutcome::NotTouched);
  if (time_remaining_ <= 0) phase_ = Phase::Ended;
}

const MachineRecord& Session::machine(std::string_view name) const {
  const auto* m = scenario_->find(name);
  if (!m) throw CommandError(ErrorCode::UnknownMachine, "no system named '" + std::string(name) + "'");
  return *m;
}

void Session::require_phase(Phase wanted, std::string_view verb) const {
  if (phase_ == Phase::Ended) throw CommandError(ErrorCode::SessionEnded, "the task is over");
  if (phase_ != wanted) {
    throw CommandError(ErrorCode::WrongPhase, std::string(verb) + (wanted == Phase::Recon
                                                                       ? " is not available while logged into a system"
                                                                       : " requires access to a system"));
  }
}

void Session::require_time(double cost, std::string_view what) const {
  if (time_remaining_ < cost) {
    throw CommandError(ErrorCode::InsufficientTime, std::string(what) + " needs " + std::to_string(cost) + " s");
  }
}

std::string Session::working_directory() const {
  if (!current_) return {};
  return machine(*current_).files.path_of(cwd_);
}

MachineOutcome Session::outcome(std::string_view machine_name) const {
  const auto it = outcomes_.find(machine_name);
  if (it == outcomes_.end()) throw CommandError(ErrorCode::UnknownMachine, std::string(machine_name));
  return it->second;
}

bool Session::all_settled() const {
  return std::all_of(outcomes_.begin(), outcomes_.end(), [](const auto& kv) { return is_settled(kv.second); });
}

int Session::settle(const MachineRecord& m, int magnitude, MachineOutcome as) {
  auto& slot = outcomes_.at(m.name);
  if (is_settled(slot)) return 0;
  const int points = m.honeypot() ? -magnitude : magnitude;
  slot = as;
  score_ += points;
  ledger_.push_back({m.name, points});
  return points;
}

void Session::end_session() {
  TimeExpired expiry;
  if (phase_ == Phase::Foothold && current_) {
    expiry.settled_machine = *current_;
    expiry.points = settle(machine(*current_), config_.access_points, MachineOutcome::ExploitedNoFetch);
  }
  expiry.total_score = score_;
  expiry_ = expiry;
  phase_ = Phase::Ended;
  current_.reset();
  cwd_ = FileTree::root();
}

TimeState Session::charge_time(double cost_s) {
  if (cost_s < 0) throw std::invalid_argument("negative time charge");
  if (phase_ != Phase::Ended) {
    time_remaining_ = std::max(0.0, time_remaining_ - cost_s);
    if (time_remaining_ <= 0) end_session();
  }
  return {time_remaining_, phase_ == Phase::Ended};
}

MachineList Session::nmap_list() const {
  require_phase(Phase::Recon, "nmap -sL");
  MachineList out;
  for (const auto& m : scenario_->machines()) out.machines.push_back(m.name);
  return out;
}

ProbeReport Session::nmap_probe(std::string_view name, bool rtt) {
  require_phase(Phase::Recon, "nmap");
  const auto& m = machine(name);
  if (rtt) require_time(config_.rtt_cost_s, "nmap -rtt");

  ProbeReport report;
  report.machine = m.name;
  report.os_label = m.features.os_age == Age::Obsolete ? config_.obsolete_os_label : config_.current_os_label;
  for (auto port : m.features.open_ports()) {
    PortReport p{port, std::string(service_name(port)), {}};
    for (const auto& e : m.exploits) {
      if (e.port == port) p.exploits.push_back(e.name);
    }
    report.ports.push_back(std::move(p));
  }
  if (rtt) {
    charge_time(config_.rtt_cost_s);
    last_cost_ = config_.rtt_cost_s;
    double latency = m.features.link_latency_ms;
    if (config_.rtt_jitter > 0) latency *= 1.0 + config_.rtt_jitter * (2.0 * rng_.uniform() - 1.0);
    report.rtt = RttPair{config_.benchmark_rtt_ms, latency};
  }
  return report;
}

DeceptionScore Session::check_hs(std::string_view name) {
  require_phase(Phase::Recon, "checkHS");
  const auto& m = machine(name);
  require_time(config_.checkhs_cost_s, "checkHS");
  charge_time(config_.checkhs_cost_s);
  last_cost_ = config_.checkhs_cost_s;
  const bool correct = rng_.bernoulli(config_.checkhs_reliability);
  const double u = rng_.uniform();
  // Honeypots belong in [0.5, 1], real machines in [0, 0.5).
  const bool high_half = m.honeypot() == correct;
  return {m.name, high_half ? 0.5 + 0.5 * u : 0.5 * u};
}

ExploitDetail Session::info_exploit(std::string_view exploit) const {
  if (phase_ == Phase::Ended) throw CommandError(ErrorCode::SessionEnded, "the task is over");
  const auto* e = find_exploit(exploit);
  if (!e) throw CommandError(ErrorCode::UnknownExploit, "no exploit named '" + std::string(exploit) + "'");
  return {e->name, e->title, e->port, format_date(e->disclosure_date), e->description};
}

ExploitResult Session::use_exploit(std::string_view exploit, std::string_view name) {
  require_phase(Phase::Recon, "use_exploit");
  const auto& m = machine(name);
  if (!m.has_exploit(exploit)) {
    throw CommandError(ErrorCode::ExploitNotPresent, "'" + std::string(exploit) + "' is not listed on " + m.name);
  }
  const bool success = rng_.bernoulli(m.features.exploit_success_rate);
  if (success) {
    phase_ = Phase::Foothold;
    current_ = m.name;
    cwd_ = FileTree::root();
  } else {
    auto& slot = outcomes_.at(m.name);
    if (slot == MachineOutcome::NotTouched) slot = MachineOutcome::Abandoned;
  }
  return {std::string(exploit), m.name, success};
}

DirListing Session::ls() const {
  require_phase(Phase::Foothold, "ls");
  const auto& tree = machine(*current_).files;
  DirListing out{tree.path_of(cwd_), {}};
  for (auto c : tree.node(cwd_).children) {
    out.entries.push_back({tree.node(c).name, tree.node(c).kind == NodeKind::Directory});
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

ChangedDir Session::cd(std::string_view path) {
  require_phase(Phase::Foothold, "cd");
  const auto& tree = machine(*current_).files;
  const auto lookup = tree.resolve_directory(path, cwd_);
  switch (lookup.status) {
    case PathStatus::Ok: break;
    case PathStatus::AccessDenied:
      throw CommandError(ErrorCode::AccessDenied, "cd: " + std::string(path) + ": access denied");
    case PathStatus::NoSuchPath:
    case PathStatus::NotADirectory:
      throw CommandError(ErrorCode::NoSuchPath, "cd: " + std::string(path) + ": no such directory");
  }
  cwd_ = lookup.node;
  return {tree.path_of(cwd_)};
}

ProcessList Session::ps() const {
  require_phase(Phase::Foothold, "ps");
  return {process_names(machine(*current_).features.running_process_count)};
}

VmVerdict Session::check_vm() const {
  require_phase(Phase::Foothold, "checkVM");
  return {machine(*current_).features.host == HostType::Virtual};
}

TransferResult Session::scp(std::string_view file, std::string_view address) {
  require_phase(Phase::Foothold, "scp");
  const auto& m = machine(*current_);
  const auto here = m.files.child(cwd_, file);
  if (!here || m.files.node(*here).kind != NodeKind::File) {
    throw CommandError(ErrorCode::FileNotFound, "scp: " + std::string(file) + ": no such file in " + m.files.path_of(cwd_));
  }
  if (address != config_.exfil_address) {
    throw CommandError(ErrorCode::BadAddress, "scp: cannot reach " + std::string(address));
  }
  const int points = settle(m, config_.fetch_points, MachineOutcome::ExploitedFetched);
  return {m.name, std::string(file), std::string(address), points, score_};
}

FeedbackReport Session::logout() {
  require_phase(Phase::Foothold, "logout");
  const auto& m = machine(*current_);
  const int points = settle(m, config_.access_points, MachineOutcome::ExploitedNoFetch);
  FeedbackReport report{m.name, outcomes_.at(m.name) == MachineOutcome::ExploitedFetched, points, score_};
  phase_ = Phase::Recon;
  current_.reset();
  cwd_ = FileTree::root();
  return report;
}

namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

}  // namespace

Payload Session::dispatch(const Command& command) {
  return std::visit(
      Overload{
          [&](const cmd::NmapList&) -> Payload { return nmap_list(); },
          [&](const cmd::NmapProbe& c) -> Payload { return nmap_probe(c.machine, c.rtt); },
          [&](const cmd::CheckHs& c) -> Payload { return check_hs(c.machine); },
          [&](const cmd::InfoExploit& c) -> Payload { return info_exploit(c.exploit); },
          [&](const cmd::UseExploit& c) -> Payload { return use_exploit(c.exploit, c.machine); },
          [&](const cmd::Ls&) -> Payload { return ls(); },
          [&](const cmd::Cd& c) -> Payload { return cd(c.path); },
          [&](const cmd::Ps&) -> Payload { return ps(); },
          [&](const cmd::CheckVm&) -> Payload { return check_vm(); },
          [&](const cmd::Scp& c) -> Payload { return scp(c.file, c.address); },
          [&](const cmd::Logout&) -> Payload { return logout(); },
          [&](const cmd::Help&) -> Payload {
            if (ended()) throw CommandError(ErrorCode::SessionEnded, "the task is over");
            return HelpListing{std::string(help_text())};
          },
      },
      command);
}

CommandOutcome Session::run(const Command* command, const ErrorReport* rejected, double elapsed_s) {
  CommandOutcome out;
  if (ended()) {
    out.payload = ErrorReport{ErrorCode::SessionEnded, "the task is over"};
    out.text = render_text(out.payload);
    out.session_ended = true;
    return out;
  }

  const int score_before = score_;
  if (elapsed_s > 0) charge_time(elapsed_s);
  if (ended()) {
    out.payload = *expiry_;
    out.text = render_text(out.payload);
    out.score_delta = score_ - score_before;
    out.session_ended = true;
    return out;
  }

  last_cost_ = 0;
  if (rejected) {
    out.payload = *rejected;
  } else {
    try {
      out.payload = dispatch(*command);
    } catch (const CommandError& e) {
      out.payload = ErrorReport{e.code(), e.what()};
    }
  }
  out.time_charged_s = last_cost_;

  out.text = render_text(out.payload);
  if (ended()) {
    if (expiry_) out.text += render_text(*expiry_);
  } else if (phase_ == Phase::Recon && all_settled()) {
    phase_ = Phase::Ended;
    out.text += "All systems have been explored. The task is over.\n";
  }
  out.score_delta = score_ - score_before;
  out.session_ended = ended();
  return out;
}

CommandOutcome Session::execute(const Command& command, double elapsed_s) {
  return run(&command, nullptr, elapsed_s);
}

CommandOutcome Session::execute_line(std::string_view line, double elapsed_s) {
  Command command;
  try {
    command = parse_command(line);
  } catch (const CommandError& e) {
    const ErrorReport rejected{e.code(), e.what()};
    return run(nullptr, &rejected, elapsed_s);
  }
  return run(&command, nullptr, elapsed_s);
}

}  // namespace decoynet
