#include "decoynet/agents/observation.hpp"

#include <algorithm>

namespace decoynet {

std::vector<std::string> MachineView::listed_exploits() const {
  std::vector<std::string> out;
  if (!probe) return out;
  for (const auto& port : probe->ports) out.insert(out.end(), port.exploits.begin(), port.exploits.end());
  return out;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (!name.empty() && name.front() == '/') return name;
  return dir == "/" ? "/" + name : dir + "/" + name;
}

Observation::Observation(double time_budget_s) : time_remaining_(time_budget_s) {}

const MachineView& Observation::view(const std::string& machine) const {
  static const MachineView empty;
  auto it = views_.find(machine);
  return it == views_.end() ? empty : it->second;
}

void Observation::update_folder_count() {
  if (!foothold_) return;
  const auto& fh = *foothold_;
  auto root = fh.listings.find("/");
  if (root == fh.listings.end()) return;
  auto user = std::find_if(root->second.entries.begin(), root->second.entries.end(),
                           [](const DirEntry& e) { return e.directory; });
  if (user == root->second.entries.end()) return;
  const auto user_path = join_path("/", user->name);
  auto listing = fh.listings.find(user_path);
  if (listing == fh.listings.end()) return;

  int suspicious = 0;
  for (const auto& e : listing->second.entries) {
    if (!e.directory) continue;
    const auto path = join_path(user_path, e.name);
    if (fh.denied.contains(path)) {
      ++suspicious;
      continue;
    }
    auto sub = fh.listings.find(path);
    if (sub == fh.listings.end()) return;  // not visited yet
    if (sub->second.entries.empty()) ++suspicious;
  }
  views_[fh.machine].suspicious_folders = suspicious;
}

void Observation::record(const Command& command, const CommandOutcome& outcome, double elapsed_s) {
  ++commands_;
  time_remaining_ = std::max(0.0, time_remaining_ - elapsed_s - outcome.time_charged_s);
  last_error_.reset();

  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MachineList>) {
          machines_ = p.machines;
          for (const auto& m : machines_) views_.try_emplace(m);
        } else if constexpr (std::is_same_v<T, ProbeReport>) {
          auto& v = views_[p.machine];
          v.probe = p;
          if (p.rtt) v.rtt = p.rtt;
        } else if constexpr (std::is_same_v<T, DeceptionScore>) {
          views_[p.machine].checkhs_scores.push_back(p.score);
        } else if constexpr (std::is_same_v<T, ExploitDetail>) {
          details_[p.name] = p;
        } else if constexpr (std::is_same_v<T, ExploitResult>) {
          auto& v = views_[p.machine];
          ++v.attempts;
          if (p.success) {
            ++v.successes;
            foothold_.emplace();
            foothold_->machine = p.machine;
          }
        } else if constexpr (std::is_same_v<T, DirListing>) {
          if (!foothold_) return;
          foothold_->listings[p.path] = p;
          if (std::ranges::any_of(p.entries, [](const DirEntry& e) { return !e.directory && e.name == "pin.txt"; })) {
            foothold_->pin_dir = p.path;
          }
          update_folder_count();
        } else if constexpr (std::is_same_v<T, ChangedDir>) {
          if (foothold_) foothold_->cwd = p.path;
        } else if constexpr (std::is_same_v<T, ProcessList>) {
          if (foothold_) views_[foothold_->machine].process_count = p.processes.size();
        } else if constexpr (std::is_same_v<T, VmVerdict>) {
          if (foothold_) views_[foothold_->machine].virtual_machine = p.virtual_machine;
        } else if constexpr (std::is_same_v<T, TransferResult>) {
          auto& v = views_[p.machine];
          v.settled = true;
          v.fetched = true;
          v.points += p.points;
          score_ = p.total_score;
        } else if constexpr (std::is_same_v<T, FeedbackReport>) {
          auto& v = views_[p.machine];
          v.settled = true;
          v.points += p.points;
          score_ = p.total_score;
          foothold_.reset();
        } else if constexpr (std::is_same_v<T, TimeExpired>) {
          if (p.settled_machine) {
            views_[*p.settled_machine].settled = true;
            views_[*p.settled_machine].points += p.points;
          }
          score_ = p.total_score;
          time_remaining_ = 0;
          foothold_.reset();
        } else if constexpr (std::is_same_v<T, ErrorReport>) {
          last_error_ = p;
          const auto* cd = std::get_if<cmd::Cd>(&command);
          if (cd && p.code == ErrorCode::AccessDenied && foothold_) {
            foothold_->denied.insert(join_path(foothold_->cwd, cd->path));
            update_folder_count();
          }
        }
      },
      outcome.payload);

  if (outcome.session_ended) ended_ = true;
}

}  // namespace decoynet
