#include "decoynet/scenario/filesystem.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace decoynet {

FileTree::FileTree() { nodes_.push_back(FsNode{"/", NodeKind::Directory, Access::Allowed, FileTag::None, {}, {}}); }

std::size_t FileTree::add_directory(std::size_t parent, std::string name, Access access) {
  if (nodes_.at(parent).kind != NodeKind::Directory) throw std::invalid_argument("parent is not a directory");
  nodes_.push_back(FsNode{std::move(name), NodeKind::Directory, access, FileTag::None, parent, {}});
  nodes_[parent].children.push_back(nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::size_t FileTree::add_file(std::size_t parent, std::string name, FileTag tag) {
  if (nodes_.at(parent).kind != NodeKind::Directory) throw std::invalid_argument("parent is not a directory");
  nodes_.push_back(FsNode{std::move(name), NodeKind::File, Access::Allowed, tag, parent, {}});
  nodes_[parent].children.push_back(nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::optional<std::size_t> FileTree::child(std::size_t dir, std::string_view name) const {
  for (auto c : nodes_.at(dir).children) {
    if (nodes_[c].name == name) return c;
  }
  return std::nullopt;
}

PathLookup FileTree::resolve_directory(std::string_view path, std::size_t cwd) const {
  std::size_t at = path.starts_with('/') ? root() : cwd;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const auto slash = path.find('/', pos);
    const auto part = path.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos);
    pos = slash == std::string_view::npos ? path.size() + 1 : slash + 1;
    if (part.empty() || part == ".") continue;
    if (part == "..") {
      if (nodes_[at].parent) at = *nodes_[at].parent;
      continue;
    }
    const auto next = child(at, part);
    if (!next) return {PathStatus::NoSuchPath, cwd};
    if (nodes_[*next].kind != NodeKind::Directory) return {PathStatus::NotADirectory, cwd};
    if (nodes_[*next].access == Access::Denied) return {PathStatus::AccessDenied, cwd};
    at = *next;
  }
  return {PathStatus::Ok, at};
}

std::string FileTree::path_of(std::size_t index) const {
  if (index == root()) return "/";
  std::vector<std::string_view> parts;
  for (std::optional<std::size_t> at = index; at && *at != root(); at = nodes_.at(*at).parent) {
    parts.push_back(nodes_[*at].name);
  }
  std::string out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    out += '/';
    out += *it;
  }
  return out;
}

std::optional<std::size_t> FileTree::user_folder() const {
  std::optional<std::size_t> found;
  for (auto c : nodes_[root()].children) {
    if (nodes_[c].kind != NodeKind::Directory) continue;
    if (found) return std::nullopt;
    found = c;
  }
  return found;
}

int FileTree::suspicious_folder_count() const {
  const auto user = user_folder();
  if (!user) return 0;
  int count = 0;
  for (auto c : nodes_[*user].children) {
    const auto& n = nodes_[c];
    if (n.kind == NodeKind::Directory && (n.access == Access::Denied || n.children.empty())) ++count;
  }
  return count;
}

std::vector<std::size_t> FileTree::pin_files() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == NodeKind::File && nodes_[i].tag == FileTag::PinFile) out.push_back(i);
  }
  return out;
}

FileTree FileTree::from_nodes(std::vector<FsNode> nodes) {
  if (nodes.empty() || nodes[0].parent || nodes[0].kind != NodeKind::Directory) {
    throw std::invalid_argument("file tree must start with a root directory");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (auto c : nodes[i].children) {
      if (c >= nodes.size() || c == 0 || nodes[c].parent != i) throw std::invalid_argument("inconsistent file tree links");
    }
    if (i > 0) {
      if (!nodes[i].parent || *nodes[i].parent >= nodes.size()) throw std::invalid_argument("dangling parent link");
      const auto& siblings = nodes[*nodes[i].parent].children;
      if (std::find(siblings.begin(), siblings.end(), i) == siblings.end()) {
        throw std::invalid_argument("node missing from parent's children");
      }
    }
  }
  FileTree tree;
  tree.nodes_ = std::move(nodes);
  return tree;
}

namespace {

constexpr std::array<const char*, 4> kUserNames{"webadmin", "deploy", "operator", "svc-www"};
constexpr std::array<const char*, 8> kFolderNames{"documents", "backup", "config", "logs",
                                                  "www",       "private", "scripts", "archive"};
constexpr std::array<const char*, 8> kFillerNames{"notes.txt",  "index.html", "db.conf",     "access.log",
                                                  "report.pdf", "deploy.sh",  "users.csv",   "readme.md"};

template <typename T, std::size_t N>
std::vector<std::size_t> shuffled_indices(const std::array<T, N>&, Rng& rng) {
  std::vector<std::size_t> idx(N);
  for (std::size_t i = 0; i < N; ++i) idx[i] = i;
  for (std::size_t i = N - 1; i > 0; --i) std::swap(idx[i], idx[rng.uniform_index(i + 1)]);
  return idx;
}

}  // namespace

FileTree generate_filesystem(const FeatureVector& profile, Rng& rng) {
  FileTree tree;
  const auto user = tree.add_directory(FileTree::root(), kUserNames[rng.uniform_index(kUserNames.size())]);

  const int subfolders = rng.uniform_int(5, 6);
  const int lo = std::max(0, profile.suspicious_folders.min);
  const int hi = std::min(profile.suspicious_folders.max, subfolders - 1);
  if (lo > hi) throw std::invalid_argument("suspicious folder range leaves no room for pin.txt");
  const int suspicious = rng.uniform_int(lo, hi);

  const auto names = shuffled_indices(kFolderNames, rng);
  // First `suspicious` slots become empty or denied, in shuffled position.
  std::vector<bool> is_suspicious(static_cast<std::size_t>(subfolders), false);
  {
    std::vector<std::size_t> slots(static_cast<std::size_t>(subfolders));
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
    for (std::size_t i = slots.size() - 1; i > 0; --i) std::swap(slots[i], slots[rng.uniform_index(i + 1)]);
    for (int i = 0; i < suspicious; ++i) is_suspicious[slots[static_cast<std::size_t>(i)]] = true;
  }

  std::vector<std::size_t> ordinary;
  for (int i = 0; i < subfolders; ++i) {
    const std::string name = kFolderNames[names[static_cast<std::size_t>(i)]];
    if (is_suspicious[static_cast<std::size_t>(i)]) {
      const bool denied = rng.bernoulli(0.5);
      const auto dir = tree.add_directory(user, name, denied ? Access::Denied : Access::Allowed);
      // Denied folders hold content the attacker never sees.
      if (denied) tree.add_file(dir, "data.bin");
      continue;
    }
    const auto dir = tree.add_directory(user, name);
    ordinary.push_back(dir);
    const auto fillers = shuffled_indices(kFillerNames, rng);
    const int files = rng.uniform_int(1, 3);
    for (int f = 0; f < files; ++f) tree.add_file(dir, kFillerNames[fillers[static_cast<std::size_t>(f)]]);
  }

  tree.add_file(ordinary[rng.uniform_index(ordinary.size())], "pin.txt", FileTag::PinFile);
  return tree;
}

}  // namespace decoynet
