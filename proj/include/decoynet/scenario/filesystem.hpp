#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decoynet/scenario/rng.hpp"
#include "decoynet/scenario/types.hpp"

namespace decoynet {

enum class NodeKind { Directory, File };
enum class Access { Allowed, Denied };
enum class FileTag { None, PinFile, Filler };

struct FsNode {
  std::string name;
  NodeKind kind = NodeKind::Directory;
  Access access = Access::Allowed;
  FileTag tag = FileTag::None;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;

  bool operator==(const FsNode&) const = default;
};

enum class PathStatus { Ok, NoSuchPath, AccessDenied, NotADirectory };

struct PathLookup {
  PathStatus status = PathStatus::Ok;
  std::size_t node = 0;
};

/// Rooted directory tree stored as an arena. Node 0 is "/".
class FileTree {
 public:
  FileTree();

  std::size_t add_directory(std::size_t parent, std::string name, Access access = Access::Allowed);
  std::size_t add_file(std::size_t parent, std::string name, FileTag tag = FileTag::Filler);

  static constexpr std::size_t root() { return 0; }
  const FsNode& node(std::size_t index) const { return nodes_.at(index); }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<FsNode>& nodes() const { return nodes_; }

  std::optional<std::size_t> child(std::size_t dir, std::string_view name) const;

  /// Resolves an absolute or relative directory path from `cwd`. Walking
  /// into a Denied directory stops with AccessDenied.
  PathLookup resolve_directory(std::string_view path, std::size_t cwd) const;

  std::string path_of(std::size_t index) const;

  /// The single directory directly under the root.
  std::optional<std::size_t> user_folder() const;

  /// Subfolders of the user folder that are empty or Denied.
  int suspicious_folder_count() const;

  std::vector<std::size_t> pin_files() const;

  /// Rebuilds a tree from a node list, validating parent/child links.
  static FileTree from_nodes(std::vector<FsNode> nodes);

  bool operator==(const FileTree&) const = default;

 private:
  std::vector<FsNode> nodes_;
};

/// Generates the user-folder layout for one machine. The subfolder count is
/// 5 or 6; the number of empty-or-denied subfolders is drawn from the
/// profile's range, capped so at least one ordinary folder remains for pin.txt.
FileTree generate_filesystem(const FeatureVector& profile, Rng& rng);

}  // namespace decoynet
