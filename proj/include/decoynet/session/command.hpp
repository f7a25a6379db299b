#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace decoynet {

enum class ErrorCode {
  UnknownVerb,
  BadArity,
  BadArgument,
  UnknownMachine,
  UnknownExploit,
  ExploitNotPresent,
  WrongPhase,
  InsufficientTime,
  NoSuchPath,
  AccessDenied,
  FileNotFound,
  BadAddress,
  SessionEnded,
};

std::string_view to_string(ErrorCode code);

class CommandError : public std::runtime_error {
 public:
  CommandError(ErrorCode code, const std::string& detail) : std::runtime_error(detail), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace cmd {

struct NmapList {
  bool operator==(const NmapList&) const = default;
};
struct NmapProbe {
  std::string machine;
  bool rtt = false;
  bool operator==(const NmapProbe&) const = default;
};
struct CheckHs {
  std::string machine;
  bool operator==(const CheckHs&) const = default;
};
struct InfoExploit {
  std::string exploit;
  bool operator==(const InfoExploit&) const = default;
};
struct UseExploit {
  std::string exploit;
  std::string machine;
  bool operator==(const UseExploit&) const = default;
};
struct Ls {
  bool operator==(const Ls&) const = default;
};
struct Cd {
  std::string path;
  bool operator==(const Cd&) const = default;
};
struct Ps {
  bool operator==(const Ps&) const = default;
};
struct CheckVm {
  bool operator==(const CheckVm&) const = default;
};
struct Scp {
  std::string file;
  std::string address;
  bool operator==(const Scp&) const = default;
};
struct Logout {
  bool operator==(const Logout&) const = default;
};
struct Help {
  bool operator==(const Help&) const = default;
};

}  // namespace cmd

using Command = std::variant<cmd::NmapList, cmd::NmapProbe, cmd::CheckHs, cmd::InfoExploit, cmd::UseExploit, cmd::Ls,
                             cmd::Cd, cmd::Ps, cmd::CheckVm, cmd::Scp, cmd::Logout, cmd::Help>;

/// Parses one line of the attacker grammar:
///
///   nmap -sL all | nmap <System> [-rtt] | checkHS <System> | info_exploit <exploit>
///   use_exploit <exploit> <System> | ls | cd <path> | ps -A | checkVM
///   scp pin.txt <address> | logout | help
///
/// Verbs match case-insensitively; arguments are kept verbatim. Machine and
/// exploit names are not checked here. Throws CommandError with UnknownVerb,
/// BadArity or BadArgument.
Command parse_command(std::string_view line);

/// Canonical text form; parse_command(render_command(c)) == c.
std::string render_command(const Command& command);

/// Canonical verb, e.g. "nmap", "checkHS", "ps".
std::string_view verb(const Command& command);

/// The grammar lines listed by `help`.
std::string_view help_text();

}  // namespace decoynet
