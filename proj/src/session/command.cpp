#include "decoynet/session/command.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace decoynet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownVerb: return "UnknownVerb";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::UnknownMachine: return "UnknownMachine";
    case ErrorCode::UnknownExploit: return "UnknownExploit";
    case ErrorCode::ExploitNotPresent: return "ExploitNotPresent";
    case ErrorCode::WrongPhase: return "WrongPhase";
    case ErrorCode::InsufficientTime: return "InsufficientTime";
    case ErrorCode::NoSuchPath: return "NoSuchPath";
    case ErrorCode::AccessDenied: return "AccessDenied";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::BadAddress: return "BadAddress";
    case ErrorCode::SessionEnded: return "SessionEnded";
  }
  return "?";
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void expect_arity(std::string_view verb, const std::vector<std::string_view>& args, std::size_t n) {
  if (args.size() != n) {
    throw CommandError(ErrorCode::BadArity, std::string(verb) + " takes " + std::to_string(n) + " argument" +
                                                (n == 1 ? "" : "s") + ", got " + std::to_string(args.size()));
  }
}

[[noreturn]] void bad_argument(std::string_view token, std::string_view why) {
  throw CommandError(ErrorCode::BadArgument, "unexpected '" + std::string(token) + "': " + std::string(why));
}

}  // namespace

Command parse_command(std::string_view line) {
  auto tokens = tokenize(line);
  if (tokens.empty()) throw CommandError(ErrorCode::BadArity, "empty command");
  const auto word = lower(tokens.front());
  const std::vector<std::string_view> args(tokens.begin() + 1, tokens.end());

  if (word == "nmap") {
    if (args.empty() || args.size() > 2) throw CommandError(ErrorCode::BadArity, "usage: nmap -sL all | nmap <System> [-rtt]");
    if (args[0] == "-sL") {
      expect_arity("nmap -sL", args, 2);
      if (args[1] != "all") bad_argument(args[1], "expected 'all'");
      return cmd::NmapList{};
    }
    if (args[0].starts_with('-')) bad_argument(args[0], "expected a system name");
    if (args.size() == 2 && args[1] != "-rtt") bad_argument(args[1], "the only probe option is -rtt");
    return cmd::NmapProbe{std::string(args[0]), args.size() == 2};
  }
  if (word == "checkhs") {
    expect_arity("checkHS", args, 1);
    return cmd::CheckHs{std::string(args[0])};
  }
  if (word == "info_exploit") {
    expect_arity("info_exploit", args, 1);
    return cmd::InfoExploit{std::string(args[0])};
  }
  if (word == "use_exploit") {
    expect_arity("use_exploit", args, 2);
    return cmd::UseExploit{std::string(args[0]), std::string(args[1])};
  }
  if (word == "ls") {
    expect_arity("ls", args, 0);
    return cmd::Ls{};
  }
  if (word == "cd") {
    expect_arity("cd", args, 1);
    return cmd::Cd{std::string(args[0])};
  }
  if (word == "ps") {
    expect_arity("ps", args, 1);
    if (args[0] != "-A") bad_argument(args[0], "expected -A");
    return cmd::Ps{};
  }
  if (word == "checkvm") {
    expect_arity("checkVM", args, 0);
    return cmd::CheckVm{};
  }
  if (word == "scp") {
    expect_arity("scp", args, 2);
    if (args[0] != "pin.txt") bad_argument(args[0], "only pin.txt can be transferred");
    return cmd::Scp{std::string(args[0]), std::string(args[1])};
  }
  if (word == "logout") {
    expect_arity("logout", args, 0);
    return cmd::Logout{};
  }
  if (word == "help") {
    expect_arity("help", args, 0);
    return cmd::Help{};
  }
  throw CommandError(ErrorCode::UnknownVerb, "unknown command '" + std::string(tokens.front()) + "'");
}

namespace {

struct Renderer {
  std::string operator()(const cmd::NmapList&) const { return "nmap -sL all"; }
  std::string operator()(const cmd::NmapProbe& c) const { return "nmap " + c.machine + (c.rtt ? " -rtt" : ""); }
  std::string operator()(const cmd::CheckHs& c) const { return "checkHS " + c.machine; }
  std::string operator()(const cmd::InfoExploit& c) const { return "info_exploit " + c.exploit; }
  std::string operator()(const cmd::UseExploit& c) const { return "use_exploit " + c.exploit + " " + c.machine; }
  std::string operator()(const cmd::Ls&) const { return "ls"; }
  std::string operator()(const cmd::Cd& c) const { return "cd " + c.path; }
  std::string operator()(const cmd::Ps&) const { return "ps -A"; }
  std::string operator()(const cmd::CheckVm&) const { return "checkVM"; }
  std::string operator()(const cmd::Scp& c) const { return "scp " + c.file + " " + c.address; }
  std::string operator()(const cmd::Logout&) const { return "logout"; }
  std::string operator()(const cmd::Help&) const { return "help"; }
};

struct VerbOf {
  std::string_view operator()(const cmd::NmapList&) const { return "nmap"; }
  std::string_view operator()(const cmd::NmapProbe&) const { return "nmap"; }
  std::string_view operator()(const cmd::CheckHs&) const { return "checkHS"; }
  std::string_view operator()(const cmd::InfoExploit&) const { return "info_exploit"; }
  std::string_view operator()(const cmd::UseExploit&) const { return "use_exploit"; }
  std::string_view operator()(const cmd::Ls&) const { return "ls"; }
  std::string_view operator()(const cmd::Cd&) const { return "cd"; }
  std::string_view operator()(const cmd::Ps&) const { return "ps"; }
  std::string_view operator()(const cmd::CheckVm&) const { return "checkVM"; }
  std::string_view operator()(const cmd::Scp&) const { return "scp"; }
  std::string_view operator()(const cmd::Logout&) const { return "logout"; }
  std::string_view operator()(const cmd::Help&) const { return "help"; }
};

}  // namespace

std::string render_command(const Command& command) { return std::visit(Renderer{}, command); }

std::string_view verb(const Command& command) { return std::visit(VerbOf{}, command); }

std::string_view help_text() {
  return "nmap -sL all                    list systems available to probe\n"
         "nmap <System> [-rtt]            ports, exploits and OS of a system; -rtt adds round-trip times (10 s)\n"
         "checkHS <System>                deception likelihood score in [0,1], 50% reliable (10 s)\n"
         "info_exploit <exploit>          disclosure date and description of an exploit\n"
         "use_exploit <exploit> <System>  attack a system with one of its listed exploits\n"
         "ls                              list the current directory (after exploitation)\n"
         "cd <path>                       change directory (after exploitation)\n"
         "ps -A                           list running processes (after exploitation)\n"
         "checkVM                         report whether the system is virtualised (after exploitation)\n"
         "scp pin.txt <address>           copy pin.txt to your machine (after exploitation)\n"
         "logout                          leave the exploited system\n"
         "help                            show this list\n";
}

}  // namespace decoynet
