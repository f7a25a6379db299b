#include <gtest/gtest.h>

#include "decoynet/session/session.hpp"
#include "test_support.hpp"

using namespace decoynet;
using namespace decoynet::testing;

namespace {

std::shared_ptr<const NetworkScenario> scenario(Condition c, int n = 40, int k = 20, std::uint64_t seed = 7) {
  ScenarioSpec spec;
  spec.condition = c;
  spec.n_machines = n;
  spec.n_honeypots = k;
  spec.seed = seed;
  return make_scenario(spec);
}

ErrorCode error_of(const CommandOutcome& o) {
  EXPECT_NE(o.error(), nullptr) << o.text;
  return o.error() ? o.error()->code : ErrorCode::SessionEnded;
}

}  // namespace

TEST(NmapList, ListsEveryMachineInIndexOrder) {
  Session s(scenario(Condition::Default), 1);
  const auto list = s.nmap_list();
  ASSERT_EQ(list.machines.size(), 40u);
  EXPECT_EQ(list.machines.front(), "System1");
  EXPECT_EQ(list.machines.back(), "System40");
  EXPECT_EQ(s.nmap_list(), list);
  const auto o = s.execute_line("nmap -sL all");
  EXPECT_TRUE(o.ok());
  EXPECT_EQ(o.time_charged_s, 0);
}

TEST(NmapList, SingleMachine) {
  Session s(scenario(Condition::Default, 1, 0), 1);
  EXPECT_EQ(s.nmap_list().machines, std::vector<std::string>{"System1"});
}

TEST(NmapList, RefusedInFoothold) {
  auto sc = scenario(Condition::Default);
  Session s(sc, 1);
  gain_foothold(s, first_of_kind(*sc, MachineKind::DefaultHoneypot));
  EXPECT_EQ(error_of(s.execute_line("nmap -sL all")), ErrorCode::WrongPhase);
}

TEST(NmapProbe, DefaultHoneypotRttCostsTenSeconds) {
  auto sc = scenario(Condition::Default);
  const auto& hp = first_of_kind(*sc, MachineKind::DefaultHoneypot);
  Session s(sc, 1);
  const auto o = s.execute_line("nmap " + hp.name + " -rtt");
  ASSERT_TRUE(o.ok()) << o.text;
  const auto& report = std::get<ProbeReport>(o.payload);
  ASSERT_TRUE(report.rtt);
  EXPECT_EQ(report.rtt->machine_ms, 1.0);
  EXPECT_EQ(report.rtt->benchmark_ms, 0.2);
  EXPECT_EQ(o.time_charged_s, 10);
  EXPECT_EQ(s.time_remaining(), 3590);
  EXPECT_EQ(report.os_label, s.config().obsolete_os_label);
  bool has_indicator = false;
  for (const auto& p : report.ports) has_indicator |= p.port == 2222;
  EXPECT_TRUE(has_indicator);
}

TEST(NmapProbe, ConcealedHoneypotShowsOnlyNormalPorts) {
  auto sc = scenario(Condition::ConcealedHoneypot);
  const auto& hp = first_of_kind(*sc, MachineKind::ConcealedHoneypot);
  Session s(sc, 1);
  const auto report = s.nmap_probe(hp.name, false);
  std::vector<std::uint16_t> ports;
  for (const auto& p : report.ports) ports.push_back(p.port);
  EXPECT_EQ(ports, (std::vector<std::uint16_t>{22, 80, 443, 3306}));
}

TEST(NmapProbe, WithoutRttIsFree) {
  Session s(scenario(Condition::Default), 1);
  const auto o = s.execute_line("nmap System1");
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.time_charged_s, 0);
  EXPECT_FALSE(std::get<ProbeReport>(o.payload).rtt);
  EXPECT_EQ(s.time_remaining(), 3600);
}

TEST(NmapProbe, ListsEachExploitUnderItsPort) {
  auto sc = scenario(Condition::Default);
  Session s(sc, 1);
  for (const auto& m : sc->machines()) {
    const auto report = s.nmap_probe(m.name, false);
    std::size_t listed = 0;
    for (const auto& p : report.ports) {
      for (const auto& e : p.exploits) {
        EXPECT_EQ(find_exploit(e)->port, p.port);
        ++listed;
      }
    }
    EXPECT_EQ(listed, m.exploits.size());
  }
}

TEST(NmapProbe, Errors) {
  EngineConfig c;
  c.time_budget_s = 5;
  Session s(scenario(Condition::Default), 1, c);
  EXPECT_EQ(error_of(s.execute_line("nmap System99")), ErrorCode::UnknownMachine);
  EXPECT_EQ(error_of(s.execute_line("nmap System1 -rtt")), ErrorCode::InsufficientTime);
  EXPECT_EQ(s.time_remaining(), 5);
}

TEST(NmapProbe, JitterStaysWithinBand) {
  EngineConfig c;
  c.rtt_jitter = 0.25;
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 3, c);
  for (int i = 0; i < 100; ++i) {
    const auto r = s.nmap_probe(real.name, true);
    EXPECT_GE(r.rtt->machine_ms, 0.2 * 0.75);
    EXPECT_LE(r.rtt->machine_ms, 0.2 * 1.25);
  }
}

TEST(CheckHs, ScoreInRangeAndChargesTenSeconds) {
  auto sc = scenario(Condition::Default);
  Session s(sc, 1);
  for (const auto& m : sc->machines()) {
    const double before = s.time_remaining();
    const auto o = s.execute_line("checkHS " + m.name);
    ASSERT_TRUE(o.ok());
    const double score = std::get<DeceptionScore>(o.payload).score;
    EXPECT_GE(score, 0.0);
    EXPECT_LE(score, 1.0);
    EXPECT_EQ(o.time_charged_s, 10);
    EXPECT_EQ(before - s.time_remaining(), 10);
  }
}

TEST(CheckHs, HalfOfHoneypotScoresLandHigh) {
  auto sc = scenario(Condition::Default);
  const auto& hp = first_of_kind(*sc, MachineKind::DefaultHoneypot);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 17, roomy_config());
  // Monte-Carlo check of the 50%-reliability rule: correct side is [0.5,1]
  // for honeypots and [0,0.5) for real machines.
  int hp_high = 0, real_low = 0;
  for (int i = 0; i < 10000; ++i) {
    hp_high += s.check_hs(hp.name).score >= 0.5;
    real_low += s.check_hs(real.name).score < 0.5;
  }
  EXPECT_NEAR(hp_high / 10000.0, 0.5, 0.015);
  EXPECT_NEAR(real_low / 10000.0, 0.5, 0.015);
}

TEST(CheckHs, ReliabilityParameterSkewsTheSide) {
  EngineConfig c = roomy_config();
  c.checkhs_reliability = 1.0;
  auto sc = scenario(Condition::Default);
  Session s(sc, 2, c);
  for (const auto& m : sc->machines()) EXPECT_EQ(s.check_hs(m.name).score >= 0.5, m.honeypot());
}

TEST(CheckHs, DeterministicOnReplay) {
  auto sc = scenario(Condition::Default);
  Session a(sc, 99), b(sc, 99);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.check_hs("System3").score, b.check_hs("System3").score);
}

TEST(CheckHs, NeedsTenSeconds) {
  EngineConfig c;
  c.time_budget_s = 9.5;
  Session s(scenario(Condition::Default), 1, c);
  EXPECT_EQ(error_of(s.execute_line("checkHS System1")), ErrorCode::InsufficientTime);
  EXPECT_EQ(error_of(s.execute_line("checkHS Nope")), ErrorCode::UnknownMachine);
}

TEST(InfoExploit, CatalogLookups) {
  Session s(scenario(Condition::Default), 1);
  EXPECT_EQ(s.info_exploit("http2_slow_read").disclosure_date, "2020-03-01");
  EXPECT_EQ(s.info_exploit("remote_buffer_overflow").disclosure_date, "2001-04-04");
  EXPECT_EQ(error_of(s.execute_line("info_exploit sql_injection")), ErrorCode::UnknownExploit);
  EXPECT_EQ(s.execute_line("info_exploit dos_attack").time_charged_s, 0);
}

TEST(UseExploit, DefaultHoneypotAlwaysFallsFirstTry) {
  auto sc = scenario(Condition::Default);
  for (const auto& m : sc->machines()) {
    if (m.kind != MachineKind::DefaultHoneypot) continue;
    Session s(sc, 5);
    EXPECT_TRUE(s.use_exploit(m.exploits.front().name, m.name).success);
    EXPECT_EQ(s.phase(), Phase::Foothold);
    EXPECT_EQ(s.current_machine(), m.name);
    EXPECT_EQ(s.working_directory(), "/");
  }
}

TEST(UseExploit, ConcealedRealRateConverges) {
  auto sc = scenario(Condition::ConcealedHoneypotReal);
  const auto& m = first_of_kind(*sc, MachineKind::ConcealedReal);
  Session s(sc, 8, roomy_config());
  int wins = 0;
  for (int i = 0; i < 10000; ++i) {
    if (s.use_exploit(m.exploits.front().name, m.name).success) {
      ++wins;
      s.logout();
    }
  }
  EXPECT_NEAR(wins / 10000.0, 0.8, 0.015);
}

TEST(UseExploit, ExploitNotOnTargetLeavesStateAlone) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1);
  const auto draws = s.rng_draws();
  EXPECT_EQ(error_of(s.execute_line("use_exploit remote_buffer_overflow " + real.name)), ErrorCode::ExploitNotPresent);
  EXPECT_EQ(error_of(s.execute_line("use_exploit sql_injection " + real.name)), ErrorCode::ExploitNotPresent);
  EXPECT_EQ(s.phase(), Phase::Recon);
  EXPECT_EQ(s.outcome(real.name), MachineOutcome::NotTouched);
  EXPECT_EQ(s.rng_draws(), draws);
  EXPECT_EQ(error_of(s.execute_line("use_exploit dos_attack System77")), ErrorCode::UnknownMachine);
}

TEST(UseExploit, FailureMarksAbandonedAndScoresNothing) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  for (std::uint64_t seed = 1;; ++seed) {
    Session s(sc, seed);
    if (s.use_exploit(real.exploits.front().name, real.name).success) continue;
    EXPECT_EQ(s.phase(), Phase::Recon);
    EXPECT_EQ(s.outcome(real.name), MachineOutcome::Abandoned);
    EXPECT_EQ(s.score(), 0);
    EXPECT_TRUE(s.ledger().empty());
    break;
  }
}

TEST(PostExploit, CheckVmPsAndFolders) {
  auto sc = scenario(Condition::Default);
  const auto& hp = first_of_kind(*sc, MachineKind::DefaultHoneypot);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1, roomy_config());

  gain_foothold(s, hp);
  EXPECT_TRUE(s.check_vm().virtual_machine);
  EXPECT_EQ(s.ps().processes.size(), 2u);
  s.logout();

  gain_foothold(s, real);
  EXPECT_FALSE(s.check_vm().virtual_machine);
  EXPECT_EQ(s.ps().processes.size(), 10u);
}

TEST(PostExploit, CdIntoDeniedFolderIsRefused) {
  auto sc = scenario(Condition::Default);
  const auto& hp = first_of_kind(*sc, MachineKind::DefaultHoneypot);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, hp);

  const auto user = *hp.files.user_folder();
  std::optional<std::string> denied;
  for (auto c : hp.files.node(user).children) {
    if (hp.files.node(c).access == Access::Denied) denied = hp.files.path_of(c);
  }
  if (!denied) GTEST_SKIP() << "no denied folder on this machine";
  ASSERT_TRUE(s.cd(hp.files.path_of(user)).path.size() > 1);
  const auto before = s.working_directory();
  EXPECT_EQ(error_of(s.execute_line("cd " + *denied)), ErrorCode::AccessDenied);
  EXPECT_EQ(s.working_directory(), before);
  EXPECT_EQ(error_of(s.execute_line("cd /not/here")), ErrorCode::NoSuchPath);
}

TEST(PostExploit, LsListsChildrenSortedByName) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, real);
  s.cd(pin_directory(real));
  const auto listing = s.ls();
  EXPECT_EQ(listing.path, pin_directory(real));
  EXPECT_TRUE(std::is_sorted(listing.entries.begin(), listing.entries.end(),
                             [](const auto& a, const auto& b) { return a.name < b.name; }));
  EXPECT_TRUE(std::any_of(listing.entries.begin(), listing.entries.end(),
                          [](const auto& e) { return e.name == "pin.txt" && !e.directory; }));
}

TEST(Scp, RealMachinePaysHundred) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, real);
  s.cd(pin_directory(real));
  const auto o = s.execute_line("scp pin.txt 172.22.31.31");
  ASSERT_TRUE(o.ok()) << o.text;
  EXPECT_EQ(o.score_delta, 100);
  EXPECT_EQ(s.outcome(real.name), MachineOutcome::ExploitedFetched);
}

TEST(Scp, HoneypotCostsHundred) {
  auto sc = scenario(Condition::Default);
  const auto& hp = first_of_kind(*sc, MachineKind::DefaultHoneypot);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, hp);
  s.cd(pin_directory(hp));
  EXPECT_EQ(s.execute_line("scp pin.txt 172.22.31.31").score_delta, -100);
}

TEST(Scp, WrongDirectoryOrAddress) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1, roomy_config());
  EXPECT_EQ(error_of(s.execute_line("scp pin.txt 172.22.31.31")), ErrorCode::WrongPhase);
  gain_foothold(s, real);
  auto o = s.execute_line("scp pin.txt 172.22.31.31");
  EXPECT_EQ(error_of(o), ErrorCode::FileNotFound);
  EXPECT_EQ(o.score_delta, 0);
  s.cd(pin_directory(real));
  EXPECT_EQ(error_of(s.execute_line("scp pin.txt 10.0.0.1")), ErrorCode::BadAddress);
  EXPECT_EQ(s.score(), 0);
}

TEST(Scp, SecondCopyPaysNothing) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, real);
  s.cd(pin_directory(real));
  EXPECT_EQ(s.scp("pin.txt", "172.22.31.31").points, 100);
  EXPECT_EQ(s.scp("pin.txt", "172.22.31.31").points, 0);
  EXPECT_EQ(s.score(), 100);
}

TEST(Logout, AfterFetchAddsNothing) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, real);
  s.cd(pin_directory(real));
  s.scp("pin.txt", "172.22.31.31");
  const auto o = s.execute_line("logout");
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.score_delta, 0);
  EXPECT_TRUE(std::get<FeedbackReport>(o.payload).fetched);
  EXPECT_EQ(std::get<FeedbackReport>(o.payload).total_score, 100);
  EXPECT_EQ(s.score(), 100);
  EXPECT_EQ(s.phase(), Phase::Recon);
}

TEST(Logout, WithoutFetchOnHoneypotCostsThirty) {
  auto sc = scenario(Condition::Default);
  const auto& hp = first_of_kind(*sc, MachineKind::DefaultHoneypot);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, hp);
  const auto o = s.execute_line("logout");
  EXPECT_EQ(o.score_delta, -30);
  EXPECT_EQ(s.outcome(hp.name), MachineOutcome::ExploitedNoFetch);
  EXPECT_EQ(error_of(s.execute_line("logout")), ErrorCode::WrongPhase);
}

TEST(Logout, RealWithoutFetchPaysThirty) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, real);
  EXPECT_EQ(s.logout().points, 30);
}

TEST(Scoring, ReexploitingASettledMachinePaysNothing) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, real);
  s.logout();
  gain_foothold(s, real);
  s.cd(pin_directory(real));
  EXPECT_EQ(s.scp("pin.txt", "172.22.31.31").points, 0);
  EXPECT_EQ(s.logout().points, 0);
  EXPECT_EQ(s.score(), 30);
  EXPECT_EQ(s.outcome(real.name), MachineOutcome::ExploitedNoFetch);
  EXPECT_EQ(s.ledger().size(), 1u);
}

TEST(ChargeTime, Examples) {
  Session s(scenario(Condition::Default), 1);
  EXPECT_EQ(s.charge_time(10).time_remaining_s, 3590);
  EXPECT_EQ(s.charge_time(0).time_remaining_s, 3590);
  EXPECT_FALSE(s.ended());

  EngineConfig c;
  c.time_budget_s = 5;
  Session t(scenario(Condition::Default), 1, c);
  const auto state = t.charge_time(10);
  EXPECT_EQ(state.time_remaining_s, 0);
  EXPECT_TRUE(state.session_ended);
  EXPECT_TRUE(t.ended());
}

TEST(ChargeTime, ExpiryInFootholdSettlesAsLogout) {
  auto sc = scenario(Condition::Default);
  const auto& hp = first_of_kind(*sc, MachineKind::DefaultHoneypot);
  Session s(sc, 1);
  gain_foothold(s, hp);
  const auto o = s.execute_line("ls", 4000);
  EXPECT_TRUE(o.session_ended);
  EXPECT_EQ(o.score_delta, -30);
  ASSERT_TRUE(std::holds_alternative<TimeExpired>(o.payload));
  EXPECT_EQ(std::get<TimeExpired>(o.payload).settled_machine, hp.name);
  EXPECT_EQ(s.score(), -30);
  EXPECT_EQ(error_of(s.execute_line("help")), ErrorCode::SessionEnded);
}

TEST(ChargeTime, CommandCostCanEndTheSession) {
  EngineConfig c;
  c.time_budget_s = 10;
  Session s(scenario(Condition::Default), 1, c);
  const auto o = s.execute_line("checkHS System1");
  EXPECT_TRUE(o.ok());
  EXPECT_TRUE(o.session_ended);
  EXPECT_EQ(s.time_remaining(), 0);
}

TEST(ChargeTime, ParseErrorsStillCostThinkTime) {
  Session s(scenario(Condition::Default), 1);
  const auto o = s.execute_line("bogus", 12.5);
  EXPECT_EQ(error_of(o), ErrorCode::UnknownVerb);
  EXPECT_EQ(s.time_remaining(), 3600 - 12.5);
  EXPECT_EQ(o.time_charged_s, 0);
}

TEST(PhaseMachine, ExhaustiveCommandByPhaseMatrix) {
  auto sc = scenario(Condition::Default);
  const auto& hp = first_of_kind(*sc, MachineKind::DefaultHoneypot);
  const std::string exploit = hp.exploits.front().name;
  const std::string pin_dir = pin_directory(hp);

  struct Row {
    std::string line;
    bool recon;
    bool foothold;
  };
  const std::vector<Row> rows{
      {"nmap -sL all", true, false},        {"nmap " + hp.name, true, false},
      {"nmap " + hp.name + " -rtt", true, false}, {"checkHS " + hp.name, true, false},
      {"use_exploit " + exploit + " " + hp.name, true, false},
      {"info_exploit " + exploit, true, true}, {"help", true, true},
      {"ls", false, true},                  {"cd " + pin_dir, false, true},
      {"ps -A", false, true},               {"checkVM", false, true},
      {"scp pin.txt 172.22.31.31", false, true}, {"logout", false, true},
  };
  for (const auto& row : rows) {
    SCOPED_TRACE(row.line);
    {
      Session s(sc, 1);
      const auto o = s.execute_line(row.line);
      if (row.recon) {
        EXPECT_TRUE(o.ok()) << o.text;
      } else {
        EXPECT_EQ(error_of(o), ErrorCode::WrongPhase);
      }
    }
    {
      Session s(sc, 1);
      gain_foothold(s, hp);
      if (row.line.starts_with("scp")) s.cd(pin_dir);
      const auto o = s.execute_line(row.line);
      if (row.foothold) {
        EXPECT_TRUE(o.ok()) << o.text;
      } else {
        EXPECT_EQ(error_of(o), ErrorCode::WrongPhase);
      }
    }
    {
      EngineConfig c;
      c.time_budget_s = 1;
      Session s(sc, 1, c);
      s.charge_time(1);
      EXPECT_EQ(error_of(s.execute_line(row.line)), ErrorCode::SessionEnded);
    }
  }
}

TEST(Session, EndsWhenEverySystemIsSettled) {
  auto sc = scenario(Condition::Default, 2, 1);
  Session s(sc, 1, roomy_config());
  gain_foothold(s, sc->machines()[0]);
  EXPECT_FALSE(s.execute_line("logout").session_ended);
  gain_foothold(s, sc->machines()[1]);
  const auto o = s.execute_line("logout");
  EXPECT_TRUE(o.session_ended);
  EXPECT_TRUE(s.ended());
}

TEST(Session, TimeNeverIncreasesAndScoreMatchesLedger) {
  auto sc = scenario(Condition::ConcealedHoneypotReal);
  Session s(sc, 4);
  std::mt19937_64 gen(4);
  const std::vector<std::string> verbs{"nmap -sL all", "checkHS System", "nmap System", "use_exploit X System",
                                       "ls", "ps -A", "checkVM", "logout", "scp pin.txt 172.22.31.31", "cd .."};
  double last = s.time_remaining();
  for (int i = 0; i < 400 && !s.ended(); ++i) {
    std::string line = verbs[gen() % verbs.size()];
    const auto& m = sc->machines()[gen() % sc->machines().size()];
    if (line.ends_with("System")) line += std::to_string(gen() % 40 + 1);
    if (line.starts_with("use_exploit")) line = "use_exploit " + m.exploits.front().name + " " + m.name;
    s.execute_line(line, static_cast<double>(gen() % 20));
    EXPECT_LE(s.time_remaining(), last);
    last = s.time_remaining();
    int sum = 0;
    for (const auto& entry : s.ledger()) sum += entry.points;
    EXPECT_EQ(sum, s.score());
  }
}

TEST(Session, SameInputsGiveSameOutcomes) {
  auto sc = scenario(Condition::ConcealedHoneypot);
  const std::vector<std::string> script{"nmap -sL all", "checkHS System2", "nmap System2 -rtt",
                                        "use_exploit java_deserialize_rce System2", "use_exploit http2_slow_read System2",
                                        "ls", "logout"};
  Session a(sc, 31), b(sc, 31);
  for (const auto& line : script) EXPECT_EQ(a.execute_line(line, 3), b.execute_line(line, 3));
}

TEST(Outcome, JsonRoundTrip) {
  auto sc = scenario(Condition::Default);
  const auto& real = first_of_kind(*sc, MachineKind::DefaultReal);
  Session s(sc, 1, roomy_config());
  std::vector<CommandOutcome> outcomes{s.execute_line("help"), s.execute_line("nmap -sL all"),
                                       s.execute_line("nmap " + real.name + " -rtt"), s.execute_line("checkHS System1"),
                                       s.execute_line("info_exploit dos_attack"), s.execute_line("bogus")};
  gain_foothold(s, real);
  for (const auto* line : {"ls", "ps -A", "checkVM", "cd /"}) outcomes.push_back(s.execute_line(line));
  s.cd(pin_directory(real));
  outcomes.push_back(s.execute_line("scp pin.txt 172.22.31.31"));
  outcomes.push_back(s.execute_line("logout"));
  outcomes.push_back(s.execute_line("ls", 1e10));
  for (const auto& o : outcomes) EXPECT_EQ(outcome_from_json(to_json(o)), o) << o.text;
}
