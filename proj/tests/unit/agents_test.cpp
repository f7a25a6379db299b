#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "agent_support.hpp"
#include "decoynet/agents/bot.hpp"
#include "decoynet/agents/observation.hpp"
#include "decoynet/agents/policy.hpp"
#include "decoynet/protocol/replay.hpp"
#include "test_support.hpp"

using namespace decoynet;
using json = nlohmann::json;

namespace {

constexpr PolicyKind kAllPolicies[] = {PolicyKind::UniformRandom, PolicyKind::CheckHsThreshold,
                                       PolicyKind::FeatureHeuristic, PolicyKind::Exhaustive};

ScenarioSpec spec_for(Condition c, std::uint64_t seed, int n = 40, int k = 20) {
  ScenarioSpec s;
  s.condition = c;
  s.seed = seed;
  s.n_machines = n;
  s.n_honeypots = k;
  return s;
}

PolicySpec policy(PolicyKind kind) {
  PolicySpec p;
  p.kind = kind;
  return p;
}

std::vector<std::string> exploited_machines(const BotRun& run) {
  std::vector<std::string> out;
  for (const auto& r : run.records) {
    if (r.kind == RecordKind::Command && r.data.at("type") == "exploit") out.push_back(r.data.at("data").at("machine"));
  }
  return out;
}

/// Same machines, with the kind labels permuted. Only scoring and checkHS
/// read the labels.
std::shared_ptr<const NetworkScenario> relabel(const NetworkScenario& s, std::uint64_t seed) {
  auto machines = s.machines();
  std::vector<MachineKind> kinds;
  for (const auto& m : machines) kinds.push_back(m.kind);
  Rng rng(seed);
  for (std::size_t i = kinds.size(); i > 1; --i) std::swap(kinds[i - 1], kinds[rng.uniform_index(i)]);
  for (std::size_t i = 0; i < machines.size(); ++i) machines[i].kind = kinds[i];
  return std::make_shared<const NetworkScenario>(s.spec(), s.id(), std::move(machines));
}

}  // namespace

TEST(Observation, BuildsViewsFromOutcomesOnly) {
  auto scenario = make_scenario(spec_for(Condition::Default, 3, 6, 3));
  const auto obs = decoynet::testing::observe_everything(scenario, 11);

  ASSERT_EQ(obs.machines().size(), 6u);
  for (const auto& m : scenario->machines()) {
    const auto& v = obs.view(m.name);
    ASSERT_TRUE(v.probe && v.rtt && v.process_count && v.virtual_machine && v.suspicious_folders);
    EXPECT_EQ(*v.process_count, static_cast<std::size_t>(m.features.running_process_count));
    EXPECT_EQ(*v.virtual_machine, m.features.host == HostType::Virtual);
    EXPECT_EQ(v.successes, 1);
    EXPECT_TRUE(v.settled);
    EXPECT_FALSE(v.fetched);
    EXPECT_EQ(v.points, m.honeypot() ? -30 : 30);
  }
  EXPECT_FALSE(obs.foothold());
  EXPECT_EQ(obs.score(), 0);
}

TEST(Observation, TracksTimeAndErrors) {
  auto scenario = make_scenario(spec_for(Condition::Default, 3, 4, 2));
  Session s(scenario, 1);
  Observation obs(3600);
  const Command probe = cmd::NmapProbe{"System1", true};
  obs.record(probe, s.execute(probe, 15), 15);
  EXPECT_DOUBLE_EQ(obs.time_remaining(), 3600 - 15 - 10);
  EXPECT_DOUBLE_EQ(obs.time_remaining(), s.time_remaining());

  const Command ls = cmd::Ls{};
  obs.record(ls, s.execute(ls), 0);
  ASSERT_TRUE(obs.last_error());
  EXPECT_EQ(obs.last_error()->code, ErrorCode::WrongPhase);
  obs.record(probe, s.execute(probe), 0);
  EXPECT_FALSE(obs.last_error());
  EXPECT_EQ(obs.commands(), 3u);
}

TEST(Observation, FolderCountMatchesGroundTruth) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto scenario = make_scenario(spec_for(Condition::Default, seed, 8, 4));
    const auto obs = decoynet::testing::observe_everything(scenario, seed);
    for (const auto& m : scenario->machines()) {
      EXPECT_EQ(*obs.view(m.name).suspicious_folders, m.files.suspicious_folder_count()) << m.name;
    }
  }
}

TEST(PolicySpecJson, RoundTripsAndValidates) {
  PolicySpec p;
  p.kind = PolicyKind::CheckHsThreshold;
  p.tau = 0.25;
  p.time.default_s = 20;
  p.time.per_verb["checkHS"] = 5;
  p.heuristic.w_rtt = 2.5;
  p.heuristic.indicator_ports = {22};
  p.max_attempts = 3;
  EXPECT_EQ(policy_spec_from_json(to_json(p)), p);
  EXPECT_EQ(policy_spec_from_json(json::object()), PolicySpec{});

  EXPECT_THROW(policy_spec_from_json({{"tau", 1.5}}), std::invalid_argument);
  EXPECT_THROW(policy_spec_from_json({{"tau", -0.1}}), std::invalid_argument);
  EXPECT_THROW(policy_spec_from_json({{"kind", "psychic"}}), std::invalid_argument);
  EXPECT_THROW(policy_spec_from_json({{"time", {{"default_s", 0}}}}), std::invalid_argument);
  EXPECT_THROW(policy_spec_from_json({{"time", {{"per_verb", {{"ls", -1}}}}}}), std::invalid_argument);
}

TEST(TimeModel, PerVerbOverridesDefault) {
  TimeModel t;
  t.per_verb["checkHS"] = 4;
  EXPECT_DOUBLE_EQ(t.elapsed_for(cmd::CheckHs{"System1"}), 4);
  EXPECT_DOUBLE_EQ(t.elapsed_for(cmd::Ls{}), 15);
}

TEST(Suspicion, DefaultProfilesScoreAllOrNothing) {
  // Default honeypots show every indicator and default reals none, so with
  // unit weights the scores are exactly 6 and 0.
  auto scenario = make_scenario(spec_for(Condition::Default, 21));
  const auto obs = decoynet::testing::observe_everything(scenario, 21);
  const HeuristicParams params;
  for (const auto& m : scenario->machines()) {
    EXPECT_DOUBLE_EQ(suspicion_score(obs.view(m.name), params), m.honeypot() ? 6.0 : 0.0) << m.name;
  }
}

TEST(Suspicion, ConcealedHoneypotHidesThePreExploitIndicators) {
  auto scenario = make_scenario(spec_for(Condition::ConcealedHoneypot, 21));
  Session s(scenario, 5, decoynet::testing::roomy_config());
  Observation obs(1e9);
  auto run = [&](const Command& c) { obs.record(c, s.execute(c), 0); };
  run(cmd::NmapList{});
  for (const auto& m : obs.machines()) run(cmd::NmapProbe{m, true});
  for (const auto& m : obs.machines()) EXPECT_DOUBLE_EQ(suspicion_score(obs.view(m), HeuristicParams{}), 0.0);
}

TEST(Suspicion, WeightsScaleIndicators) {
  MachineView v;
  v.virtual_machine = true;
  v.process_count = 2;
  HeuristicParams p;
  p.w_vm = 0.5;
  p.w_processes = 4;
  EXPECT_DOUBLE_EQ(suspicion_score(v, p), 4.5);
  v.process_count = 10;
  EXPECT_DOUBLE_EQ(suspicion_score(v, p), 0.5);
}

TEST(Ranking, DefaultPutsEveryHoneypotAfterEveryReal) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto scenario = make_scenario(spec_for(Condition::Default, seed));
    const auto obs = decoynet::testing::observe_everything(scenario, seed);
    Rng rng(seed);
    const auto order = rank_by_suspicion(obs, HeuristicParams{}, rng);
    ASSERT_EQ(order.size(), 40u);
    for (std::size_t i = 0; i < order.size(); ++i) {
      EXPECT_EQ(scenario->find(order[i])->honeypot(), i >= 20) << "seed " << seed << " rank " << i;
    }
  }
}

TEST(UniformRandom, ReconStepTargetsAnUnsettledMachine) {
  auto scenario = make_scenario(spec_for(Condition::Default, 4, 6, 3));
  Session s(scenario, 4);
  Observation obs(3600);
  auto bot = make_policy(policy(PolicyKind::UniformRandom), 9);
  auto step = [&] {
    auto c = bot->next(obs);
    EXPECT_TRUE(c);
    obs.record(*c, s.execute(*c), 0);
    return *c;
  };
  EXPECT_TRUE(std::holds_alternative<cmd::NmapList>(step()));

  std::set<std::string> targets;
  for (int i = 0; i < 400 && !obs.foothold(); ++i) {
    const auto c = step();
    if (const auto* u = std::get_if<cmd::UseExploit>(&c)) {
      EXPECT_FALSE(obs.view(u->machine).settled);
      EXPECT_TRUE(scenario->find(u->machine)->has_exploit(u->exploit));
      targets.insert(u->machine);
    }
  }
  EXPECT_TRUE(obs.foothold());
}

TEST(UniformRandom, PicksTargetsUniformly) {
  // First exploit target over many policy seeds; each of 6 machines ~1/6.
  auto scenario = make_scenario(spec_for(Condition::Default, 4, 6, 3));
  std::map<std::string, int> first;
  const int trials = 6000;
  for (int seed = 0; seed < trials; ++seed) {
    Session s(scenario, 1);
    Observation obs(3600);
    auto p = make_policy(policy(PolicyKind::UniformRandom), seed);
    for (;;) {
      const auto c = *p->next(obs);
      if (const auto* u = std::get_if<cmd::UseExploit>(&c)) {
        ++first[u->machine];
        break;
      }
      obs.record(c, s.execute(c), 0);
    }
  }
  ASSERT_EQ(first.size(), 6u);
  for (const auto& [m, count] : first) EXPECT_NEAR(count / static_cast<double>(trials), 1.0 / 6, 0.025) << m;
}

TEST(CheckHsThreshold, NeverExploitsAMachineScoredAtOrAboveTau) {
  const Observation empty(3600);
  Observation obs(3600);
  obs.record(cmd::NmapList{}, CommandOutcome{"", MachineList{{"System1", "System3"}}, 0, 0, false}, 0);
  obs.record(cmd::CheckHs{"System3"}, CommandOutcome{"", DeceptionScore{"System3", 0.8}, 10, 0, false}, 0);
  obs.record(cmd::CheckHs{"System1"}, CommandOutcome{"", DeceptionScore{"System1", 0.2}, 10, 0, false}, 0);
  auto p = make_policy(policy(PolicyKind::CheckHsThreshold), 1);
  for (int i = 0; i < 20; ++i) {
    const auto c = p->next(obs);
    ASSERT_TRUE(c);
    EXPECT_NE(render_command(*c).find("System1"), std::string::npos) << render_command(*c);
  }

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto run = run_bot(policy(PolicyKind::CheckHsThreshold), spec_for(Condition::Default, seed), seed);
    std::map<std::string, double> latest;
    for (const auto& r : run.records) {
      if (r.kind != RecordKind::Command) continue;
      const auto& d = r.data.at("data");
      if (r.data.at("type") == "checkhs") latest[d.at("machine")] = d.at("score");
      if (r.data.at("type") == "exploit") {
        ASSERT_TRUE(latest.contains(d.at("machine")));
        EXPECT_LT(latest[d.at("machine")], 0.5);
      }
    }
  }
}

TEST(FeatureHeuristic, UnderDefaultNeverAttacksAHoneypotBeforeAReal) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto spec = spec_for(Condition::Default, seed);
    const auto run = run_bot(policy(PolicyKind::FeatureHeuristic), spec, seed);
    auto scenario = make_scenario(spec);
    bool seen_honeypot = false;
    for (const auto& m : exploited_machines(run)) {
      if (scenario->find(m)->honeypot()) {
        seen_honeypot = true;
      } else {
        EXPECT_FALSE(seen_honeypot) << "seed " << seed;
      }
    }
    for (const auto& r : run.records) {
      if (r.kind == RecordKind::Command && r.data.at("type") == "transfer") {
        EXPECT_FALSE(scenario->find(r.data.at("data").at("machine").get<std::string>())->honeypot());
      }
    }
  }
}

TEST(RunBot, ExhaustiveSettlesASmallScenario) {
  EngineConfig roomy = decoynet::testing::roomy_config();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto run = run_bot(policy(PolicyKind::Exhaustive), spec_for(Condition::Default, seed, 4, 2), seed, roomy);
    EXPECT_EQ(run.stop_reason, "all-settled");
    EXPECT_TRUE(run.session_ended);
    auto replayed = replay_log(run.records);
    EXPECT_TRUE(replayed.all_settled());
    EXPECT_EQ(replayed.ledger().size(), 4u);
  }
}

TEST(RunBot, FifteenSecondPacingCapsCommandsAt240) {
  for (auto kind : kAllPolicies) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto run = run_bot(policy(kind), spec_for(Condition::ConcealedHoneypotReal, seed), seed);
      EXPECT_LE(run.commands.size(), 240u) << to_string(kind);
      EXPECT_GT(run.commands.size(), 0u);
    }
  }
}

TEST(RunBot, TerminatesForEveryPolicyAndCondition) {
  for (auto kind : kAllPolicies) {
    for (auto c : kAllConditions) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto run = run_bot(policy(kind), spec_for(c, seed), seed);
        EXPECT_TRUE(run.stop_reason == "time" || run.stop_reason == "all-settled" ||
                    run.stop_reason == "policy-exhausted")
            << run.stop_reason;
        if (run.stop_reason == "time") {
          EXPECT_TRUE(run.session_ended);
        }
      }
    }
  }
}

TEST(RunBot, IdenticalInputsGiveIdenticalLogs) {
  for (auto kind : kAllPolicies) {
    const auto spec = spec_for(Condition::ConcealedHoneypot, 77);
    const auto a = run_bot(policy(kind), spec, 5);
    const auto b = run_bot(policy(kind), spec, 5);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      EXPECT_EQ(serialize_record(a.records[i]), serialize_record(b.records[i]));
    }
    const auto c = run_bot(policy(kind), spec, 6);
    EXPECT_NE(a.commands, c.commands) << to_string(kind);
  }
}

TEST(RunBot, LogsReplayCleanly) {
  for (auto kind : kAllPolicies) {
    for (auto c : kAllConditions) {
      const auto run = run_bot(policy(kind), spec_for(c, 8), 8);
      const auto replayed = replay_log(run.records);
      EXPECT_EQ(replayed.score(), run.final_score);
      EXPECT_DOUBLE_EQ(replayed.time_remaining(), run.time_remaining_s);
    }
  }
}

TEST(RunBot, UniformRandomHitsHoneypotsHalfTheTime) {
  // 1,000 runs on 20/40 scenarios.
  long honeypot = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto spec = spec_for(Condition::ConcealedHoneypot, seed);
    auto scenario = make_scenario(spec);
    const auto run = run_bot(policy(PolicyKind::UniformRandom), spec, seed);
    for (const auto& m : exploited_machines(run)) {
      ++total;
      honeypot += scenario->find(m)->honeypot();
    }
  }
  EXPECT_NEAR(honeypot / static_cast<double>(total), 0.5, 0.02);
}

TEST(InformationHygiene, RelabelledScenarioGivesTheSameCommands) {
  // Zero points keep feedback identical, so the only outcomes that may differ
  // are checkHS scores. Policies that skip checkHS must not notice at all.
  EngineConfig blind;
  blind.access_points = 0;
  blind.fetch_points = 0;
  for (auto kind : kAllPolicies) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto truth = make_scenario(spec_for(Condition::ConcealedHoneypot, seed));
      auto shuffled = relabel(*truth, seed + 100);
      ASSERT_NE(*truth, *shuffled);

      Session sa(truth, seed, blind), sb(shuffled, seed, blind);
      Observation oa(blind.time_budget_s), ob(blind.time_budget_s);
      auto pa = make_policy(policy(kind), seed), pb = make_policy(policy(kind), seed);
      int steps = 0;
      for (; !sa.ended(); ++steps) {
        const auto ca = pa->next(oa), cb = pb->next(ob);
        ASSERT_EQ(ca.has_value(), cb.has_value());
        if (!ca) break;
        ASSERT_EQ(*ca, *cb) << to_string(kind) << " step " << steps;
        const double dt = pa->spec().time.elapsed_for(*ca);
        const auto ra = sa.execute(*ca, dt), rb = sb.execute(*cb, dt);
        oa.record(*ca, ra, dt);
        ob.record(*cb, rb, dt);
        if (!(ra == rb)) {
          EXPECT_EQ(kind, PolicyKind::CheckHsThreshold);
          EXPECT_TRUE(std::holds_alternative<DeceptionScore>(ra.payload));
          break;
        }
      }
      if (kind != PolicyKind::CheckHsThreshold) {
        EXPECT_GT(steps, 10);
      }
    }
  }
}
