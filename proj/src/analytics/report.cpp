#include "decoynet/analytics/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "decoynet/analytics/anova.hpp"

namespace decoynet {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr std::string_view kFigureSeries[] = {"systems_exploited", "honeypot_attack_proportion",
                                              "successful_honeypot_attack_proportion", "exfiltration_proportion",
                                              "total_score"};

std::string fmt(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", *v);
  return buf;
}

std::optional<AnovaResult> try_anova(const std::vector<SessionMetrics>& sessions, std::string_view metric) {
  std::vector<std::vector<double>> groups;
  for (auto& [_, values] : metric_groups(sessions, metric)) {
    if (!values.empty()) groups.push_back(std::move(values));
  }
  try {
    return anova_oneway(groups);
  } catch (const AnovaError&) {
    return std::nullopt;
  }
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

}  // namespace

void write_text_report(std::ostream& out, const std::vector<SessionMetrics>& sessions) {
  const auto summaries = aggregate(sessions);
  out << "sessions: " << sessions.size() << "\n";
  for (const auto& s : summaries) out << "  " << to_string(s.condition) << ": " << s.sessions << "\n";

  for (auto name : kMetricNames) {
    out << "\n" << name << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "  %-24s %5s %5s %10s %10s %10s\n", "condition", "n", "excl", "mean", "median",
                  "variance");
    out << line;
    for (const auto& s : summaries) {
      const auto& m = s.metrics.find(name)->second;
      std::snprintf(line, sizeof line, "  %-24s %5zu %5zu %10s %10s %10s\n", std::string(to_string(s.condition)).c_str(),
                    m.n, m.excluded, fmt(m.mean).c_str(), fmt(m.median).c_str(), fmt(m.variance).c_str());
      out << line;
    }
    if (auto r = try_anova(sessions, name)) {
      out << "  one-way ANOVA: " << format_anova(*r) << "\n";
    } else {
      out << "  one-way ANOVA: not computed (needs two non-empty conditions and more sessions than conditions)\n";
    }
  }
  out << "\nNot computed here: Tukey post hoc comparisons and Fisher's exact test on the\n"
         "distribution of systems exploited.\n";
}

void write_report(const fs::path& dir, const std::vector<SessionMetrics>& sessions) {
  fs::create_directories(dir / "series");
  {
    auto out = open_out(dir / "report.txt");
    write_text_report(out, sessions);
  }
  {
    auto out = open_out(dir / "metrics.jsonl");
    for (const auto& m : sessions) out << to_json(m).dump() << "\n";
  }

  const auto summaries = aggregate(sessions);
  {
    json doc{{"conditions", json::array()}, {"anova", json::object()}};
    for (const auto& s : summaries) doc["conditions"].push_back(to_json(s));
    for (auto name : kMetricNames) {
      if (auto r = try_anova(sessions, name)) {
        doc["anova"][std::string(name)] = {{"f", std::isinf(r->f) ? json("inf") : json(r->f)},
                                           {"df_between", r->df_between},
                                           {"df_within", r->df_within},
                                           {"p_value", r->p_value}};
      } else {
        doc["anova"][std::string(name)] = nullptr;
      }
    }
    auto out = open_out(dir / "summary.json");
    out << doc.dump(2) << "\n";
  }

  for (auto name : kFigureSeries) {
    auto out = open_out(dir / "series" / (std::string(name) + ".csv"));
    out << "condition,session,value\n";
    for (const auto& m : sessions) {
      if (auto v = metric_value(m, name)) out << to_string(m.condition) << "," << m.session_id << "," << *v << "\n";
    }
  }
  {
    auto out = open_out(dir / "series" / "systems_exploited_histogram.csv");
    out << "condition,value,count\n";
    for (const auto& s : summaries) {
      for (const auto& b : s.metrics.find("systems_exploited")->second.histogram) {
        out << to_string(s.condition) << "," << b.lo << "," << b.count << "\n";
      }
    }
  }
  for (const bool first_two : {false, true}) {
    auto out = open_out(dir / "series" / (first_two ? "time_first_two.csv" : "time_per_target.csv"));
    out << "condition,phase,target,mean_s,n\n";
    for (const auto& s : summaries) {
      for (const char* phase : {"exploit", "exfil"}) {
        for (const char* target : {"honeypot", "real"}) {
          const auto key = std::string(first_two ? "first_two_" : "") + phase + "_time_" + target + "_s";
          const auto& m = s.metrics.find(key)->second;
          out << to_string(s.condition) << "," << phase << "," << target << ",";
          if (m.mean) out << *m.mean;
          out << "," << m.n << "\n";
        }
      }
    }
  }
}

std::vector<fs::path> find_session_logs(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".jsonl") continue;
    const auto name = e.path().filename().string();
    if (name == "index.jsonl" || name == "audit.jsonl") continue;
    out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace decoynet
