#include "decoynet/analytics/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace decoynet {

using json = nlohmann::json;

namespace {

enum class Scale { Integer, Proportion, Seconds };

Scale scale_of(std::string_view metric) {
  if (metric == "systems_exploited" || metric == "total_score") return Scale::Integer;
  if (metric.ends_with("_proportion")) return Scale::Proportion;
  return Scale::Seconds;
}

std::optional<double> mean_time(const std::vector<TargetTiming>& targets, bool honeypot, bool exfil) {
  double sum = 0;
  int n = 0;
  for (const auto& t : targets) {
    if (t.honeypot != honeypot) continue;
    if (exfil && !t.exfil_phase_s) continue;
    sum += exfil ? *t.exfil_phase_s : t.exploit_phase_s;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

}  // namespace

std::optional<double> metric_value(const SessionMetrics& m, std::string_view name) {
  if (name == "systems_exploited") return m.systems_exploited;
  if (name == "honeypot_attack_proportion") return m.honeypot_attack_proportion;
  if (name == "successful_honeypot_attack_proportion") return m.successful_honeypot_attack_proportion;
  if (name == "exfiltration_proportion") return m.exfiltration_proportion;
  if (name == "total_score") return m.total_score;

  const bool first_two = name.starts_with("first_two_");
  if (first_two) name.remove_prefix(std::string_view("first_two_").size());
  const auto targets = first_two ? m.first_two_exploit_times() : m.targets;
  if (name == "exploit_time_honeypot_s") return mean_time(targets, true, false);
  if (name == "exploit_time_real_s") return mean_time(targets, false, false);
  if (name == "exfil_time_honeypot_s") return mean_time(targets, true, true);
  if (name == "exfil_time_real_s") return mean_time(targets, false, true);
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

MetricSummary summarize(std::string_view metric, const std::vector<double>& values, std::size_t excluded) {
  MetricSummary s;
  s.n = values.size();
  s.excluded = excluded;
  if (values.empty()) return s;

  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
  double ss = 0;
  for (double v : sorted) ss += (v - mean) * (v - mean);
  s.mean = mean;
  s.variance = s.n > 1 ? ss / static_cast<double>(s.n - 1) : 0.0;
  const std::size_t mid = s.n / 2;
  s.median = s.n % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;

  switch (scale_of(metric)) {
    case Scale::Integer:
      for (double v : sorted) {
        if (s.histogram.empty() || s.histogram.back().lo != v) s.histogram.push_back({v, v, 0});
        ++s.histogram.back().count;
      }
      break;
    case Scale::Proportion:
    case Scale::Seconds: {
      const double top = scale_of(metric) == Scale::Proportion ? 1.0 : std::max(sorted.back(), 1.0);
      const double width = top / 10;
      for (int i = 0; i < 10; ++i) s.histogram.push_back({i * width, (i + 1) * width, 0});
      for (double v : sorted) {
        const auto bin = std::clamp(static_cast<int>(std::floor(v / width)), 0, 9);
        ++s.histogram[bin].count;
      }
      break;
    }
  }
  return s;
}

std::map<Condition, std::vector<double>> metric_groups(const std::vector<SessionMetrics>& sessions,
                                                       std::string_view metric) {
  std::map<Condition, std::vector<double>> out;
  for (const auto& m : sessions) {
    auto& group = out[m.condition];
    if (auto v = metric_value(m, metric)) group.push_back(*v);
  }
  return out;
}

std::vector<ConditionSummary> aggregate(const std::vector<SessionMetrics>& sessions) {
  if (sessions.empty()) throw std::invalid_argument("aggregate needs at least one session");
  std::vector<ConditionSummary> out;
  for (auto c : kAllConditions) {
    const auto count = std::ranges::count_if(sessions, [&](const SessionMetrics& m) { return m.condition == c; });
    if (count == 0) continue;
    ConditionSummary summary;
    summary.condition = c;
    summary.sessions = static_cast<std::size_t>(count);
    for (auto name : kMetricNames) {
      const auto values = metric_groups(sessions, name)[c];
      summary.metrics.emplace(std::string(name), summarize(name, values, summary.sessions - values.size()));
    }
    out.push_back(std::move(summary));
  }
  return out;
}

json to_json(const MetricSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json bins = json::array();
  for (const auto& b : s.histogram) bins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  return {{"n", s.n},
          {"excluded", s.excluded},
          {"mean", opt(s.mean)},
          {"median", opt(s.median)},
          {"variance", opt(s.variance)},
          {"histogram", std::move(bins)}};
}

json to_json(const ConditionSummary& s) {
  json metrics = json::object();
  for (const auto& [name, m] : s.metrics) metrics[name] = to_json(m);
  return {{"condition", to_string(s.condition)}, {"sessions", s.sessions}, {"metrics", std::move(metrics)}};
}

}  // namespace decoynet
