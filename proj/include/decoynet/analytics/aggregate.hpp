#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "decoynet/analytics/metrics.hpp"

namespace decoynet {

/// Per-session scalar metrics, in report order.
inline constexpr std::string_view kMetricNames[] = {
    "systems_exploited",
    "honeypot_attack_proportion",
    "successful_honeypot_attack_proportion",
    "exfiltration_proportion",
    "total_score",
    "exploit_time_honeypot_s",
    "exploit_time_real_s",
    "exfil_time_honeypot_s",
    "exfil_time_real_s",
    "first_two_exploit_time_honeypot_s",
    "first_two_exploit_time_real_s",
    "first_two_exfil_time_honeypot_s",
    "first_two_exfil_time_real_s",
};

/// Value of a named metric; absent when its denominator is zero. Time
/// metrics are the session's mean over matching targets. Throws
/// std::invalid_argument for unknown names.
std::optional<double> metric_value(const SessionMetrics& m, std::string_view name);

struct HistogramBin {
  double lo = 0;
  double hi = 0;  // equal to lo for integer-valued metrics
  int count = 0;
  bool operator==(const HistogramBin&) const = default;
};

struct MetricSummary {
  std::size_t n = 0;         // sessions with a value
  std::size_t excluded = 0;  // sessions where the metric is absent
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> variance;  // sample variance; 0 for a single value
  std::vector<HistogramBin> histogram;
};

struct ConditionSummary {
  Condition condition = Condition::Default;
  std::size_t sessions = 0;
  std::map<std::string, MetricSummary, std::less<>> metrics;
};

/// Summary of one sample. Integer metrics get one bin per distinct value,
/// proportions ten bins on [0, 1], times ten bins on [0, max].
MetricSummary summarize(std::string_view metric, const std::vector<double>& values, std::size_t excluded = 0);

/// One summary per condition present, in condition order. Absent values
/// are excluded per metric. Throws std::invalid_argument when empty.
std::vector<ConditionSummary> aggregate(const std::vector<SessionMetrics>& sessions);

/// Values of `metric` per condition, absent ones dropped. Every condition
/// present in `sessions` has an entry, possibly empty.
std::map<Condition, std::vector<double>> metric_groups(const std::vector<SessionMetrics>& sessions,
                                                       std::string_view metric);

nlohmann::json to_json(const MetricSummary& s);
nlohmann::json to_json(const ConditionSummary& s);

}  // namespace decoynet
