#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "decoynet/analytics/aggregate.hpp"
#include "decoynet/analytics/metrics.hpp"

namespace decoynet {

/// Human-readable table: per-condition summaries and an ANOVA line per
/// metric where one can be computed.
void write_text_report(std::ostream& out, const std::vector<SessionMetrics>& sessions);

/// Writes into `dir` (created if needed):
///   report.txt              the text report
///   metrics.jsonl           one SessionMetrics per line
///   summary.json            per-condition summaries and ANOVA results
///   series/*.csv            plot-ready data, one file per figure quantity
void write_report(const std::filesystem::path& dir, const std::vector<SessionMetrics>& sessions);

/// Every *.jsonl log in `dir` except index.jsonl and audit.jsonl, sorted by
/// name.
std::vector<std::filesystem::path> find_session_logs(const std::filesystem::path& dir);

}  // namespace decoynet
