#include "decoynet/analytics/anova.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <boost/math/distributions/fisher_f.hpp>

namespace decoynet {

double f_distribution_sf(double f, double df1, double df2) {
  if (std::isinf(f)) return 0;
  if (f <= 0) return 1;
  return boost::math::cdf(boost::math::complement(boost::math::fisher_f_distribution<double>(df1, df2), f));
}

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw AnovaError("anova needs at least two groups");
  std::size_t total = 0;
  for (const auto& g : groups) {
    if (g.empty()) throw AnovaError("anova groups must be non-empty");
    total += g.size();
  }
  if (total <= groups.size()) throw AnovaError("anova needs more observations than groups");

  // Centre on the first observation so that a common offset cancels before
  // any squaring.
  const double shift = groups.front().front();
  std::vector<double> means;
  double grand_sum = 0;
  for (const auto& g : groups) {
    double sum = 0;
    for (double x : g) sum += x - shift;
    means.push_back(sum / static_cast<double>(g.size()));
    grand_sum += sum;
  }
  const double grand = grand_sum / static_cast<double>(total);

  AnovaResult r;
  r.df_between = static_cast<int>(groups.size()) - 1;
  r.df_within = static_cast<int>(total - groups.size());

  bool equal_means = true;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (means[i] != means.front()) equal_means = false;
    for (double x : groups[i]) r.ss_within += (x - shift - means[i]) * (x - shift - means[i]);
    r.ss_between += static_cast<double>(groups[i].size()) * (means[i] - grand) * (means[i] - grand);
  }
  if (equal_means) {
    r.ss_between = 0;
    r.f = 0;
    r.p_value = 1;
    return r;
  }
  if (r.ss_within == 0) {
    r.f = std::numeric_limits<double>::infinity();
    r.p_value = 0;
    return r;
  }
  r.f = (r.ss_between / r.df_between) / (r.ss_within / r.df_within);
  r.p_value = f_distribution_sf(r.f, r.df_between, r.df_within);
  return r;
}

std::string format_anova(const AnovaResult& r) {
  char buf[96];
  if (r.p_value < 0.0001) {
    std::snprintf(buf, sizeof buf, "F(%d,%d) = %.2f, p < 0.0001", r.df_between, r.df_within, r.f);
  } else {
    std::snprintf(buf, sizeof buf, "F(%d,%d) = %.2f, p = %.4f", r.df_between, r.df_within, r.f, r.p_value);
  }
  return buf;
}

}  // namespace decoynet
