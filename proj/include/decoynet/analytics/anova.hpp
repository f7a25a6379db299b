#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace decoynet {

struct AnovaResult {
  double f = 0;
  int df_between = 0;
  int df_within = 0;
  double p_value = 1;
  double ss_between = 0;
  double ss_within = 0;
};

class AnovaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Classical one-way ANOVA. Needs at least two groups, none empty, and more
/// observations than groups; otherwise throws AnovaError.
///
/// Degenerate inputs: equal group means give F = 0, p = 1. Zero within-group
/// variance with distinct means gives F = +inf, p = 0.
AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups);

/// Upper tail of the F distribution.
double f_distribution_sf(double f, double df1, double df2);

/// "F(2,45) = 9.75, p = 0.0003"
std::string format_anova(const AnovaResult& r);

}  // namespace decoynet
