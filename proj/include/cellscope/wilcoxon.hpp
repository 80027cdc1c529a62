#pragma once

#include <utility>
#include <vector>

namespace cellscope {

struct WilcoxonResult {
  double statistic = 0.0;   // W+ : rank sum of the positive differences
  double p_one_sided = 1.0; // alternative: a > b
  double p_two_sided = 1.0;
  int n_effective = 0;      // pairs remaining after zero differences drop
  bool exact = false;
};

/// Wilcoxon signed-rank test on paired samples (a_i, b_i), differences
/// d_i = a_i - b_i. Zero differences are dropped, tied |d| are
/// mid-ranked. For n_effective <= 25 the null distribution of W+ is
/// computed exactly over all 2^n sign assignments (via rank-sum
/// counting); above that a normal approximation with tie correction is
/// used, without continuity correction.
///
/// Throws std::invalid_argument when every difference is zero.
WilcoxonResult wilcoxon_signed_rank(const std::vector<std::pair<double, double>>& pairs);

}  // namespace cellscope
