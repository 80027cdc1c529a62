#include "cellscope/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cellscope {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<double> d;
  d.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    double diff = a - b;
    if (diff != 0.0) d.push_back(diff);
  }
  if (d.empty()) {
    throw std::invalid_argument("wilcoxon_signed_rank: all differences are zero");
  }
  int n = static_cast<int>(d.size());

  // Mid-ranks of |d|.
  std::vector<int> order(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(d[a]) < std::abs(d[b]); });
  std::vector<double> rank(d.size());
  std::vector<int> tie_sizes;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) {
      ++j;
    }
    double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
    if (j > i) tie_sizes.push_back(static_cast<int>(j - i + 1));
    i = j + 1;
  }

  double w_plus = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] > 0) w_plus += rank[k];
  }

  WilcoxonResult r;
  r.statistic = w_plus;
  r.n_effective = n;

  if (n <= 25) {
    r.exact = true;
    // Ranks are multiples of 1/2; scale by 2 so the rank-sum distribution
    // lives on integers. counts[s] = number of sign assignments whose
    // positive-rank sum is s (exactly the 2^n enumeration, folded).
    int total = 0;
    std::vector<int> scaled(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
      scaled[k] = static_cast<int>(std::lround(2.0 * rank[k]));
      total += scaled[k];
    }
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    int reach = 0;
    for (int s : scaled) {
      reach += s;
      for (int v = reach; v >= s; --v) counts[v] += counts[v - s];
    }
    double denom = std::ldexp(1.0, n);  // 2^n
    int w2 = static_cast<int>(std::lround(2.0 * w_plus));
    double ge = 0.0, le = 0.0;
    for (int v = 0; v <= total; ++v) {
      if (v >= w2) ge += counts[v];
      if (v <= w2) le += counts[v];
    }
    r.p_one_sided = ge / denom;
    r.p_two_sided = std::min(1.0, 2.0 * std::min(ge, le) / denom);
  } else {
    double nn = static_cast<double>(n);
    double mean = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
    for (int t : tie_sizes) {
      double tt = static_cast<double>(t);
      var -= (tt * tt * tt - tt) / 48.0;
    }
    double z = (w_plus - mean) / std::sqrt(var);
    r.p_one_sided = 1.0 - normal_cdf(z);
    r.p_two_sided = std::min(1.0, 2.0 * (1.0 - normal_cdf(std::abs(z))));
  }
  return r;
}

}  // namespace cellscope
