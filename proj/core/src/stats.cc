// Copyright 2026 The Forumtrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "forumtrace/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "forumtrace/errors.h"

namespace forumtrace {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share the mean of ranks i+1..j+1.
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double exact_rank_sum_p(std::span<const double> ranks, std::size_t n, double w) {
  const std::size_t N = ranks.size();
  if (n == 0 || n >= N) throw std::invalid_argument("exact_rank_sum_p needs 0 < n < ranks");
  // Doubled ranks are integers, so sums can index a table.
  std::vector<std::size_t> doubled(N);
  for (std::size_t i = 0; i < N; ++i) {
    doubled[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
  }
  std::vector<std::size_t> sorted = doubled;
  std::sort(sorted.rbegin(), sorted.rend());
  const std::size_t max_sum = std::accumulate(sorted.begin(), sorted.begin() + n, std::size_t{0});
  // ways[k][s]: subsets of size k of the ranks seen so far with doubled sum s.
  std::vector<std::vector<double>> ways(n + 1, std::vector<double>(max_sum + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t r = doubled[i];
    for (std::size_t k = std::min(i + 1, n); k >= 1; --k) {
      for (std::size_t s = max_sum; s >= r; --s) {
        ways[k][s] += ways[k - 1][s - r];
      }
    }
  }
  double total_ranks = 0.0;
  for (double r : ranks) total_ranks += r;
  const double mean = 2.0 * total_ranks * static_cast<double>(n) / static_cast<double>(N);
  const double observed = std::abs(2.0 * w - mean);
  double total = 0.0;
  double extreme = 0.0;
  for (std::size_t s = 0; s <= max_sum; ++s) {
    const double c = ways[n][s];
    total += c;
    if (std::abs(static_cast<double>(s) - mean) >= observed - 1e-7) extreme += c;
  }
  return std::min(1.0, extreme / total);
}

double exact_rank_sum_p(std::size_t n, std::size_t m, double w) {
  std::vector<double> ranks(n + m);
  std::iota(ranks.begin(), ranks.end(), 1.0);
  return exact_rank_sum_p(ranks, n, w);
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw EvalError("rank-sum test needs two nonempty samples");
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t N = n + m;
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = average_ranks(pooled);

  RankSumResult result;
  for (std::size_t i = 0; i < n; ++i) result.w += ranks[i];

  if (n < kExactRankSumLimit && m < kExactRankSumLimit) {
    result.exact = true;
    result.p_value = exact_rank_sum_p(ranks, n, result.w);
    return result;
  }

  // Tie groups: sum of t^3 - t.
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < N;) {
    std::size_t j = i;
    while (j < N && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const double dN = static_cast<double>(N);
  const double mean = dn * (dN + 1.0) / 2.0;
  const double var = dn * dm / 12.0 * ((dN + 1.0) - tie_term / (dN * (dN - 1.0)));
  const double diff = result.w - mean;
  if (diff == 0.0 || var <= 0.0) {
    result.p_value = 1.0;
    return result;
  }
  const double correction = diff > 0 ? 0.5 : -0.5;
  result.z = (diff - correction) / std::sqrt(var);
  result.p_value = std::min(1.0, 2.0 * std::min(normal_cdf(result.z), 1.0 - normal_cdf(result.z)));
  return result;
}

}  // namespace forumtrace
