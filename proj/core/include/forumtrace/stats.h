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

#ifndef FORUMTRACE_STATS_H_
#define FORUMTRACE_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace forumtrace {

// 1-based ranks of the pooled values, tied values sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

double normal_cdf(double z);

struct RankSumResult {
  double w = 0.0;        // rank sum of the first sample
  double z = 0.0;        // continuity-corrected normal score (0 when exact)
  double p_value = 1.0;  // two-sided
  bool exact = false;
};

// Below this size (both samples), W is referred to its exact permutation
// distribution given the observed (average) ranks.
inline constexpr std::size_t kExactRankSumLimit = 50;

// Wilcoxon rank-sum test. Small tie-free samples use the exact permutation
// distribution; otherwise the normal approximation with tie-corrected
// variance and a 0.5 continuity correction toward the mean. W exactly at its
// mean gives p = 1. Throws EvalError when either sample is empty.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

// Two-sided exact p-value: the share of n-subsets of `ranks` whose sum lies
// at least as far from its mean as `w`. Ranks must be multiples of 1/2.
double exact_rank_sum_p(std::span<const double> ranks, std::size_t n, double w);

// The tie-free case, ranks 1..n+m.
double exact_rank_sum_p(std::size_t n, std::size_t m, double w);

}  // namespace forumtrace

#endif  // FORUMTRACE_STATS_H_
