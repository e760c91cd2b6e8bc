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

#ifndef FORUMTRACE_TESTS_RANK_SUM_ORACLE_H_
#define FORUMTRACE_TESTS_RANK_SUM_ORACLE_H_

#include <cmath>
#include <cstdint>
#include <vector>

namespace forumtrace::testing {

struct Permutation {
  double w;
  double p;
};

// Enumerates every split of the pooled ranks into samples of size n and m.
// The two-sided p is the share of splits whose rank sum lies at least as far
// from its mean as the observed one.
inline Permutation permutation_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = a.size();
  const std::size_t total = pooled.size();
  std::vector<double> rank(total);
  for (std::size_t i = 0; i < total; ++i) {
    double less = 0.0;
    double equal = 0.0;
    for (double x : pooled) {
      if (x < pooled[i]) less += 1.0;
      if (x == pooled[i]) equal += 1.0;
    }
    rank[i] = less + (equal + 1.0) / 2.0;
  }
  double observed = 0.0;
  for (std::size_t i = 0; i < n; ++i) observed += rank[i];
  const double mean = static_cast<double>(n) * (static_cast<double>(total) + 1.0) / 2.0;
  std::size_t splits = 0;
  std::size_t extreme = 0;
  for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    double w = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      if (mask & (1u << i)) w += rank[i];
    }
    ++splits;
    if (std::abs(w - mean) >= std::abs(observed - mean) - 1e-9) ++extreme;
  }
  return {observed, static_cast<double>(extreme) / static_cast<double>(splits)};
}

}  // namespace forumtrace::testing

#endif  // FORUMTRACE_TESTS_RANK_SUM_ORACLE_H_
