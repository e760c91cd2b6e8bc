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

#include "forumtrace/gibbs.h"

#include <numeric>
#include <string>

#include "forumtrace/errors.h"
#include "forumtrace/hash.h"
#include "forumtrace/random.h"

namespace forumtrace {

std::vector<std::uint32_t> expand_tokens(const BowVector& bow) {
  std::vector<std::uint32_t> tokens;
  tokens.reserve(bow.total());
  for (const BowEntry& e : bow.entries()) tokens.insert(tokens.end(), e.count, e.index);
  return tokens;
}

std::uint64_t fold_in_seed(std::uint64_t model_seed, const BowVector& bow) {
  std::string key;
  key.reserve(bow.size() * 8);
  for (const BowEntry& e : bow.entries()) {
    key += std::to_string(e.index);
    key += ':';
    key += std::to_string(e.count);
    key += ';';
  }
  return derive_seed(model_seed, fnv1a64(key));
}

void normalize_in_place(std::vector<double>& v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(s > 0.0)) throw std::invalid_argument("normalize: nonpositive mass");
  for (double& x : v) x /= s;
}

TopicDistribution fold_in(const Matrix& phi, const BowVector& bow, double alpha,
                          const FoldInSchedule& schedule, std::uint64_t seed) {
  if (bow.empty()) throw UntraceablePostError();
  const std::size_t K = phi.rows();
  const std::vector<std::uint32_t> tokens = expand_tokens(bow);
  for (std::uint32_t w : tokens) {
    if (w >= phi.cols()) throw std::invalid_argument("fold_in: word outside vocabulary");
  }
  Rng rng(seed);
  std::vector<std::uint32_t> z(tokens.size());
  std::vector<std::uint32_t> m(K, 0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    z[i] = static_cast<std::uint32_t>(rng.uniform_int(K));
    ++m[z[i]];
  }

  std::vector<double> weights(K);
  std::vector<double> acc(K, 0.0);
  const double denom = static_cast<double>(tokens.size()) + static_cast<double>(K) * alpha;
  const std::uint32_t total_sweeps =
      schedule.burn_in + std::max<std::uint32_t>(1, schedule.samples);
  for (std::uint32_t sweep = 0; sweep < total_sweeps; ++sweep) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      --m[z[i]];
      for (std::size_t k = 0; k < K; ++k) {
        weights[k] = (m[k] + alpha) * phi(k, tokens[i]);
      }
      z[i] = static_cast<std::uint32_t>(rng.categorical(weights));
      ++m[z[i]];
    }
    if (sweep >= schedule.burn_in) {
      for (std::size_t k = 0; k < K; ++k) acc[k] += (m[k] + alpha) / denom;
    }
  }
  normalize_in_place(acc);
  return acc;
}

}  // namespace forumtrace
