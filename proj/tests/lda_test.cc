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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "forumtrace/errors.h"
#include "forumtrace/gibbs.h"
#include "forumtrace/lda.h"
#include "test_util.h"

namespace forumtrace {
namespace {

using testing::argmax;
using testing::bow;
using testing::sum;

// Collapsed joint log p(z, w) for symmetric LDA, from topic/document counts.
double log_joint(const std::vector<std::vector<int>>& n_dk,
                 const std::vector<std::vector<int>>& n_kw, double alpha, double beta) {
  const std::size_t K = n_kw.size();
  const std::size_t V = n_kw[0].size();
  double lp = 0.0;
  for (const auto& row : n_dk) {
    int len = 0;
    for (std::size_t k = 0; k < K; ++k) {
      lp += std::lgamma(row[k] + alpha) - std::lgamma(alpha);
      len += row[k];
    }
    lp += std::lgamma(K * alpha) - std::lgamma(len + K * alpha);
  }
  for (std::size_t k = 0; k < K; ++k) {
    int nk = 0;
    for (std::size_t w = 0; w < V; ++w) {
      lp += std::lgamma(n_kw[k][w] + beta) - std::lgamma(beta);
      nk += n_kw[k][w];
    }
    lp += std::lgamma(V * beta) - std::lgamma(nk + V * beta);
  }
  return lp;
}

// Label-switching-invariant statistics of a 2-document state.
struct Stats {
  double cross = 0.0;  // sum_k n_1k n_2k
  double self = 0.0;   // sum_k n_1k^2
};

TEST(LdaOracle, SamplerMatchesExactPosteriorOnTinyCorpus) {
  // d1 = w0 w0 w1, d2 = w1 w2 w2; K = 2; all 2^6 assignments enumerated.
  const std::vector<std::vector<int>> docs = {{0, 0, 1}, {1, 2, 2}};
  const double alpha = 0.5;
  const double beta = 0.5;
  double z_norm = 0.0;
  Stats exact;
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<std::vector<int>> n_dk(2, std::vector<int>(2, 0));
    std::vector<std::vector<int>> n_kw(2, std::vector<int>(3, 0));
    int bit = 0;
    for (int d = 0; d < 2; ++d) {
      for (int w : docs[d]) {
        const int k = (mask >> bit++) & 1;
        ++n_dk[d][k];
        ++n_kw[k][w];
      }
    }
    const double p = std::exp(log_joint(n_dk, n_kw, alpha, beta));
    z_norm += p;
    exact.cross += p * (n_dk[0][0] * n_dk[1][0] + n_dk[0][1] * n_dk[1][1]);
    exact.self += p * (n_dk[0][0] * n_dk[0][0] + n_dk[0][1] * n_dk[0][1]);
  }
  exact.cross /= z_norm;
  exact.self /= z_norm;

  LdaParams params;
  params.num_topics = 2;
  params.alpha = alpha;
  params.beta = beta;
  params.seed = 99;
  LdaSampler sampler({{"d1", bow({{0, 2}, {1, 1}})}, {"d2", bow({{1, 1}, {2, 2}})}}, 3, params);
  for (int i = 0; i < 100; ++i) sampler.sweep();
  Stats mc;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    sampler.sweep();
    const double a0 = sampler.doc_topic_count(0, 0);
    const double a1 = sampler.doc_topic_count(0, 1);
    mc.cross += a0 * sampler.doc_topic_count(1, 0) + a1 * sampler.doc_topic_count(1, 1);
    mc.self += a0 * a0 + a1 * a1;
  }
  EXPECT_NEAR(mc.cross / n, exact.cross, 0.03);
  EXPECT_NEAR(mc.self / n, exact.self, 0.03);
}

TEST(LdaOracle, DisjointCorpusPosteriorSeparates) {
  // Reduced state (a, b): topic-0 tokens in each document, with multiplicity
  // C(20,a) C(20,b). "Separated" means both max thetas >= 0.9 with different
  // argmax topics.
  const int n = 20;
  const double alpha = 0.01;
  const double beta = 0.001;
  double total = 0.0;
  double separated = 0.0;
  std::vector<double> logs;
  double max_log = -1e300;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      const double mult = std::lgamma(n + 1.0) - std::lgamma(a + 1.0) - std::lgamma(n - a + 1.0) +
                          std::lgamma(n + 1.0) - std::lgamma(b + 1.0) - std::lgamma(n - b + 1.0);
      const double lp = mult + log_joint({{a, n - a}, {b, n - b}}, {{a, b}, {n - a, n - b}},
                                         alpha, beta);
      logs.push_back(lp);
      max_log = std::max(max_log, lp);
    }
  }
  std::size_t i = 0;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      const double p = std::exp(logs[i++] - max_log);
      total += p;
      const double t1 = (std::max(a, n - a) + alpha) / (n + 2 * alpha);
      const double t2 = (std::max(b, n - b) + alpha) / (n + 2 * alpha);
      const bool differ = (a > n - a) != (b > n - b);
      if (t1 >= 0.9 && t2 >= 0.9 && differ) separated += p;
    }
  }
  EXPECT_GT(separated / total, 0.999);

  LdaParams params;
  params.num_topics = 2;
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    params.seed = seed;
    const LdaModel m =
        train_lda(testing::disjoint_corpus(), testing::vocab_of({"alpha", "beta"}), params);
    const bool sep = *std::max_element(m.theta[0].begin(), m.theta[0].end()) >= 0.9 &&
                     *std::max_element(m.theta[1].begin(), m.theta[1].end()) >= 0.9 &&
                     argmax(m.theta[0]) != argmax(m.theta[1]);
    ok += sep ? 1 : 0;
  }
  EXPECT_EQ(ok, 20);
}

TEST(Lda, SingleDocSingleTopic) {
  LdaParams params;
  params.num_topics = 1;
  params.train_sweeps = 5;
  const Vocabulary v = testing::vocab_of({"a", "b", "c"}, 1);
  const LdaModel m = train_lda({{"d", bow({{0, 3}, {2, 1}})}}, v, params);
  ASSERT_EQ(m.theta.size(), 1u);
  EXPECT_DOUBLE_EQ(m.theta[0][0], 1.0);
  const double denom = 4 + 3 * params.beta;
  EXPECT_NEAR(m.phi(0, 0), (3 + params.beta) / denom, 1e-15);
  EXPECT_NEAR(m.phi(0, 1), params.beta / denom, 1e-15);
  EXPECT_NEAR(m.phi(0, 2), (1 + params.beta) / denom, 1e-15);
  const TopicDistribution t = infer_lda(m, bow({{1, 2}}));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_DOUBLE_EQ(t[0], 1.0);
}

TEST(Lda, EmptyCorpusAndEmptyDocuments) {
  const Vocabulary v = testing::vocab_of({"a"});
  EXPECT_THROW(train_lda({}, v, LdaParams{}), EmptyCorpusError);
  EXPECT_THROW(train_lda({{"d", BowVector{}}}, v, LdaParams{}), EmptyCorpusError);
  LdaParams params;
  params.num_topics = 2;
  params.train_sweeps = 3;
  const LdaModel m = train_lda({{"d", bow({{0, 2}})}, {"empty", BowVector{}}}, v, params);
  EXPECT_EQ(m.item_ids, std::vector<std::string>{"d"});
  EXPECT_EQ(m.skipped, std::vector<std::string>{"empty"});
}

TEST(Lda, ParamsValidated) {
  LdaParams p;
  p.num_topics = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = LdaParams{};
  p.alpha = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = LdaParams{};
  p.train_sweeps = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

std::vector<CorpusDocument> mixed_corpus() {
  return {{"a", bow({{0, 4}, {1, 2}, {3, 1}})},
          {"b", bow({{1, 3}, {2, 5}})},
          {"c", bow({{0, 1}, {2, 1}, {3, 6}, {4, 2}})},
          {"d", bow({{4, 7}})}};
}

TEST(LdaProperty, CountsConsistentAfterEverySweep) {
  LdaParams params;
  params.num_topics = 5;
  LdaSampler s(mixed_corpus(), 5, params);
  EXPECT_TRUE(s.counts_consistent());
  for (int i = 0; i < 50; ++i) {
    s.sweep();
    ASSERT_TRUE(s.counts_consistent()) << "sweep " << i;
  }
  EXPECT_EQ(s.sweeps_done(), 50u);
}

TEST(LdaProperty, DeterministicAndSimplex) {
  LdaParams params;
  params.num_topics = 7;
  params.train_sweeps = 30;
  const Vocabulary v = testing::vocab_of({"a", "b", "c", "d", "e"}, 4);
  const LdaModel m1 = train_lda(mixed_corpus(), v, params);
  const LdaModel m2 = train_lda(mixed_corpus(), v, params);
  EXPECT_EQ(m1.phi, m2.phi);
  EXPECT_EQ(m1.theta, m2.theta);
  for (std::size_t k = 0; k < m1.num_topics(); ++k) {
    double s = 0.0;
    for (double x : m1.phi.row(k)) {
      ASSERT_GE(x, 0.0);
      s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
  for (const auto& t : m1.theta) EXPECT_NEAR(sum(t), 1.0, 1e-9);
  params.seed = 14;
  const LdaModel m3 = train_lda(mixed_corpus(), v, params);
  EXPECT_NE(m1.theta, m3.theta);
}

TEST(LdaInference, TrainingBowLandsNearItsTheta) {
  LdaParams params;
  params.num_topics = 2;
  const LdaModel m =
      train_lda(testing::disjoint_corpus(), testing::vocab_of({"alpha", "beta"}), params);
  for (std::size_t d = 0; d < 2; ++d) {
    const TopicDistribution t = infer_lda(m, testing::disjoint_corpus()[d].bow);
    EXPECT_NEAR(sum(t), 1.0, 1e-9);
    EXPECT_LE(cosine_distance(t, m.theta[d]), 0.1);
  }
}

TEST(LdaInference, DeterministicAndModelUnchanged) {
  LdaParams params;
  params.num_topics = 4;
  params.train_sweeps = 20;
  const Vocabulary v = testing::vocab_of({"a", "b", "c", "d", "e"}, 4);
  const LdaModel m = train_lda(mixed_corpus(), v, params);
  const nlohmann::json before = to_json(m);
  const BowVector q = bow({{0, 1}, {3, 2}});
  EXPECT_EQ(infer_lda(m, q), infer_lda(m, q));
  EXPECT_EQ(to_json(m), before);
  EXPECT_THROW(infer_lda(m, BowVector{}), UntraceablePostError);
}

TEST(LdaInference, RandomBowsAreSimplices) {
  LdaParams params;
  params.num_topics = 6;
  params.train_sweeps = 20;
  const Vocabulary v = testing::vocab_of({"a", "b", "c", "d", "e"}, 4);
  const LdaModel m = train_lda(mixed_corpus(), v, params);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BowEntry> entries;
    for (std::uint32_t w = 0; w < 5; ++w) {
      const auto c = static_cast<std::uint32_t>(rng.uniform_int(4));
      if (c > 0) entries.push_back({w, c});
    }
    if (entries.empty()) continue;
    const TopicDistribution t = infer_lda(m, BowVector(entries));
    ASSERT_NEAR(sum(t), 1.0, 1e-9);
    for (double x : t) ASSERT_GE(x, 0.0);
  }
}

TEST(Lda, JsonRoundTrip) {
  LdaParams params;
  params.num_topics = 3;
  params.train_sweeps = 10;
  const Vocabulary v = testing::vocab_of({"a", "b", "c", "d", "e"}, 4);
  const LdaModel m = train_lda(mixed_corpus(), v, params);
  const LdaModel back = lda_from_json(to_json(m));
  EXPECT_EQ(back.phi, m.phi);
  EXPECT_EQ(back.theta, m.theta);
  EXPECT_EQ(back.vocab_hash, v.hash());
  EXPECT_EQ(back.params.num_topics, 3u);
}

}  // namespace
}  // namespace forumtrace
