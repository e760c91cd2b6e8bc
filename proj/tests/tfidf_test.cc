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

#include <cmath>

#include <gtest/gtest.h>

#include "forumtrace/errors.h"
#include "forumtrace/tfidf.h"
#include "test_util.h"

namespace forumtrace {
namespace {

using testing::bow;

double weight(const SparseVector& v, std::uint32_t index) {
  for (const SparseEntry& e : v.entries) {
    if (e.index == index) return e.value;
  }
  return 0.0;
}

// api = 0, bug = 1; d1 = "api api bug", d2 = "bug bug bug".
TfidfModel two_doc_model() {
  const Vocabulary v({"api", "bug"}, {1, 2}, 2);
  return fit_tfidf({{"d1", bow({{0, 2}, {1, 1}})}, {"d2", bow({{1, 3}})}}, v);
}

TEST(Tfidf, HandEvaluatedWeights) {
  const TfidfModel m = two_doc_model();
  EXPECT_DOUBLE_EQ(m.idf[0], 1.0);
  EXPECT_DOUBLE_EQ(m.idf[1], 0.0);
  ASSERT_EQ(m.items.size(), 2u);
  EXPECT_NEAR(weight(m.items[0].vector, 0), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(weight(m.items[0].vector, 1), 0.0);
  // Zero weights are not stored.
  EXPECT_EQ(m.items[0].vector.entries.size(), 1u);
  EXPECT_TRUE(m.items[1].vector.is_zero());
}

TEST(Tfidf, SingleDocumentAllZero) {
  const Vocabulary v({"api", "bug"}, {1, 1}, 1);
  const TfidfModel m = fit_tfidf({{"d1", bow({{0, 2}, {1, 1}})}}, v);
  EXPECT_TRUE(m.items[0].vector.is_zero());
}

TEST(Tfidf, QueryVectors) {
  const TfidfModel m = two_doc_model();
  const SparseVector q = tfidf_vector(m, bow({{0, 2}}));
  EXPECT_DOUBLE_EQ(weight(q, 0), 1.0);
  EXPECT_TRUE(tfidf_vector(m, BowVector{}).is_zero());
  EXPECT_TRUE(tfidf_vector(m, bow({{1, 4}})).is_zero());
}

TEST(Tfidf, EmptyCorpus) {
  EXPECT_THROW(fit_tfidf({}, testing::vocab_of({"a"})), EmptyCorpusError);
}

TEST(TfidfProperty, CountScalingInvariant) {
  const Vocabulary v({"a", "b", "c", "d"}, {1, 2, 3, 1}, 3);
  const TfidfModel m = fit_tfidf({{"x", bow({{0, 1}, {1, 1}, {2, 1}})},
                                  {"y", bow({{1, 2}, {2, 1}})},
                                  {"z", bow({{2, 4}, {3, 1}})}},
                                 v);
  const BowVector base = bow({{0, 1}, {1, 3}, {2, 2}, {3, 5}});
  for (std::uint32_t c = 2; c <= 5; ++c) {
    std::vector<BowEntry> scaled;
    for (const BowEntry& e : base.entries()) scaled.push_back({e.index, e.count * c});
    const SparseVector a = tfidf_vector(m, base);
    const SparseVector b = tfidf_vector(m, BowVector(scaled));
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      EXPECT_NEAR(a.entries[i].value, b.entries[i].value, 1e-15);
    }
  }
  for (const ItemVector& item : m.items) {
    for (const SparseEntry& e : item.vector.entries) {
      EXPECT_GT(e.value, 0.0);
      EXPECT_LT(v.df(e.index), v.num_docs());
    }
  }
}

TEST(Tfidf, JsonRoundTrip) {
  const TfidfModel m = two_doc_model();
  const TfidfModel back = tfidf_from_json(to_json(m));
  EXPECT_EQ(back.idf, m.idf);
  ASSERT_EQ(back.items.size(), m.items.size());
  EXPECT_EQ(back.items[0].vector, m.items[0].vector);
  EXPECT_EQ(to_json(back), to_json(m));
}

}  // namespace
}  // namespace forumtrace
