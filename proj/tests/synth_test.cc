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

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "forumtrace/corpus.h"
#include "forumtrace/synth.h"
#include "forumtrace/text.h"

namespace forumtrace {
namespace {

TEST(Synth, DefaultShape) {
  const SynthCorpus s = generate_synthetic(SynthConfig{});
  EXPECT_EQ(flatten(s.course).size(), 18u);
  EXPECT_EQ(s.posts.size(), 185u);
  EXPECT_EQ(s.truth.size(), 185u);
  std::size_t off_topic = 0;
  for (const auto& t : s.truth) off_topic += t.off_topic() ? 1 : 0;
  EXPECT_EQ(off_topic, 5u);
  std::set<std::string> ids;
  for (const auto& p : s.posts) ids.insert(p.post_id);
  EXPECT_EQ(ids.size(), s.posts.size());
}

TEST(Synth, EveryItemHasTenLabeledPosts) {
  const SynthCorpus s = generate_synthetic(SynthConfig{});
  std::map<std::string, int> per_item;
  for (const auto& t : s.truth) {
    if (!t.off_topic()) ++per_item[*t.item_name];
  }
  EXPECT_EQ(per_item.size(), 18u);
  for (const auto& [item, n] : per_item) EXPECT_EQ(n, 10) << item;
}

TEST(Synth, PlantedWordsSurvivePreprocessing) {
  const SynthCorpus s = generate_synthetic(SynthConfig{});
  const CorpusBuild build = build_vocabulary(s.course);
  EXPECT_EQ(build.documents.size(), 18u);
  EXPECT_TRUE(build.excluded.empty());
  // At most 18*8 item + 9*10 lesson + 3*10 module + 60 noise words; a rare
  // word can go undrawn.
  EXPECT_LE(build.vocab.size(), 144u + 90u + 30u + 60u);
  EXPECT_GE(build.vocab.size(), 300u);
  for (const auto& stem : build.vocab.stems()) {
    EXPECT_FALSE(is_stopword(stem)) << stem;
    EXPECT_EQ(preprocess(stem), (TokenList{stem})) << stem;
  }
}

TEST(Synth, DeterministicAndSeedSensitive) {
  SynthConfig c;
  const std::string a = serialize_course(generate_synthetic(c).course);
  EXPECT_EQ(a, serialize_course(generate_synthetic(c).course));
  EXPECT_EQ(serialize_posts(generate_synthetic(c).posts),
            serialize_posts(generate_synthetic(c).posts));
  c.seed = 14;
  EXPECT_NE(a, serialize_course(generate_synthetic(c).course));
}

TEST(Synth, TruthRoundTripsThroughCsv) {
  const SynthCorpus s = generate_synthetic(SynthConfig{});
  EXPECT_EQ(parse_truth_csv(serialize_truth_csv(s.truth)), s.truth);
  EXPECT_EQ(parse_course(serialize_course(s.course)), s.course);
}

}  // namespace
}  // namespace forumtrace
