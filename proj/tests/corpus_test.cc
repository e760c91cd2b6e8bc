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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "forumtrace/corpus.h"
#include "forumtrace/errors.h"
#include "forumtrace/text.h"
#include "test_util.h"

namespace forumtrace {
namespace {

using testing::bow;
using ::testing::ElementsAre;

constexpr const char* kSampleCourse = R"({
  "branch_id": "agile-2026",
  "modules": [
    {"id": "m1", "name": "Intro", "lessons": [
      {"id": "l1", "name": "Scrum", "items": [
        {"id": "v1", "name": "What is Scrum", "kind": "lecture", "text": "Scrum teams plan sprints."},
        {"id": "r1", "name": "Scrum Guide", "kind": "reading", "text": "The guide describes roles."}
      ]},
      {"id": "l2", "name": "Kanban", "items": [
        {"id": "q1", "name": "Quiz", "kind": "quiz", "text": "Which board?"}
      ]}
    ]},
    {"id": "m2", "name": "Planning", "lessons": [
      {"id": "l3", "name": "Estimation", "items": [
        {"id": "v2", "name": "Story points", "kind": "lecture", "text": "<b>42</b>"}
      ]}
    ]}
  ]
})";

TEST(ParseCourse, ReportsHierarchyCounts) {
  const CourseBranch c = parse_course(kSampleCourse);
  EXPECT_EQ(c.branch_id, "agile-2026");
  EXPECT_EQ(c.num_modules(), 2u);
  EXPECT_EQ(c.num_lessons(), 3u);
  EXPECT_EQ(c.num_items(), 4u);
  EXPECT_EQ(c.modules[0].lessons[1].items[0].kind, ItemKind::kQuiz);
}

TEST(ParseCourse, DuplicateItemId) {
  std::string text = kSampleCourse;
  text.replace(text.find("\"r1\""), 4, "\"v1\"");
  EXPECT_THROW(parse_course(text), DuplicateIdError);
}

TEST(ParseCourse, TruncatedFileIsParseError) {
  const std::string text = std::string(kSampleCourse).substr(0, 200);
  try {
    parse_course(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 0u);
  }
}

TEST(ParseCourse, SchemaViolations) {
  EXPECT_THROW(parse_course(R"({"modules": []})"), ParseError);
  EXPECT_THROW(parse_course(R"({"branch_id": "b", "modules": [{"id": "m", "name": "n",
      "lessons": [{"id": "l", "name": "n", "items": [{"id": "i", "name": "n",
      "kind": "video", "text": ""}]}]}]})"),
               ParseError);
  EXPECT_THROW(parse_course("[]"), ParseError);
}

TEST(ParseCourse, RoundTrip) {
  const CourseBranch c = parse_course(kSampleCourse);
  const CourseBranch again = parse_course(serialize_course(c));
  EXPECT_EQ(c, again);
  EXPECT_EQ(serialize_course(again), serialize_course(c));
}

TEST(Flatten, HierarchyOrder) {
  const CourseBranch c = parse_course(kSampleCourse);
  std::vector<std::string> ids;
  for (const ItemRef& r : flatten(c)) ids.push_back(r.item->id);
  EXPECT_THAT(ids, ElementsAre("v1", "r1", "q1", "v2"));
}

TEST(ParsePosts, ThreeLinesInOrder) {
  const auto posts = parse_posts(
      R"({"post_id": "p1", "forum": "General", "kind": "question", "text": "a"}
{"post_id": "p2", "forum": "Week 1", "kind": "answer", "text": "b"}
{"post_id": "p3", "forum": "General", "kind": "question", "text": "c"}
)");
  ASSERT_EQ(posts.size(), 3u);
  EXPECT_EQ(posts[0].post_id, "p1");
  EXPECT_EQ(posts[1].kind, PostKind::kAnswer);
  EXPECT_EQ(posts[2].raw_text, "c");
}

TEST(ParsePosts, MissingPostIdNamesLine) {
  try {
    parse_posts(R"({"post_id": "p1", "forum": "f", "kind": "question", "text": "a"}
{"forum": "f", "kind": "question", "text": "b"})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParsePosts, EmptyFileAndRoundTrip) {
  EXPECT_TRUE(parse_posts("").empty());
  std::vector<ForumPost> posts = {{"p1", "General", PostKind::kQuestion, "x \"y\"\nz"},
                                  {"p2", "Week 2", PostKind::kAnswer, "é"}};
  EXPECT_EQ(parse_posts(serialize_posts(posts)), posts);
}

TEST(ParsePosts, DuplicateIdRejected) {
  EXPECT_THROW(parse_posts(R"({"post_id": "p1", "forum": "f", "kind": "question", "text": "a"}
{"post_id": "p1", "forum": "f", "kind": "answer", "text": "b"})"),
               DuplicateIdError);
}

CourseBranch two_readings(const std::string& a, const std::string& b) {
  CourseBranch c;
  c.branch_id = "b";
  c.modules = {{"m", "M", {{"l", "L", {{"i1", "I1", ItemKind::kReading, a},
                                       {"i2", "I2", ItemKind::kReading, b}}}}}};
  return c;
}

TEST(BuildVocabulary, CountsDocumentFrequency) {
  const CorpusBuild build = build_vocabulary(two_readings("api api bug", "bug"));
  const Vocabulary& v = build.vocab;
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v.num_docs(), 2u);
  EXPECT_EQ(v.df(*v.index_of("api")), 1u);
  EXPECT_EQ(v.df(*v.index_of("bug")), 2u);
  ASSERT_EQ(build.documents.size(), 2u);
  EXPECT_EQ(build.documents[0].bow.total(), 3u);
}

TEST(BuildVocabulary, QuizzesOnlyIsEmptyCorpus) {
  CourseBranch c = two_readings("api", "bug");
  for (Item& item : c.modules[0].lessons[0].items) item.kind = ItemKind::kQuiz;
  EXPECT_THROW(build_vocabulary(c), EmptyCorpusError);
}

TEST(BuildVocabulary, EmptyItemsExcludedAndRecorded) {
  const CorpusBuild build = build_vocabulary(parse_course(kSampleCourse));
  EXPECT_THAT(build.excluded, ElementsAre("v2"));
  std::vector<std::string> ids;
  for (const auto& d : build.documents) ids.push_back(d.item_id);
  EXPECT_THAT(ids, ElementsAre("v1", "r1"));
  // Quiz text never reaches the vocabulary.
  EXPECT_FALSE(build.vocab.contains("board"));
}

TEST(BuildVocabulary, Invariants) {
  const CorpusBuild build =
      build_vocabulary(two_readings("agile teams plan sprints daily", "teams estimate stories"));
  const Vocabulary& v = build.vocab;
  std::uint64_t df_sum = 0;
  for (std::uint32_t i = 0; i < v.size(); ++i) {
    EXPECT_GE(v.df(i), 1u);
    EXPECT_LE(v.df(i), v.num_docs());
    EXPECT_EQ(*v.index_of(v.stem(i)), i);
    df_sum += v.df(i);
  }
  EXPECT_GE(df_sum, v.size());
  EXPECT_TRUE(std::is_sorted(v.stems().begin(), v.stems().end()));
}

TEST(ToBow, SpecExamples) {
  const Vocabulary v = testing::vocab_of({"api", "bug"});
  const BowVector a = to_bow({"api", "api", "zzz"}, v);
  EXPECT_THAT(a.entries(), ElementsAre(BowEntry{0, 2}));
  EXPECT_EQ(a.total(), 2u);
  EXPECT_TRUE(to_bow({}, v).empty());
  const BowVector b = to_bow({"bug", "api", "bug"}, v);
  EXPECT_THAT(b.entries(), ElementsAre(BowEntry{0, 1}, BowEntry{1, 2}));
}

TEST(ToBow, TotalPlusOovEqualsLength) {
  const Vocabulary v = testing::vocab_of({"api", "bug", "fix"});
  const TokenList tokens = {"api", "zzz", "fix", "fix", "qqq", "bug", "zzz"};
  const BowVector b = to_bow(tokens, v);
  std::size_t oov = 0;
  for (const auto& t : tokens) oov += v.contains(t) ? 0 : 1;
  EXPECT_EQ(b.total() + oov, tokens.size());
}

TEST(BowVector, RejectsBadEntries) {
  EXPECT_THROW(BowVector({{1, 1}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(BowVector({{0, 1}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(BowVector({{0, 0}}), std::invalid_argument);
  EXPECT_EQ(bow({{2, 3}}).count_of(2), 3u);
  EXPECT_FALSE(bow({{2, 3}}).count_of(1).has_value());
}

TEST(Vocabulary, RejectsInconsistentDf) {
  EXPECT_THROW(Vocabulary({"a"}, {0}, 1), std::invalid_argument);
  EXPECT_THROW(Vocabulary({"a"}, {2}, 1), std::invalid_argument);
  EXPECT_THROW(Vocabulary({"a", "a"}, {1, 1}, 1), std::invalid_argument);
  EXPECT_NE(testing::vocab_of({"a"}).hash(), testing::vocab_of({"b"}).hash());
}

}  // namespace
}  // namespace forumtrace
