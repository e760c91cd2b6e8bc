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

#ifndef FORUMTRACE_CORPUS_H_
#define FORUMTRACE_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forumtrace/text.h"

namespace forumtrace {

enum class ItemKind { kLecture, kReading, kQuiz, kAssignment };

const char* to_string(ItemKind kind);
std::optional<ItemKind> parse_item_kind(std::string_view s);

// Lectures and readings are the only items that carry corpus text.
inline bool is_course_material(ItemKind kind) {
  return kind == ItemKind::kLecture || kind == ItemKind::kReading;
}

struct Item {
  std::string id;
  std::string name;
  ItemKind kind = ItemKind::kLecture;
  std::string raw_text;

  bool operator==(const Item&) const = default;
};

struct Lesson {
  std::string id;
  std::string name;
  std::vector<Item> items;

  bool operator==(const Lesson&) const = default;
};

struct Module {
  std::string id;
  std::string name;
  std::vector<Lesson> lessons;

  bool operator==(const Module&) const = default;
};

// One course branch: modules -> lessons -> items.
struct CourseBranch {
  std::string branch_id;
  std::vector<Module> modules;

  std::size_t num_modules() const { return modules.size(); }
  std::size_t num_lessons() const;
  std::size_t num_items() const;

  bool operator==(const CourseBranch&) const = default;
};

// Flattened view of an item together with its position in the hierarchy.
struct ItemRef {
  const Module* module;
  const Lesson* lesson;
  const Item* item;
};

// Items in hierarchy order (module, then lesson, then item).
std::vector<ItemRef> flatten(const CourseBranch& course);

enum class PostKind { kQuestion, kAnswer };

const char* to_string(PostKind kind);

struct ForumPost {
  std::string post_id;
  std::string forum_name;
  PostKind kind = PostKind::kQuestion;
  std::string raw_text;

  bool operator==(const ForumPost&) const = default;
};

// Throws ParseError (with line/column) on malformed JSON or schema violations
// and DuplicateIdError when two items share an id.
CourseBranch parse_course(std::string_view json_text);
std::string serialize_course(const CourseBranch& course);

// One JSON object per line. Blank lines are skipped; order is preserved and
// every post is kept regardless of forum or kind.
std::vector<ForumPost> parse_posts(std::string_view jsonl_text);
std::string serialize_posts(const std::vector<ForumPost>& posts);

// Stem dictionary built from course material only.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Stems are indexed in the given order; document frequencies must satisfy
  // 1 <= df <= num_docs.
  Vocabulary(std::vector<std::string> stems, std::vector<std::uint32_t> df,
             std::uint32_t num_docs);

  std::size_t size() const { return stems_.size(); }
  bool empty() const { return stems_.empty(); }
  std::uint32_t num_docs() const { return num_docs_; }

  std::optional<std::uint32_t> index_of(std::string_view stem) const;
  bool contains(std::string_view stem) const { return index_of(stem).has_value(); }
  const std::string& stem(std::uint32_t index) const { return stems_.at(index); }
  std::uint32_t df(std::uint32_t index) const { return df_.at(index); }
  const std::vector<std::string>& stems() const { return stems_; }
  const std::vector<std::uint32_t>& document_frequencies() const { return df_; }

  // fingerprint() of the newline-joined stem list.
  std::string hash() const;

 private:
  std::vector<std::string> stems_;
  std::vector<std::uint32_t> df_;
  std::uint32_t num_docs_ = 0;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct BowEntry {
  std::uint32_t index;
  std::uint32_t count;

  bool operator==(const BowEntry&) const = default;
};

// Sparse word-count vector; indices strictly increasing, counts >= 1.
class BowVector {
 public:
  BowVector() = default;
  // Validates ordering and counts; throws std::invalid_argument otherwise.
  explicit BowVector(std::vector<BowEntry> entries);

  const std::vector<BowEntry>& entries() const { return entries_; }
  std::uint64_t total() const { return total_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::optional<std::uint32_t> count_of(std::uint32_t index) const;

  bool operator==(const BowVector&) const = default;

 private:
  std::vector<BowEntry> entries_;
  std::uint64_t total_ = 0;
};

// A course item's bag of words.
struct CorpusDocument {
  std::string item_id;
  BowVector bow;
};

struct CorpusBuild {
  Vocabulary vocab;
  std::vector<CorpusDocument> documents;  // hierarchy order
  std::vector<std::string> excluded;      // lecture/reading items with no text left
};

// Vocabulary stems are sorted bytewise. Throws EmptyCorpusError when no
// lecture or reading item survives preprocessing.
CorpusBuild build_vocabulary(const CourseBranch& course);

// Counts in-vocabulary stems; out-of-vocabulary stems are dropped.
BowVector to_bow(const TokenList& tokens, const Vocabulary& vocab);

}  // namespace forumtrace

#endif  // FORUMTRACE_CORPUS_H_
