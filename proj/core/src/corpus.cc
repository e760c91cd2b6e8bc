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

#include "forumtrace/corpus.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "forumtrace/errors.h"
#include "forumtrace/format.h"
#include "forumtrace/hash.h"

namespace forumtrace {

using nlohmann::json;

const char* to_string(ItemKind kind) {
  switch (kind) {
    case ItemKind::kLecture:
      return "lecture";
    case ItemKind::kReading:
      return "reading";
    case ItemKind::kQuiz:
      return "quiz";
    case ItemKind::kAssignment:
      return "assignment";
  }
  return "unknown";
}

std::optional<ItemKind> parse_item_kind(std::string_view s) {
  if (s == "lecture") return ItemKind::kLecture;
  if (s == "reading") return ItemKind::kReading;
  if (s == "quiz") return ItemKind::kQuiz;
  if (s == "assignment") return ItemKind::kAssignment;
  return std::nullopt;
}

const char* to_string(PostKind kind) {
  return kind == PostKind::kQuestion ? "question" : "answer";
}

std::size_t CourseBranch::num_lessons() const {
  std::size_t n = 0;
  for (const Module& m : modules) n += m.lessons.size();
  return n;
}

std::size_t CourseBranch::num_items() const {
  std::size_t n = 0;
  for (const Module& m : modules) {
    for (const Lesson& l : m.lessons) n += l.items.size();
  }
  return n;
}

std::vector<ItemRef> flatten(const CourseBranch& course) {
  std::vector<ItemRef> out;
  for (const Module& m : course.modules) {
    for (const Lesson& l : m.lessons) {
      for (const Item& it : l.items) out.push_back({&m, &l, &it});
    }
  }
  return out;
}

namespace {

// Schema helpers. `where` is a JSON-pointer-like path for messages.
const json& field(const json& obj, const char* key, const std::string& where,
                  std::size_t line = 0) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object", line);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"", line);
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& where,
                         std::size_t line = 0) {
  const json& v = field(obj, key, where, line);
  if (!v.is_string()) throw ParseError(where + "/" + key + ": expected a string", line);
  return v.get<std::string>();
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) throw ParseError(where + "/" + key + ": expected an array", 0);
  return v;
}

}  // namespace

CourseBranch parse_course(std::string_view json_text) {
  const json root = parse_json(json_text, "course");
  CourseBranch course;
  course.branch_id = string_field(root, "branch_id", "");
  std::unordered_set<std::string> item_ids;
  const json& modules = array_field(root, "modules", "");
  for (std::size_t mi = 0; mi < modules.size(); ++mi) {
    const std::string mw = "/modules/" + std::to_string(mi);
    Module module;
    module.id = string_field(modules[mi], "id", mw);
    module.name = string_field(modules[mi], "name", mw);
    const json& lessons = array_field(modules[mi], "lessons", mw);
    for (std::size_t li = 0; li < lessons.size(); ++li) {
      const std::string lw = mw + "/lessons/" + std::to_string(li);
      Lesson lesson;
      lesson.id = string_field(lessons[li], "id", lw);
      lesson.name = string_field(lessons[li], "name", lw);
      const json& items = array_field(lessons[li], "items", lw);
      for (std::size_t ii = 0; ii < items.size(); ++ii) {
        const std::string iw = lw + "/items/" + std::to_string(ii);
        Item item;
        item.id = string_field(items[ii], "id", iw);
        item.name = string_field(items[ii], "name", iw);
        const std::string kind = string_field(items[ii], "kind", iw);
        const auto parsed = parse_item_kind(kind);
        if (!parsed) throw ParseError(iw + "/kind: unknown item kind \"" + kind + "\"", 0);
        item.kind = *parsed;
        item.raw_text = string_field(items[ii], "text", iw);
        if (!item_ids.insert(item.id).second) throw DuplicateIdError(item.id);
        lesson.items.push_back(std::move(item));
      }
      module.lessons.push_back(std::move(lesson));
    }
    course.modules.push_back(std::move(module));
  }
  return course;
}

std::string serialize_course(const CourseBranch& course) {
  json modules = json::array();
  for (const Module& m : course.modules) {
    json lessons = json::array();
    for (const Lesson& l : m.lessons) {
      json items = json::array();
      for (const Item& it : l.items) {
        items.push_back({{"id", it.id}, {"name", it.name}, {"kind", to_string(it.kind)},
                         {"text", it.raw_text}});
      }
      lessons.push_back({{"id", l.id}, {"name", l.name}, {"items", std::move(items)}});
    }
    modules.push_back({{"id", m.id}, {"name", m.name}, {"lessons", std::move(lessons)}});
  }
  json root = {{"branch_id", course.branch_id}, {"modules", std::move(modules)}};
  return root.dump(2) + "\n";
}

std::vector<ForumPost> parse_posts(std::string_view jsonl_text) {
  std::vector<ForumPost> posts;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  while (!jsonl_text.empty()) {
    ++line_no;
    const std::size_t nl = jsonl_text.find('\n');
    std::string_view line = jsonl_text.substr(0, nl);
    jsonl_text.remove_prefix(nl == std::string_view::npos ? jsonl_text.size() : nl + 1);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json obj;
    try {
      obj = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
      throw ParseError("posts: invalid JSON", line_no, e.byte);
    }
    const std::string where = "posts";
    ForumPost post;
    post.post_id = string_field(obj, "post_id", where, line_no);
    post.forum_name = string_field(obj, "forum", where, line_no);
    const std::string kind = string_field(obj, "kind", where, line_no);
    if (kind == "question") {
      post.kind = PostKind::kQuestion;
    } else if (kind == "answer") {
      post.kind = PostKind::kAnswer;
    } else {
      throw ParseError("posts: unknown post kind \"" + kind + "\"", line_no);
    }
    post.raw_text = string_field(obj, "text", where, line_no);
    if (!seen.insert(post.post_id).second) throw DuplicateIdError(post.post_id);
    posts.push_back(std::move(post));
  }
  return posts;
}

std::string serialize_posts(const std::vector<ForumPost>& posts) {
  std::string out;
  for (const ForumPost& p : posts) {
    json obj = {{"post_id", p.post_id},
                {"forum", p.forum_name},
                {"kind", to_string(p.kind)},
                {"text", p.raw_text}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> stems, std::vector<std::uint32_t> df,
                       std::uint32_t num_docs)
    : stems_(std::move(stems)), df_(std::move(df)), num_docs_(num_docs) {
  if (stems_.size() != df_.size()) throw std::invalid_argument("vocabulary: df size mismatch");
  for (std::uint32_t i = 0; i < stems_.size(); ++i) {
    if (df_[i] < 1 || df_[i] > num_docs_) {
      throw std::invalid_argument("vocabulary: df out of range for \"" + stems_[i] + "\"");
    }
    if (!index_.emplace(stems_[i], i).second) {
      throw std::invalid_argument("vocabulary: duplicate stem \"" + stems_[i] + "\"");
    }
  }
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view stem) const {
  auto it = index_.find(std::string(stem));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Vocabulary::hash() const {
  std::string joined;
  for (const std::string& s : stems_) {
    joined += s;
    joined += '\n';
  }
  return fingerprint(joined);
}

BowVector::BowVector(std::vector<BowEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].count == 0) throw std::invalid_argument("bow: zero count");
    if (i > 0 && entries_[i].index <= entries_[i - 1].index) {
      throw std::invalid_argument("bow: indices must be strictly increasing");
    }
    total_ += entries_[i].count;
  }
}

std::optional<std::uint32_t> BowVector::count_of(std::uint32_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const BowEntry& e, std::uint32_t i) { return e.index < i; });
  if (it == entries_.end() || it->index != index) return std::nullopt;
  return it->count;
}

CorpusBuild build_vocabulary(const CourseBranch& course) {
  struct Pending {
    std::string item_id;
    TokenList tokens;
  };
  std::vector<Pending> pending;
  CorpusBuild out;
  std::map<std::string, std::uint32_t> df;
  for (const ItemRef& ref : flatten(course)) {
    if (!is_course_material(ref.item->kind)) continue;
    TokenList tokens = preprocess(ref.item->raw_text);
    if (tokens.empty()) {
      out.excluded.push_back(ref.item->id);
      continue;
    }
    std::set<std::string_view> unique(tokens.begin(), tokens.end());
    for (std::string_view s : unique) ++df[std::string(s)];
    pending.push_back({ref.item->id, std::move(tokens)});
  }
  if (pending.empty()) throw EmptyCorpusError("course has no lecture or reading text");

  std::vector<std::string> stems;
  std::vector<std::uint32_t> dfs;
  stems.reserve(df.size());
  dfs.reserve(df.size());
  for (auto& [stem, count] : df) {
    stems.push_back(stem);
    dfs.push_back(count);
  }
  out.vocab = Vocabulary(std::move(stems), std::move(dfs),
                         static_cast<std::uint32_t>(pending.size()));
  for (Pending& p : pending) {
    out.documents.push_back({std::move(p.item_id), to_bow(p.tokens, out.vocab)});
  }
  return out;
}

BowVector to_bow(const TokenList& tokens, const Vocabulary& vocab) {
  std::map<std::uint32_t, std::uint32_t> counts;
  for (const std::string& t : tokens) {
    if (auto idx = vocab.index_of(t)) ++counts[*idx];
  }
  std::vector<BowEntry> entries;
  entries.reserve(counts.size());
  for (auto [index, count] : counts) entries.push_back({index, count});
  return BowVector(std::move(entries));
}

}  // namespace forumtrace
