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

#include "forumtrace/eval.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "forumtrace/errors.h"
#include "forumtrace/random.h"

namespace forumtrace {

namespace {

constexpr const char* kTruthHeader[] = {"post_id", "module", "lesson", "item"};

// Splits RFC 4180 text into records; each record remembers its first line.
struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<CsvRecord> read_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  std::size_t line = 1;
  current.line = 1;
  bool in_quotes = false;
  bool field_started = false;
  auto end_record = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    const bool blank = current.fields.size() == 1 && current.fields[0].empty();
    if (!blank) records.push_back(std::move(current));
    current = CsvRecord{};
    field_started = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      current.fields.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      end_record();
      ++line;
      current.line = line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field", current.line);
  if (field_started || !current.fields.empty()) end_record();
  return records;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::vector<GroundTruthLabel> parse_truth_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const std::vector<CsvRecord> records = read_csv(text);
  if (records.empty()) throw ParseError("truth file has no header", 1);
  const CsvRecord& header = records.front();
  if (header.fields.size() != 4 ||
      !std::equal(header.fields.begin(), header.fields.end(), std::begin(kTruthHeader))) {
    throw ParseError("expected header post_id,module,lesson,item", header.line);
  }
  std::vector<GroundTruthLabel> labels;
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    if (rec.fields.size() != 4) {
      throw ParseError("expected 4 fields, found " + std::to_string(rec.fields.size()), rec.line);
    }
    if (rec.fields[0].empty()) throw ParseError("empty post_id", rec.line, 1);
    if (!seen.insert(rec.fields[0]).second) {
      throw ParseError("duplicate label for post " + rec.fields[0], rec.line, 1);
    }
    GroundTruthLabel label{rec.fields[0], rec.fields[1], rec.fields[2], std::nullopt};
    if (rec.fields[3] != kOffTopic) {
      if (rec.fields[3].empty()) throw ParseError("empty item", rec.line, 4);
      label.item_name = rec.fields[3];
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::string serialize_truth_csv(std::span<const GroundTruthLabel> labels) {
  std::string out = "post_id,module,lesson,item\n";
  for (const GroundTruthLabel& l : labels) {
    out += csv_field(l.post_id) + "," + csv_field(l.module_name) + "," +
           csv_field(l.lesson_name) + "," + csv_field(l.item_name.value_or(kOffTopic)) + "\n";
  }
  return out;
}

TruthResolver::TruthResolver(const CourseBranch& course, std::span<const std::string> candidate_ids,
                             std::span<const ForumPost> posts) {
  std::unordered_set<std::string> wanted(candidate_ids.begin(), candidate_ids.end());
  for (const ItemRef& ref : flatten(course)) {
    if (!wanted.count(ref.item->id)) continue;
    candidates_.emplace(ref.item->id, Place{ref.module->name, ref.lesson->name, ref.item->name});
    by_item_name_[ref.item->name].push_back(ref.item->id);
  }
  for (const ForumPost& p : posts) posts_.emplace(p.post_id, true);
}

TruthTarget TruthResolver::resolve(const GroundTruthLabel& label) const {
  if (!posts_.count(label.post_id)) throw EvalError("truth names unknown post " + label.post_id);
  if (label.off_topic()) return {label.post_id, std::nullopt};
  const std::string& item = *label.item_name;
  if (candidates_.count(item)) return {label.post_id, item};
  auto it = by_item_name_.find(item);
  if (it != by_item_name_.end()) {
    std::vector<std::string> exact;
    for (const std::string& id : it->second) {
      const Place& p = candidates_.at(id);
      if (p.module_name == label.module_name && p.lesson_name == label.lesson_name) {
        exact.push_back(id);
      }
    }
    if (exact.size() == 1) return {label.post_id, exact.front()};
    if (exact.empty() && it->second.size() == 1) return {label.post_id, it->second.front()};
    throw EvalError("ambiguous item '" + item + "' for post " + label.post_id);
  }
  throw EvalError("truth names unknown item '" + item + "' for post " + label.post_id);
}

std::vector<TruthTarget> TruthResolver::resolve_all(
    std::span<const GroundTruthLabel> labels) const {
  std::vector<TruthTarget> out;
  out.reserve(labels.size());
  for (const GroundTruthLabel& l : labels) out.push_back(resolve(l));
  return out;
}

std::pair<std::string, std::string> TruthResolver::parents_of(const std::string& item_id) const {
  auto it = candidates_.find(item_id);
  if (it == candidates_.end()) throw EvalError("unknown item " + item_id);
  return {it->second.module_name, it->second.lesson_name};
}

std::vector<ForumPost> sample_posts(std::span<const ForumPost> posts, std::size_t n,
                                    std::uint64_t seed) {
  if (n > posts.size()) {
    throw SampleError("cannot sample " + std::to_string(n) + " of " +
                      std::to_string(posts.size()) + " posts");
  }
  std::vector<std::size_t> idx(posts.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.uniform_int(idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  std::vector<ForumPost> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(posts[idx[i]]);
  return out;
}

double reciprocal_rank(const RankedTrace& trace, const TruthTarget& truth) {
  if (!truth.item_id) throw ExcludedPostError(ExclusionReason::kOffTopic);
  if (trace.untraceable) throw ExcludedPostError(ExclusionReason::kUntraceable);
  for (std::size_t i = 0; i < trace.ranking.size(); ++i) {
    if (trace.ranking[i].item_id == *truth.item_id) return 1.0 / static_cast<double>(i + 1);
  }
  throw EvalError("item " + *truth.item_id + " missing from the " + trace.model +
                  " ranking of post " + trace.post_id);
}

double mrr(std::span<const double> reciprocal_ranks) {
  if (reciprocal_ranks.empty()) throw EvalError("MRR of an empty list");
  double s = 0.0;
  for (double r : reciprocal_ranks) s += r;
  return s / static_cast<double>(reciprocal_ranks.size());
}

std::vector<std::size_t> bootstrap_indices(std::size_t n, std::uint32_t resample,
                                           std::uint64_t seed) {
  Rng rng(derive_seed(seed, resample));
  std::vector<std::size_t> out(n);
  for (std::size_t& i : out) i = rng.uniform_int(n);
  return out;
}

BootstrapResult bootstrap_mrr(std::span<const double> reciprocal_ranks, std::uint32_t resamples,
                              std::uint64_t seed) {
  if (reciprocal_ranks.empty()) throw EvalError("bootstrap of an empty list");
  BootstrapResult result;
  result.mrrs.reserve(resamples);
  const std::size_t n = reciprocal_ranks.size();
  for (std::uint32_t r = 0; r < resamples; ++r) {
    double s = 0.0;
    for (std::size_t i : bootstrap_indices(n, r, seed)) s += reciprocal_ranks[i];
    result.mrrs.push_back(s / static_cast<double>(n));
  }
  if (!result.mrrs.empty()) result.mean = mrr(result.mrrs);
  return result;
}

std::vector<double> pooled_bootstrap_ranks(std::span<const double> reciprocal_ranks,
                                           std::uint32_t resamples, std::uint64_t seed) {
  if (reciprocal_ranks.empty()) throw EvalError("bootstrap of an empty list");
  const std::size_t n = reciprocal_ranks.size();
  std::vector<double> out;
  out.reserve(n * resamples);
  for (std::uint32_t r = 0; r < resamples; ++r) {
    for (std::size_t i : bootstrap_indices(n, r, seed)) out.push_back(reciprocal_ranks[i]);
  }
  return out;
}

ModelEvaluation evaluate_traces(std::string model, std::span<const RankedTrace> traces,
                                std::span<const TruthTarget> truths,
                                const TruthResolver& resolver, std::uint32_t resamples,
                                std::uint64_t seed) {
  std::unordered_map<std::string, const RankedTrace*> by_post;
  for (const RankedTrace& t : traces) by_post.emplace(t.post_id, &t);

  ModelEvaluation ev;
  ev.model = std::move(model);
  std::size_t module_hits = 0;
  std::size_t lesson_hits = 0;
  for (const TruthTarget& truth : truths) {
    if (!truth.item_id) {
      ++ev.excluded_off_topic;
      continue;
    }
    auto it = by_post.find(truth.post_id);
    if (it == by_post.end()) {
      throw EvalError("no " + ev.model + " trace for labeled post " + truth.post_id);
    }
    const RankedTrace& trace = *it->second;
    double rr = 0.0;
    try {
      rr = reciprocal_rank(trace, truth);
    } catch (const ExcludedPostError&) {
      ++ev.excluded_untraceable;
      continue;
    }
    ev.post_ids.push_back(truth.post_id);
    ev.reciprocal_ranks.push_back(rr);
    const auto truth_parents = resolver.parents_of(*truth.item_id);
    const auto top_parents = resolver.parents_of(trace.ranking.front().item_id);
    if (top_parents.first == truth_parents.first) {
      ++module_hits;
      if (top_parents.second == truth_parents.second) ++lesson_hits;
    }
  }
  if (ev.reciprocal_ranks.empty()) throw EvalError("no labeled pairs left for " + ev.model);
  ev.mrr = mrr(ev.reciprocal_ranks);
  const double n = static_cast<double>(ev.reciprocal_ranks.size());
  ev.module_hit_rate = static_cast<double>(module_hits) / n;
  ev.lesson_hit_rate = static_cast<double>(lesson_hits) / n;
  ev.bootstrap = bootstrap_mrr(ev.reciprocal_ranks, resamples, seed);
  return ev;
}

ComparisonRow compare_models(const ModelEvaluation& a, const ModelEvaluation& b,
                             std::uint32_t resamples, std::uint64_t seed) {
  if (a.post_ids != b.post_ids) {
    throw EvalError(a.model + " and " + b.model + " were scored on different pairs");
  }
  if (resamples == 0) throw EvalError("comparison needs at least one resample");
  const std::vector<double> pa = pooled_bootstrap_ranks(a.reciprocal_ranks, resamples, seed);
  const std::vector<double> pb = pooled_bootstrap_ranks(b.reciprocal_ranks, resamples, seed);
  ComparisonRow row;
  row.model_a = a.model;
  row.model_b = b.model;
  row.test = wilcoxon_rank_sum(pa, pb);
  row.n_a = pa.size();
  row.n_b = pb.size();
  return row;
}

std::vector<OovEntry> oov_report(std::span<const TokenList> posts, const Vocabulary& vocab,
                                 std::size_t top_k) {
  std::map<std::string, std::uint64_t> counts;
  for (const TokenList& tokens : posts) {
    for (const std::string& t : tokens) {
      if (!vocab.contains(t)) ++counts[t];
    }
  }
  std::vector<OovEntry> out;
  out.reserve(counts.size());
  for (auto& [stem, n] : counts) out.push_back({stem, n});
  std::stable_sort(out.begin(), out.end(),
                   [](const OovEntry& a, const OovEntry& b) { return a.frequency > b.frequency; });
  if (top_k != 0 && out.size() > top_k) out.resize(top_k);
  return out;
}

}  // namespace forumtrace
