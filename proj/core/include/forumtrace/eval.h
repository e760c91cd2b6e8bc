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

#ifndef FORUMTRACE_EVAL_H_
#define FORUMTRACE_EVAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forumtrace/corpus.h"
#include "forumtrace/stats.h"
#include "forumtrace/trace.h"

namespace forumtrace {

inline constexpr const char* kOffTopic = "OFF_TOPIC";

// One manually labeled post. An absent item_name is the OFF_TOPIC sentinel.
struct GroundTruthLabel {
  std::string post_id;
  std::string module_name;
  std::string lesson_name;
  std::optional<std::string> item_name;

  bool off_topic() const { return !item_name.has_value(); }
  bool operator==(const GroundTruthLabel&) const = default;
};

// CSV with header "post_id,module,lesson,item"; RFC 4180 quoting. Throws
// ParseError naming the line.
std::vector<GroundTruthLabel> parse_truth_csv(std::string_view text);
std::string serialize_truth_csv(std::span<const GroundTruthLabel> labels);

// A label resolved against the course: the candidate item id, or nothing for
// an off-topic post.
struct TruthTarget {
  std::string post_id;
  std::optional<std::string> item_id;
};

// Maps label names onto candidate item ids. The item column may hold an item
// id, or an item name qualified by the module and lesson names; a bare item
// name is accepted when it is unique among candidates.
class TruthResolver {
 public:
  TruthResolver(const CourseBranch& course, std::span<const std::string> candidate_ids,
                std::span<const ForumPost> posts);

  // Throws EvalError for unknown posts or items.
  TruthTarget resolve(const GroundTruthLabel& label) const;
  std::vector<TruthTarget> resolve_all(std::span<const GroundTruthLabel> labels) const;

  // Module and lesson names of a candidate item.
  std::pair<std::string, std::string> parents_of(const std::string& item_id) const;

 private:
  struct Place {
    std::string module_name;
    std::string lesson_name;
    std::string item_name;
  };
  std::unordered_map<std::string, Place> candidates_;
  std::unordered_map<std::string, std::vector<std::string>> by_item_name_;
  std::unordered_map<std::string, bool> posts_;
};

// Uniform sample without replacement (partial Fisher-Yates). Throws
// SampleError when n exceeds the number of posts.
std::vector<ForumPost> sample_posts(std::span<const ForumPost> posts, std::size_t n,
                                    std::uint64_t seed);

// 1 / (1-based position of the true item). Throws ExcludedPostError for an
// off-topic label or an untraceable trace, and EvalError when the item is
// missing from the ranking.
double reciprocal_rank(const RankedTrace& trace, const TruthTarget& truth);

// Arithmetic mean; throws EvalError on an empty list.
double mrr(std::span<const double> reciprocal_ranks);

struct BootstrapResult {
  std::vector<double> mrrs;  // one per resample
  double mean = 0.0;
};

// Indices drawn (with replacement) for one resample. Each resample has its own
// generator stream derived from (seed, resample), so resamples can be
// computed independently and are paired across models sharing a seed.
std::vector<std::size_t> bootstrap_indices(std::size_t n, std::uint32_t resample,
                                           std::uint64_t seed);

// Throws EvalError on an empty list.
BootstrapResult bootstrap_mrr(std::span<const double> reciprocal_ranks,
                              std::uint32_t resamples, std::uint64_t seed);

// Every drawn reciprocal rank of every resample, concatenated.
std::vector<double> pooled_bootstrap_ranks(std::span<const double> reciprocal_ranks,
                                           std::uint32_t resamples, std::uint64_t seed);

struct ModelEvaluation {
  std::string model;
  std::vector<std::string> post_ids;  // pairs entering MRR, in label order
  std::vector<double> reciprocal_ranks;
  std::size_t excluded_off_topic = 0;
  std::size_t excluded_untraceable = 0;
  double mrr = 0.0;
  double module_hit_rate = 0.0;  // top-ranked item in the labeled module
  double lesson_hit_rate = 0.0;  // top-ranked item in the labeled lesson
  BootstrapResult bootstrap;
};

// Scores one model's traces against resolved labels. Throws EvalError when a
// labeled post has no trace or no pair survives exclusion.
ModelEvaluation evaluate_traces(std::string model, std::span<const RankedTrace> traces,
                                std::span<const TruthTarget> truths,
                                const TruthResolver& resolver, std::uint32_t resamples,
                                std::uint64_t seed);

struct ComparisonRow {
  std::string model_a;
  std::string model_b;
  RankSumResult test;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

// Rank-sum test between the two models' pooled bootstrap reciprocal ranks.
// Throws EvalError unless both were scored on the same pairs.
ComparisonRow compare_models(const ModelEvaluation& a, const ModelEvaluation& b,
                             std::uint32_t resamples, std::uint64_t seed);

struct OovEntry {
  std::string stem;
  std::uint64_t frequency = 0;

  bool operator==(const OovEntry&) const = default;
};

// Post stems missing from the course vocabulary, most frequent first, ties
// in byte order. top_k == 0 keeps everything.
std::vector<OovEntry> oov_report(std::span<const TokenList> posts, const Vocabulary& vocab,
                                 std::size_t top_k);

}  // namespace forumtrace

#endif  // FORUMTRACE_EVAL_H_
