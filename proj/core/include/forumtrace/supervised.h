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

#ifndef FORUMTRACE_SUPERVISED_H_
#define FORUMTRACE_SUPERVISED_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forumtrace/corpus.h"
#include "forumtrace/matrix.h"
#include "forumtrace/random.h"
#include "forumtrace/sparse_vector.h"

namespace forumtrace {

// The (module, lesson, item) names of one course document. Labels are
// compared by exact string equality.
struct LabelSet {
  std::string module_name;
  std::string lesson_name;
  std::string item_name;

  std::vector<std::string> labels() const { return {module_name, lesson_name, item_name}; }
};

struct LabelCensus {
  std::vector<std::string> item_ids;   // lecture/reading items, hierarchy order
  std::vector<LabelSet> label_sets;    // parallel to item_ids
  std::vector<std::string> distinct;   // first-appearance order
};

// Throws LabelError when a module, lesson or item name is blank.
LabelCensus extract_labels(const CourseBranch& course);

struct LabeledDocument {
  std::string item_id;
  BowVector bow;
  std::vector<std::string> labels;
};

// Pairs corpus documents with their label sets (by item id).
std::vector<LabeledDocument> attach_labels(const std::vector<CorpusDocument>& corpus,
                                           const LabelCensus& census);

inline constexpr const char* kBackgroundLabel = "__background__";

struct LldaParams {
  double alpha = 0.01;
  double beta = 0.001;
  std::uint32_t iterations = 50;
  std::uint32_t fold_in_burn = 50;
  std::uint32_t fold_in_samples = 10;
  bool background_label = false;  // adds kBackgroundLabel to every document
  std::uint64_t seed = 13;

  void validate() const;
};

struct LldaModel {
  LldaParams params;
  std::string vocab_hash;
  std::vector<std::string> labels;       // topic axis; order is part of the model
  Matrix phi;                            // L x V
  std::vector<std::string> item_ids;
  std::vector<TopicDistribution> theta;  // length L, zero off the doc's labels

  std::size_t num_labels() const { return labels.size(); }
};

// Collapsed Gibbs where each token's topic is drawn only from its document's
// labels, weight (n_dl + alpha)(n_lw + beta) / (n_l + V beta). Throws
// LabelError for an unlabeled document and EmptyCorpusError for no tokens.
class LldaSampler {
 public:
  LldaSampler(const std::vector<LabeledDocument>& corpus, std::size_t vocab_size,
              const LldaParams& params);

  void sweep();
  bool counts_consistent() const;
  // True when no token of any document is assigned outside its label set.
  bool respects_labels() const;

  const std::vector<std::string>& labels() const { return labels_; }
  std::uint32_t doc_label_count(std::size_t d, std::size_t l) const { return n_dl_[d * L_ + l]; }
  std::size_t num_documents() const { return docs_.size(); }

  LldaModel model(std::string vocab_hash) const;

 private:
  LldaParams params_;
  std::size_t L_ = 0;
  std::size_t V_;
  std::vector<std::string> labels_;
  std::vector<std::string> item_ids_;
  std::vector<std::vector<std::uint32_t>> docs_;
  std::vector<std::vector<std::uint32_t>> doc_labels_;
  std::vector<std::vector<std::uint32_t>> z_;
  std::vector<std::uint32_t> n_dl_;
  std::vector<std::uint32_t> n_lw_;
  std::vector<std::uint32_t> n_l_;
  std::vector<double> weights_;
  Rng rng_;
};

LldaModel train_llda(const std::vector<LabeledDocument>& corpus, const Vocabulary& vocab,
                     const LldaParams& params);

// Fold-in over all labels (posts carry none) with phi clamped.
TopicDistribution infer_llda(const LldaModel& model, const BowVector& bow);

struct AtParams {
  std::uint32_t num_topics = 100;
  double alpha = 0.01;
  double beta = 0.001;
  std::uint32_t train_sweeps = 200;
  std::uint32_t fold_in_burn = 50;
  std::uint32_t fold_in_samples = 10;
  std::uint64_t seed = 13;

  void validate() const;
};

struct AtModel {
  AtParams params;
  std::string vocab_hash;
  std::vector<std::string> authors;      // distinct labels, first appearance
  Matrix author_topic;                   // A x K
  Matrix phi;                            // K x V
  std::vector<std::string> item_ids;
  std::vector<TopicDistribution> theta;  // per item, from its tokens' topics

  std::size_t num_topics() const { return phi.rows(); }
};

// Author-topic Gibbs: each token draws an (author, topic) pair jointly over
// the document's authors with weight
//   (n_ak + alpha) / (n_a + K alpha) * (n_kw + beta) / (n_k + V beta).
class AtSampler {
 public:
  AtSampler(const std::vector<LabeledDocument>& corpus, std::size_t vocab_size,
            const AtParams& params);

  void sweep();
  bool counts_consistent() const;

  const std::vector<std::string>& authors() const { return authors_; }
  AtModel model(std::string vocab_hash) const;

 private:
  AtParams params_;
  std::size_t K_;
  std::size_t V_;
  std::size_t A_ = 0;
  std::vector<std::string> authors_;
  std::vector<std::string> item_ids_;
  std::vector<std::vector<std::uint32_t>> docs_;
  std::vector<std::vector<std::uint32_t>> doc_authors_;
  std::vector<std::vector<std::uint32_t>> z_;
  std::vector<std::vector<std::uint32_t>> x_;  // author per token
  std::vector<std::uint32_t> n_ak_;
  std::vector<std::uint32_t> n_a_;
  std::vector<std::uint32_t> n_kw_;
  std::vector<std::uint32_t> n_k_;
  std::vector<std::uint32_t> n_dk_;
  std::vector<double> weights_;
  Rng rng_;
};

AtModel train_at(const std::vector<LabeledDocument>& corpus, const Vocabulary& vocab,
                 const AtParams& params);

// The post is folded in as a fresh pseudo-author with phi clamped.
TopicDistribution infer_at(const AtModel& model, const BowVector& bow);

nlohmann::json to_json(const LldaModel& model);
LldaModel llda_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AtModel& model);
AtModel at_from_json(const nlohmann::json& j);

}  // namespace forumtrace

#endif  // FORUMTRACE_SUPERVISED_H_
