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

#ifndef FORUMTRACE_LDA_H_
#define FORUMTRACE_LDA_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forumtrace/corpus.h"
#include "forumtrace/matrix.h"
#include "forumtrace/random.h"
#include "forumtrace/sparse_vector.h"

namespace forumtrace {

struct LdaParams {
  std::uint32_t num_topics = 100;
  double alpha = 0.01;
  double beta = 0.001;
  std::uint32_t train_sweeps = 200;
  std::uint32_t fold_in_burn = 50;
  std::uint32_t fold_in_samples = 10;
  std::uint64_t seed = 13;

  // Throws std::invalid_argument when K < 1, alpha/beta <= 0 or sweeps < 1.
  void validate() const;
};

struct LdaModel {
  LdaParams params;
  std::string vocab_hash;
  Matrix phi;                              // K x V, rows are distributions
  std::vector<std::string> item_ids;       // training documents, in order
  std::vector<TopicDistribution> theta;    // parallel to item_ids
  std::vector<std::string> skipped;        // zero-length documents

  std::size_t num_topics() const { return phi.rows(); }
  std::size_t vocab_size() const { return phi.cols(); }
};

// Collapsed Gibbs sampler state for base LDA. Exposed so the count
// identities can be checked between sweeps; train_lda() is the usual entry.
class LdaSampler {
 public:
  // Zero-length documents are skipped and listed in skipped(). Throws
  // EmptyCorpusError when nothing remains.
  LdaSampler(const std::vector<CorpusDocument>& corpus, std::size_t vocab_size,
             const LdaParams& params);

  // One pass over every token: the token's topic is resampled with weight
  // (n_dk + alpha)(n_kw + beta) / (n_k + V beta), its own count removed.
  void sweep();

  std::uint32_t sweeps_done() const { return sweeps_; }

  // sum_k n_dk = |d|, sum_w n_kw = n_k, sum_k n_k = token count, and the
  // tables agree with the current assignments.
  bool counts_consistent() const;

  std::uint32_t doc_topic_count(std::size_t d, std::size_t k) const { return n_dk_[d * K_ + k]; }
  std::uint32_t topic_word_count(std::size_t k, std::size_t w) const { return n_kw_[k * V_ + w]; }
  std::uint32_t topic_count(std::size_t k) const { return n_k_[k]; }
  std::size_t num_documents() const { return docs_.size(); }

  LdaModel model(std::string vocab_hash) const;

 private:
  LdaParams params_;
  std::size_t K_;
  std::size_t V_;
  std::vector<std::string> item_ids_;
  std::vector<std::string> skipped_;
  std::vector<std::vector<std::uint32_t>> docs_;   // word per token
  std::vector<std::vector<std::uint32_t>> z_;      // topic per token
  std::vector<std::uint32_t> n_dk_;
  std::vector<std::uint32_t> n_kw_;
  std::vector<std::uint32_t> n_k_;
  std::vector<double> weights_;
  Rng rng_;
  std::uint32_t sweeps_ = 0;
};

LdaModel train_lda(const std::vector<CorpusDocument>& corpus, const Vocabulary& vocab,
                   const LdaParams& params);

// Fold-in with phi clamped; the model is not modified. Throws
// UntraceablePostError on an empty bag.
TopicDistribution infer_lda(const LdaModel& model, const BowVector& bow);

nlohmann::json to_json(const LdaModel& model);
LdaModel lda_from_json(const nlohmann::json& j);

}  // namespace forumtrace

#endif  // FORUMTRACE_LDA_H_
