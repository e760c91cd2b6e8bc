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

#ifndef FORUMTRACE_HDP_H_
#define FORUMTRACE_HDP_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forumtrace/corpus.h"
#include "forumtrace/matrix.h"
#include "forumtrace/sparse_vector.h"

namespace forumtrace {

// HDP-LDA by online stick-breaking variational inference. Defaults are the
// usual online-HDP settings: kappa 1, tau 64, K 15, T 150, alpha 0.01,
// gamma 1, eta 0.01.
struct HdpParams {
  double kappa = 1.0;                     // learning-rate decay exponent
  double tau = 64.0;                      // learning-rate offset
  std::uint32_t doc_truncation = 15;      // K
  std::uint32_t corpus_truncation = 150;  // T
  double alpha = 0.01;                    // document-level concentration
  double gamma = 1.0;                     // corpus-level concentration
  double eta = 0.01;                      // topic-word prior
  std::uint32_t batch_size = 0;           // 0 means min(256, num_docs)
  std::uint32_t passes = 10;
  double var_converge = 1e-4;
  std::uint32_t max_doc_iterations = 100;
  std::uint64_t seed = 13;

  // Throws std::invalid_argument unless 1 <= K <= T, kappa in (0.5, 1] and
  // every concentration is positive.
  void validate() const;
};

inline constexpr double kActiveTopicThreshold = 1e-4;

// rho_t = (tau + t)^-kappa for the t-th update, t >= 1.
double hdp_learning_rate(const HdpParams& params, std::uint64_t t);

struct HdpModel {
  HdpParams params;
  std::string vocab_hash;
  Matrix lambda;                     // T x V variational topic-word statistics
  std::vector<double> lambda_sum;    // row sums of lambda
  Matrix var_sticks;                 // 2 x (T - 1) corpus stick Beta parameters
  std::vector<double> stick_weights; // expected corpus weights, sum to 1
  std::uint64_t updates = 0;
  std::vector<std::string> item_ids;
  std::vector<TopicDistribution> theta;  // length T, zero-padded

  // Derived from the above; rebuilt by refresh().
  Matrix phi;                        // (lambda + eta) / (V eta + lambda_sum)
  Matrix elog_beta;
  std::vector<double> elog_sticks;

  std::size_t num_topics() const { return lambda.rows(); }
  std::size_t vocab_size() const { return lambda.cols(); }

  // Topics whose corpus weight exceeds kActiveTopicThreshold.
  std::vector<std::size_t> active_topics() const;

  void refresh();
};

// Result of the per-document variational step with the global topics held
// fixed.
struct HdpDocumentFit {
  double bound = 0.0;
  TopicDistribution theta;  // projected onto the T corpus topics
};

class HdpTrainer {
 public:
  // Random initial lambda from params.seed.
  HdpTrainer(const std::vector<CorpusDocument>& corpus, std::size_t vocab_size,
             const HdpParams& params);
  // Caller-supplied initial lambda (T x V); used by reference comparisons.
  HdpTrainer(const std::vector<CorpusDocument>& corpus, std::size_t vocab_size,
             const HdpParams& params, Matrix initial_lambda);

  // Processes mini-batches in corpus order once.
  void run_pass();
  // One global update from the given documents.
  void update_batch(std::span<const std::size_t> docs);

  // Sum of document-level bounds under the current global state.
  double objective() const;

  std::uint64_t updates() const { return updates_; }
  HdpModel model(std::string vocab_hash) const;

 private:
  void init(Matrix initial_lambda);
  HdpModel snapshot() const;

  HdpParams params_;
  std::size_t V_;
  std::vector<std::string> item_ids_;
  std::vector<BowVector> docs_;
  Matrix lambda_;
  std::vector<double> lambda_sum_;
  Matrix var_sticks_;
  std::vector<double> varphi_ss_;
  std::uint64_t updates_ = 0;
};

HdpModel train_hdp(const std::vector<CorpusDocument>& corpus, const Vocabulary& vocab,
                   const HdpParams& params);

// Document-level variational fit against a trained model.
HdpDocumentFit fit_hdp_document(const HdpModel& model, const BowVector& bow);

// Throws UntraceablePostError on an empty bag.
TopicDistribution infer_hdp(const HdpModel& model, const BowVector& bow);

nlohmann::json to_json(const HdpModel& model);
HdpModel hdp_from_json(const nlohmann::json& j);

}  // namespace forumtrace

#endif  // FORUMTRACE_HDP_H_
