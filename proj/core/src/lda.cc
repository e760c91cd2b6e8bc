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

#include "forumtrace/lda.h"

#include <stdexcept>

#include "forumtrace/errors.h"
#include "forumtrace/gibbs.h"

namespace forumtrace {

using nlohmann::json;

void LdaParams::validate() const {
  if (num_topics < 1) throw std::invalid_argument("lda: num_topics must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("lda: alpha must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("lda: beta must be > 0");
  if (train_sweeps < 1) throw std::invalid_argument("lda: train_sweeps must be >= 1");
}

LdaSampler::LdaSampler(const std::vector<CorpusDocument>& corpus, std::size_t vocab_size,
                       const LdaParams& params)
    : params_(params), K_(params.num_topics), V_(vocab_size), rng_(params.seed) {
  params_.validate();
  if (V_ == 0) throw EmptyCorpusError("lda: empty vocabulary");
  for (const CorpusDocument& doc : corpus) {
    if (doc.bow.empty()) {
      skipped_.push_back(doc.item_id);
      continue;
    }
    for (const BowEntry& e : doc.bow.entries()) {
      if (e.index >= V_) throw std::invalid_argument("lda: word outside vocabulary");
    }
    item_ids_.push_back(doc.item_id);
    docs_.push_back(expand_tokens(doc.bow));
  }
  if (docs_.empty()) throw EmptyCorpusError("lda: corpus has no tokens");

  n_dk_.assign(docs_.size() * K_, 0);
  n_kw_.assign(K_ * V_, 0);
  n_k_.assign(K_, 0);
  weights_.resize(K_);
  // Symmetric prior: the initial draw is uniform over topics.
  z_.resize(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    z_[d].resize(docs_[d].size());
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const auto k = static_cast<std::uint32_t>(rng_.uniform_int(K_));
      z_[d][i] = k;
      ++n_dk_[d * K_ + k];
      ++n_kw_[k * V_ + docs_[d][i]];
      ++n_k_[k];
    }
  }
}

void LdaSampler::sweep() {
  const double alpha = params_.alpha;
  const double beta = params_.beta;
  const double vbeta = static_cast<double>(V_) * beta;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    std::uint32_t* ndk = &n_dk_[d * K_];
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t w = docs_[d][i];
      std::uint32_t k = z_[d][i];
      --ndk[k];
      --n_kw_[k * V_ + w];
      --n_k_[k];
      for (std::size_t t = 0; t < K_; ++t) {
        weights_[t] = (ndk[t] + alpha) * (n_kw_[t * V_ + w] + beta) / (n_k_[t] + vbeta);
      }
      k = static_cast<std::uint32_t>(rng_.categorical(weights_));
      z_[d][i] = k;
      ++ndk[k];
      ++n_kw_[k * V_ + w];
      ++n_k_[k];
    }
  }
  ++sweeps_;
}

bool LdaSampler::counts_consistent() const {
  std::vector<std::uint32_t> dk(n_dk_.size(), 0);
  std::vector<std::uint32_t> kw(n_kw_.size(), 0);
  std::vector<std::uint32_t> k_tot(K_, 0);
  std::uint64_t tokens = 0;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t k = z_[d][i];
      ++dk[d * K_ + k];
      ++kw[k * V_ + docs_[d][i]];
      ++k_tot[k];
    }
    tokens += docs_[d].size();
  }
  if (dk != n_dk_ || kw != n_kw_ || k_tot != n_k_) return false;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    std::uint64_t s = 0;
    for (std::size_t k = 0; k < K_; ++k) s += n_dk_[d * K_ + k];
    if (s != docs_[d].size()) return false;
  }
  std::uint64_t all = 0;
  for (std::size_t k = 0; k < K_; ++k) {
    std::uint64_t s = 0;
    for (std::size_t w = 0; w < V_; ++w) s += n_kw_[k * V_ + w];
    if (s != n_k_[k]) return false;
    all += n_k_[k];
  }
  return all == tokens;
}

LdaModel LdaSampler::model(std::string vocab_hash) const {
  LdaModel m;
  m.params = params_;
  m.vocab_hash = std::move(vocab_hash);
  m.phi = Matrix(K_, V_);
  const double vbeta = static_cast<double>(V_) * params_.beta;
  for (std::size_t k = 0; k < K_; ++k) {
    const double denom = n_k_[k] + vbeta;
    for (std::size_t w = 0; w < V_; ++w) m.phi(k, w) = (n_kw_[k * V_ + w] + params_.beta) / denom;
  }
  m.item_ids = item_ids_;
  m.skipped = skipped_;
  const double kalpha = static_cast<double>(K_) * params_.alpha;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    TopicDistribution theta(K_);
    const double denom = static_cast<double>(docs_[d].size()) + kalpha;
    for (std::size_t k = 0; k < K_; ++k) theta[k] = (n_dk_[d * K_ + k] + params_.alpha) / denom;
    m.theta.push_back(std::move(theta));
  }
  return m;
}

LdaModel train_lda(const std::vector<CorpusDocument>& corpus, const Vocabulary& vocab,
                   const LdaParams& params) {
  if (corpus.empty()) throw EmptyCorpusError();
  LdaSampler sampler(corpus, vocab.size(), params);
  for (std::uint32_t s = 0; s < params.train_sweeps; ++s) sampler.sweep();
  return sampler.model(vocab.hash());
}

TopicDistribution infer_lda(const LdaModel& model, const BowVector& bow) {
  return fold_in(model.phi, bow, model.params.alpha,
                 {model.params.fold_in_burn, model.params.fold_in_samples},
                 fold_in_seed(model.params.seed, bow));
}

namespace {

json params_json(const LdaParams& p) {
  return {{"num_topics", p.num_topics},        {"alpha", p.alpha},
          {"beta", p.beta},                    {"train_sweeps", p.train_sweeps},
          {"fold_in_burn", p.fold_in_burn},    {"fold_in_samples", p.fold_in_samples},
          {"seed", p.seed}};
}

}  // namespace

json to_json(const LdaModel& model) {
  return {{"params", params_json(model.params)},
          {"vocab_hash", model.vocab_hash},
          {"phi", model.phi.to_rows()},
          {"item_ids", model.item_ids},
          {"theta", model.theta},
          {"skipped", model.skipped}};
}

LdaModel lda_from_json(const json& j) {
  LdaModel m;
  const json& p = j.at("params");
  m.params.num_topics = p.at("num_topics").get<std::uint32_t>();
  m.params.alpha = p.at("alpha").get<double>();
  m.params.beta = p.at("beta").get<double>();
  m.params.train_sweeps = p.at("train_sweeps").get<std::uint32_t>();
  m.params.fold_in_burn = p.at("fold_in_burn").get<std::uint32_t>();
  m.params.fold_in_samples = p.at("fold_in_samples").get<std::uint32_t>();
  m.params.seed = p.at("seed").get<std::uint64_t>();
  m.vocab_hash = j.at("vocab_hash").get<std::string>();
  m.phi = Matrix::from_rows(j.at("phi").get<std::vector<std::vector<double>>>());
  m.item_ids = j.at("item_ids").get<std::vector<std::string>>();
  m.theta = j.at("theta").get<std::vector<TopicDistribution>>();
  m.skipped = j.at("skipped").get<std::vector<std::string>>();
  return m;
}

}  // namespace forumtrace
