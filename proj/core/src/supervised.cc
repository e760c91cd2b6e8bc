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

#include "forumtrace/supervised.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "forumtrace/errors.h"
#include "forumtrace/gibbs.h"

namespace forumtrace {

using nlohmann::json;

namespace {

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Maps each document's labels onto a shared axis in first-appearance order.
// Duplicate labels within a document collapse to one.
void index_labels(const std::vector<LabeledDocument>& corpus, bool background,
                  std::vector<std::string>& axis,
                  std::vector<std::vector<std::uint32_t>>& per_doc) {
  std::unordered_map<std::string, std::uint32_t> index;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, static_cast<std::uint32_t>(axis.size()));
    if (inserted) axis.push_back(label);
    return it->second;
  };
  for (const LabeledDocument& doc : corpus) {
    if (doc.labels.empty()) throw LabelError("document " + doc.item_id + " has no labels");
    std::vector<std::uint32_t> ids;
    for (const std::string& label : doc.labels) {
      const std::uint32_t id = intern(label);
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    per_doc.push_back(std::move(ids));
  }
  if (background) {
    const std::uint32_t id = intern(kBackgroundLabel);
    for (auto& ids : per_doc) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
  }
}

void check_words(const BowVector& bow, std::size_t vocab_size, const char* who) {
  for (const BowEntry& e : bow.entries()) {
    if (e.index >= vocab_size) {
      throw std::invalid_argument(std::string(who) + ": word outside vocabulary");
    }
  }
}

}  // namespace

LabelCensus extract_labels(const CourseBranch& course) {
  LabelCensus census;
  std::unordered_map<std::string, bool> seen;
  for (const ItemRef& ref : flatten(course)) {
    if (!is_course_material(ref.item->kind)) continue;
    LabelSet set{ref.module->name, ref.lesson->name, ref.item->name};
    for (const std::string& label : set.labels()) {
      if (is_blank(label)) throw LabelError("item " + ref.item->id + " has a blank label");
    }
    for (const std::string& label : set.labels()) {
      if (seen.emplace(label, true).second) census.distinct.push_back(label);
    }
    census.item_ids.push_back(ref.item->id);
    census.label_sets.push_back(std::move(set));
  }
  return census;
}

std::vector<LabeledDocument> attach_labels(const std::vector<CorpusDocument>& corpus,
                                           const LabelCensus& census) {
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < census.item_ids.size(); ++i) by_id.emplace(census.item_ids[i], i);
  std::vector<LabeledDocument> out;
  out.reserve(corpus.size());
  for (const CorpusDocument& doc : corpus) {
    auto it = by_id.find(doc.item_id);
    if (it == by_id.end()) throw LabelError("no labels for item " + doc.item_id);
    out.push_back({doc.item_id, doc.bow, census.label_sets[it->second].labels()});
  }
  return out;
}

// Labeled LDA.

void LldaParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("llda: alpha must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("llda: beta must be > 0");
  if (iterations < 1) throw std::invalid_argument("llda: iterations must be >= 1");
}

LldaSampler::LldaSampler(const std::vector<LabeledDocument>& corpus, std::size_t vocab_size,
                         const LldaParams& params)
    : params_(params), V_(vocab_size), rng_(params.seed) {
  params_.validate();
  if (corpus.empty() || V_ == 0) throw EmptyCorpusError();
  std::vector<std::vector<std::uint32_t>> all_labels;
  index_labels(corpus, params_.background_label, labels_, all_labels);
  L_ = labels_.size();
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    if (corpus[d].bow.empty()) continue;
    check_words(corpus[d].bow, V_, "llda");
    item_ids_.push_back(corpus[d].item_id);
    docs_.push_back(expand_tokens(corpus[d].bow));
    doc_labels_.push_back(all_labels[d]);
  }
  if (docs_.empty()) throw EmptyCorpusError("llda: corpus has no tokens");

  n_dl_.assign(docs_.size() * L_, 0);
  n_lw_.assign(L_ * V_, 0);
  n_l_.assign(L_, 0);
  z_.resize(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const auto& allowed = doc_labels_[d];
    z_[d].resize(docs_[d].size());
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t l = allowed[rng_.uniform_int(allowed.size())];
      z_[d][i] = l;
      ++n_dl_[d * L_ + l];
      ++n_lw_[l * V_ + docs_[d][i]];
      ++n_l_[l];
    }
  }
}

void LldaSampler::sweep() {
  const double alpha = params_.alpha;
  const double beta = params_.beta;
  const double vbeta = static_cast<double>(V_) * beta;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const auto& allowed = doc_labels_[d];
    weights_.resize(allowed.size());
    std::uint32_t* ndl = &n_dl_[d * L_];
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t w = docs_[d][i];
      std::uint32_t l = z_[d][i];
      --ndl[l];
      --n_lw_[l * V_ + w];
      --n_l_[l];
      for (std::size_t j = 0; j < allowed.size(); ++j) {
        const std::uint32_t c = allowed[j];
        weights_[j] = (ndl[c] + alpha) * (n_lw_[c * V_ + w] + beta) / (n_l_[c] + vbeta);
      }
      l = allowed[rng_.categorical(weights_)];
      z_[d][i] = l;
      ++ndl[l];
      ++n_lw_[l * V_ + w];
      ++n_l_[l];
    }
  }
}

bool LldaSampler::counts_consistent() const {
  std::vector<std::uint32_t> dl(n_dl_.size(), 0);
  std::vector<std::uint32_t> lw(n_lw_.size(), 0);
  std::vector<std::uint32_t> l_tot(L_, 0);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t l = z_[d][i];
      ++dl[d * L_ + l];
      ++lw[l * V_ + docs_[d][i]];
      ++l_tot[l];
    }
  }
  return dl == n_dl_ && lw == n_lw_ && l_tot == n_l_;
}

bool LldaSampler::respects_labels() const {
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const auto& allowed = doc_labels_[d];
    for (std::size_t l = 0; l < L_; ++l) {
      const bool ok = std::find(allowed.begin(), allowed.end(), l) != allowed.end();
      if (!ok && n_dl_[d * L_ + l] != 0) return false;
    }
  }
  return true;
}

LldaModel LldaSampler::model(std::string vocab_hash) const {
  LldaModel m;
  m.params = params_;
  m.vocab_hash = std::move(vocab_hash);
  m.labels = labels_;
  m.phi = Matrix(L_, V_);
  const double vbeta = static_cast<double>(V_) * params_.beta;
  for (std::size_t l = 0; l < L_; ++l) {
    const double denom = n_l_[l] + vbeta;
    for (std::size_t w = 0; w < V_; ++w) m.phi(l, w) = (n_lw_[l * V_ + w] + params_.beta) / denom;
  }
  m.item_ids = item_ids_;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const auto& allowed = doc_labels_[d];
    TopicDistribution theta(L_, 0.0);
    const double denom =
        static_cast<double>(docs_[d].size()) + static_cast<double>(allowed.size()) * params_.alpha;
    for (std::uint32_t l : allowed) theta[l] = (n_dl_[d * L_ + l] + params_.alpha) / denom;
    m.theta.push_back(std::move(theta));
  }
  return m;
}

LldaModel train_llda(const std::vector<LabeledDocument>& corpus, const Vocabulary& vocab,
                     const LldaParams& params) {
  LldaSampler sampler(corpus, vocab.size(), params);
  for (std::uint32_t s = 0; s < params.iterations; ++s) sampler.sweep();
  return sampler.model(vocab.hash());
}

TopicDistribution infer_llda(const LldaModel& model, const BowVector& bow) {
  return fold_in(model.phi, bow, model.params.alpha,
                 {model.params.fold_in_burn, model.params.fold_in_samples},
                 fold_in_seed(model.params.seed, bow));
}

// Author-topic.

void AtParams::validate() const {
  if (num_topics < 1) throw std::invalid_argument("at: num_topics must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("at: alpha must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("at: beta must be > 0");
  if (train_sweeps < 1) throw std::invalid_argument("at: train_sweeps must be >= 1");
}

AtSampler::AtSampler(const std::vector<LabeledDocument>& corpus, std::size_t vocab_size,
                     const AtParams& params)
    : params_(params), K_(params.num_topics), V_(vocab_size), rng_(params.seed) {
  params_.validate();
  if (corpus.empty() || V_ == 0) throw EmptyCorpusError();
  std::vector<std::vector<std::uint32_t>> all_authors;
  index_labels(corpus, false, authors_, all_authors);
  A_ = authors_.size();
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    if (corpus[d].bow.empty()) continue;
    check_words(corpus[d].bow, V_, "at");
    item_ids_.push_back(corpus[d].item_id);
    docs_.push_back(expand_tokens(corpus[d].bow));
    doc_authors_.push_back(all_authors[d]);
  }
  if (docs_.empty()) throw EmptyCorpusError("at: corpus has no tokens");

  n_ak_.assign(A_ * K_, 0);
  n_a_.assign(A_, 0);
  n_kw_.assign(K_ * V_, 0);
  n_k_.assign(K_, 0);
  n_dk_.assign(docs_.size() * K_, 0);
  z_.resize(docs_.size());
  x_.resize(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const auto& authors = doc_authors_[d];
    z_[d].resize(docs_[d].size());
    x_[d].resize(docs_[d].size());
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t a = authors[rng_.uniform_int(authors.size())];
      const auto k = static_cast<std::uint32_t>(rng_.uniform_int(K_));
      x_[d][i] = a;
      z_[d][i] = k;
      ++n_ak_[a * K_ + k];
      ++n_a_[a];
      ++n_kw_[k * V_ + docs_[d][i]];
      ++n_k_[k];
      ++n_dk_[d * K_ + k];
    }
  }
}

void AtSampler::sweep() {
  const double alpha = params_.alpha;
  const double beta = params_.beta;
  const double kalpha = static_cast<double>(K_) * alpha;
  const double vbeta = static_cast<double>(V_) * beta;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const auto& authors = doc_authors_[d];
    weights_.resize(authors.size() * K_);
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t w = docs_[d][i];
      std::uint32_t a = x_[d][i];
      std::uint32_t k = z_[d][i];
      --n_ak_[a * K_ + k];
      --n_a_[a];
      --n_kw_[k * V_ + w];
      --n_k_[k];
      --n_dk_[d * K_ + k];
      for (std::size_t j = 0; j < authors.size(); ++j) {
        const std::uint32_t c = authors[j];
        const double author_norm = n_a_[c] + kalpha;
        for (std::size_t t = 0; t < K_; ++t) {
          weights_[j * K_ + t] = (n_ak_[c * K_ + t] + alpha) / author_norm *
                                 (n_kw_[t * V_ + w] + beta) / (n_k_[t] + vbeta);
        }
      }
      const std::size_t pick = rng_.categorical(weights_);
      a = authors[pick / K_];
      k = static_cast<std::uint32_t>(pick % K_);
      x_[d][i] = a;
      z_[d][i] = k;
      ++n_ak_[a * K_ + k];
      ++n_a_[a];
      ++n_kw_[k * V_ + w];
      ++n_k_[k];
      ++n_dk_[d * K_ + k];
    }
  }
}

bool AtSampler::counts_consistent() const {
  std::vector<std::uint32_t> ak(n_ak_.size(), 0);
  std::vector<std::uint32_t> a_tot(A_, 0);
  std::vector<std::uint32_t> kw(n_kw_.size(), 0);
  std::vector<std::uint32_t> k_tot(K_, 0);
  std::vector<std::uint32_t> dk(n_dk_.size(), 0);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const auto& authors = doc_authors_[d];
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t a = x_[d][i];
      const std::uint32_t k = z_[d][i];
      if (std::find(authors.begin(), authors.end(), a) == authors.end()) return false;
      ++ak[a * K_ + k];
      ++a_tot[a];
      ++kw[k * V_ + docs_[d][i]];
      ++k_tot[k];
      ++dk[d * K_ + k];
    }
  }
  return ak == n_ak_ && a_tot == n_a_ && kw == n_kw_ && k_tot == n_k_ && dk == n_dk_;
}

AtModel AtSampler::model(std::string vocab_hash) const {
  AtModel m;
  m.params = params_;
  m.vocab_hash = std::move(vocab_hash);
  m.authors = authors_;
  const double kalpha = static_cast<double>(K_) * params_.alpha;
  const double vbeta = static_cast<double>(V_) * params_.beta;
  m.author_topic = Matrix(A_, K_);
  for (std::size_t a = 0; a < A_; ++a) {
    const double denom = n_a_[a] + kalpha;
    for (std::size_t k = 0; k < K_; ++k) {
      m.author_topic(a, k) = (n_ak_[a * K_ + k] + params_.alpha) / denom;
    }
  }
  m.phi = Matrix(K_, V_);
  for (std::size_t k = 0; k < K_; ++k) {
    const double denom = n_k_[k] + vbeta;
    for (std::size_t w = 0; w < V_; ++w) m.phi(k, w) = (n_kw_[k * V_ + w] + params_.beta) / denom;
  }
  m.item_ids = item_ids_;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    TopicDistribution theta(K_);
    const double denom = static_cast<double>(docs_[d].size()) + kalpha;
    for (std::size_t k = 0; k < K_; ++k) theta[k] = (n_dk_[d * K_ + k] + params_.alpha) / denom;
    m.theta.push_back(std::move(theta));
  }
  return m;
}

AtModel train_at(const std::vector<LabeledDocument>& corpus, const Vocabulary& vocab,
                 const AtParams& params) {
  AtSampler sampler(corpus, vocab.size(), params);
  for (std::uint32_t s = 0; s < params.train_sweeps; ++s) sampler.sweep();
  return sampler.model(vocab.hash());
}

TopicDistribution infer_at(const AtModel& model, const BowVector& bow) {
  return fold_in(model.phi, bow, model.params.alpha,
                 {model.params.fold_in_burn, model.params.fold_in_samples},
                 fold_in_seed(model.params.seed, bow));
}

// Persistence.

json to_json(const LldaModel& model) {
  const LldaParams& p = model.params;
  json params = {{"alpha", p.alpha},
                 {"beta", p.beta},
                 {"iterations", p.iterations},
                 {"fold_in_burn", p.fold_in_burn},
                 {"fold_in_samples", p.fold_in_samples},
                 {"background_label", p.background_label},
                 {"seed", p.seed}};
  return {{"params", std::move(params)},  {"vocab_hash", model.vocab_hash},
          {"labels", model.labels},       {"phi", model.phi.to_rows()},
          {"item_ids", model.item_ids},   {"theta", model.theta}};
}

LldaModel llda_from_json(const json& j) {
  LldaModel m;
  const json& p = j.at("params");
  m.params.alpha = p.at("alpha").get<double>();
  m.params.beta = p.at("beta").get<double>();
  m.params.iterations = p.at("iterations").get<std::uint32_t>();
  m.params.fold_in_burn = p.at("fold_in_burn").get<std::uint32_t>();
  m.params.fold_in_samples = p.at("fold_in_samples").get<std::uint32_t>();
  m.params.background_label = p.at("background_label").get<bool>();
  m.params.seed = p.at("seed").get<std::uint64_t>();
  m.vocab_hash = j.at("vocab_hash").get<std::string>();
  m.labels = j.at("labels").get<std::vector<std::string>>();
  m.phi = Matrix::from_rows(j.at("phi").get<std::vector<std::vector<double>>>());
  m.item_ids = j.at("item_ids").get<std::vector<std::string>>();
  m.theta = j.at("theta").get<std::vector<TopicDistribution>>();
  return m;
}

json to_json(const AtModel& model) {
  const AtParams& p = model.params;
  json params = {{"num_topics", p.num_topics},
                 {"alpha", p.alpha},
                 {"beta", p.beta},
                 {"train_sweeps", p.train_sweeps},
                 {"fold_in_burn", p.fold_in_burn},
                 {"fold_in_samples", p.fold_in_samples},
                 {"seed", p.seed}};
  return {{"params", std::move(params)},
          {"vocab_hash", model.vocab_hash},
          {"authors", model.authors},
          {"author_topic", model.author_topic.to_rows()},
          {"phi", model.phi.to_rows()},
          {"item_ids", model.item_ids},
          {"theta", model.theta}};
}

AtModel at_from_json(const json& j) {
  AtModel m;
  const json& p = j.at("params");
  m.params.num_topics = p.at("num_topics").get<std::uint32_t>();
  m.params.alpha = p.at("alpha").get<double>();
  m.params.beta = p.at("beta").get<double>();
  m.params.train_sweeps = p.at("train_sweeps").get<std::uint32_t>();
  m.params.fold_in_burn = p.at("fold_in_burn").get<std::uint32_t>();
  m.params.fold_in_samples = p.at("fold_in_samples").get<std::uint32_t>();
  m.params.seed = p.at("seed").get<std::uint64_t>();
  m.vocab_hash = j.at("vocab_hash").get<std::string>();
  m.authors = j.at("authors").get<std::vector<std::string>>();
  m.author_topic = Matrix::from_rows(j.at("author_topic").get<std::vector<std::vector<double>>>());
  m.phi = Matrix::from_rows(j.at("phi").get<std::vector<std::vector<double>>>());
  m.item_ids = j.at("item_ids").get<std::vector<std::string>>();
  m.theta = j.at("theta").get<std::vector<TopicDistribution>>();
  return m;
}

}  // namespace forumtrace
