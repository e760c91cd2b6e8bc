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

#include "forumtrace/hdp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/digamma.hpp>

#include "forumtrace/errors.h"
#include "forumtrace/gibbs.h"
#include "forumtrace/random.h"

namespace forumtrace {

using nlohmann::json;

namespace {

double digamma(double x) { return boost::math::digamma(x); }

// E[log pi_t] under stick-breaking with Beta(sticks[0][t], sticks[1][t])
// proportions; returns one more entry than there are sticks.
std::vector<double> expect_log_sticks(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + 1;
  std::vector<double> out(n, 0.0);
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dig_sum = digamma(a[i] + b[i]);
    out[i] = digamma(a[i]) - dig_sum + cum;
    cum += digamma(b[i]) - dig_sum;
  }
  out[n - 1] = cum;
  return out;
}

// Row-wise log-normalisation in place; the log values are written to `logs`.
void log_normalize_rows(Matrix& m, Matrix& logs) {
  logs = Matrix(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    const double mx = *std::max_element(row.begin(), row.end());
    double s = 0.0;
    for (double x : row) s += std::exp(x - mx);
    const double log_norm = mx + std::log(s);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      logs(r, c) = row[c] - log_norm;
      row[c] = std::exp(logs(r, c));
    }
  }
}

struct DocStep {
  double bound = 0.0;
  Matrix var_phi;  // K x T: document topic -> corpus topic
  Matrix phi;      // N x K: word -> document topic
};

// Variational step for one document with the corpus-level quantities fixed.
DocStep doc_e_step(const Matrix& elog_beta, std::span<const double> elog_sticks_1st,
                   const BowVector& bow, const HdpParams& p) {
  const std::size_t T = elog_beta.rows();
  const std::size_t K = p.doc_truncation;
  const std::size_t N = bow.size();
  const double alpha = p.alpha;

  // eb(t, n) = E[log beta_t,w_n]; ebc additionally weighted by counts.
  Matrix eb(T, N);
  Matrix ebc(T, N);
  std::vector<double> counts(N);
  for (std::size_t n = 0; n < N; ++n) counts[n] = bow.entries()[n].count;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t n = 0; n < N; ++n) {
      eb(t, n) = elog_beta(t, bow.entries()[n].index);
      ebc(t, n) = eb(t, n) * counts[n];
    }
  }

  Matrix phi(N, K, 1.0 / static_cast<double>(K));
  Matrix log_phi;
  Matrix var_phi(K, T);
  Matrix log_var_phi;
  std::vector<double> v0(K - 1, 1.0);
  std::vector<double> v1(K - 1, alpha);
  std::vector<double> elog_sticks_2nd(K, 0.0);

  double likelihood = 0.0;
  double old_likelihood = -1e200;
  double converge = 1.0;
  for (std::uint32_t iter = 0;
       iter < p.max_doc_iterations && (converge < 0.0 || converge > p.var_converge); ++iter) {
    // var_phi = phi^T (eb * counts)^T [+ E log sticks, corpus level]
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t t = 0; t < T; ++t) {
        double s = 0.0;
        for (std::size_t n = 0; n < N; ++n) s += phi(n, k) * ebc(t, n);
        var_phi(k, t) = iter >= 3 ? s + elog_sticks_1st[t] : s;
      }
    }
    log_normalize_rows(var_phi, log_var_phi);

    // phi = (var_phi eb)^T [+ E log sticks, document level]
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t k = 0; k < K; ++k) {
        double s = 0.0;
        for (std::size_t t = 0; t < T; ++t) s += var_phi(k, t) * eb(t, n);
        phi(n, k) = iter >= 3 ? s + elog_sticks_2nd[k] : s;
      }
    }
    log_normalize_rows(phi, log_phi);

    // Document sticks.
    std::vector<double> mass(K, 0.0);
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t k = 0; k < K; ++k) mass[k] += phi(n, k) * counts[n];
    }
    double tail = 0.0;
    for (std::size_t k = K; k-- > 1;) {
      tail += mass[k];
      v0[k - 1] = 1.0 + mass[k - 1];
      v1[k - 1] = alpha + tail;
    }
    elog_sticks_2nd = expect_log_sticks(v0, v1);

    // Evidence lower bound for this document.
    likelihood = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t t = 0; t < T; ++t) {
        likelihood += (elog_sticks_1st[t] - log_var_phi(k, t)) * var_phi(k, t);
      }
    }
    likelihood += static_cast<double>(K - 1) * std::log(alpha);
    for (std::size_t k = 0; k + 1 < K; ++k) {
      const double dig_sum = digamma(v0[k] + v1[k]);
      likelihood += (1.0 - v0[k]) * (digamma(v0[k]) - dig_sum);
      likelihood += (alpha - v1[k]) * (digamma(v1[k]) - dig_sum);
      likelihood -= std::lgamma(v0[k] + v1[k]) - std::lgamma(v0[k]) - std::lgamma(v1[k]);
    }
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t k = 0; k < K; ++k) {
        likelihood += (elog_sticks_2nd[k] - log_phi(n, k)) * phi(n, k);
      }
    }
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t n = 0; n < N; ++n) {
        double s = 0.0;
        for (std::size_t t = 0; t < T; ++t) s += var_phi(k, t) * ebc(t, n);
        likelihood += phi(n, k) * s;
      }
    }

    converge = (likelihood - old_likelihood) / std::abs(old_likelihood);
    old_likelihood = likelihood;
  }
  return {likelihood, std::move(var_phi), std::move(phi)};
}

TopicDistribution project(const DocStep& step, const BowVector& bow) {
  const std::size_t K = step.var_phi.rows();
  const std::size_t T = step.var_phi.cols();
  std::vector<double> mass(K, 0.0);
  for (std::size_t n = 0; n < bow.size(); ++n) {
    for (std::size_t k = 0; k < K; ++k) mass[k] += step.phi(n, k) * bow.entries()[n].count;
  }
  TopicDistribution theta(T, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t t = 0; t < T; ++t) theta[t] += mass[k] * step.var_phi(k, t);
  }
  normalize_in_place(theta);
  return theta;
}

Matrix compute_elog_beta(const Matrix& lambda, std::span<const double> lambda_sum, double eta) {
  const std::size_t V = lambda.cols();
  Matrix out(lambda.rows(), V);
  for (std::size_t t = 0; t < lambda.rows(); ++t) {
    const double dig_row = digamma(static_cast<double>(V) * eta + lambda_sum[t]);
    for (std::size_t w = 0; w < V; ++w) out(t, w) = digamma(eta + lambda(t, w)) - dig_row;
  }
  return out;
}

std::vector<double> stick_row(const Matrix& sticks, std::size_t r) {
  return {sticks.row(r).begin(), sticks.row(r).end()};
}

}  // namespace

void HdpParams::validate() const {
  if (doc_truncation < 1) throw std::invalid_argument("hdp: doc truncation must be >= 1");
  if (doc_truncation > corpus_truncation) {
    throw std::invalid_argument("hdp: doc truncation exceeds corpus truncation");
  }
  if (!(kappa > 0.5 && kappa <= 1.0)) throw std::invalid_argument("hdp: kappa must be in (0.5, 1]");
  if (!(tau >= 0.0)) throw std::invalid_argument("hdp: tau must be >= 0");
  if (!(alpha > 0.0 && gamma > 0.0 && eta > 0.0)) {
    throw std::invalid_argument("hdp: concentrations must be > 0");
  }
  if (passes < 1) throw std::invalid_argument("hdp: passes must be >= 1");
}

double hdp_learning_rate(const HdpParams& params, std::uint64_t t) {
  return std::pow(params.tau + static_cast<double>(t), -params.kappa);
}

std::vector<std::size_t> HdpModel::active_topics() const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < stick_weights.size(); ++t) {
    if (stick_weights[t] > kActiveTopicThreshold) out.push_back(t);
  }
  return out;
}

void HdpModel::refresh() {
  const std::size_t T = lambda.rows();
  const std::size_t V = lambda.cols();
  phi = Matrix(T, V);
  for (std::size_t t = 0; t < T; ++t) {
    const double denom = static_cast<double>(V) * params.eta + lambda_sum[t];
    for (std::size_t w = 0; w < V; ++w) phi(t, w) = (lambda(t, w) + params.eta) / denom;
  }
  elog_beta = compute_elog_beta(lambda, lambda_sum, params.eta);
  elog_sticks = expect_log_sticks(var_sticks.row(0), var_sticks.row(1));

  stick_weights.assign(T, 0.0);
  double left = 1.0;
  for (std::size_t t = 0; t + 1 < T; ++t) {
    const double v = var_sticks(0, t) / (var_sticks(0, t) + var_sticks(1, t));
    stick_weights[t] = v * left;
    left -= stick_weights[t];
  }
  stick_weights[T - 1] = left;
}

HdpTrainer::HdpTrainer(const std::vector<CorpusDocument>& corpus, std::size_t vocab_size,
                       const HdpParams& params)
    : params_(params), V_(vocab_size) {
  params_.validate();
  for (const CorpusDocument& doc : corpus) {
    if (doc.bow.empty()) continue;
    item_ids_.push_back(doc.item_id);
    docs_.push_back(doc.bow);
  }
  if (docs_.empty() || V_ == 0) throw EmptyCorpusError("hdp: corpus has no tokens");
  const std::size_t T = params_.corpus_truncation;
  Rng rng(params_.seed);
  Matrix lambda(T, V_);
  const double scale = static_cast<double>(docs_.size()) * 100.0 /
                       (static_cast<double>(T) * static_cast<double>(V_));
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t w = 0; w < V_; ++w) lambda(t, w) = rng.gamma(1.0) * scale - params_.eta;
  }
  init(std::move(lambda));
}

HdpTrainer::HdpTrainer(const std::vector<CorpusDocument>& corpus, std::size_t vocab_size,
                       const HdpParams& params, Matrix initial_lambda)
    : params_(params), V_(vocab_size) {
  params_.validate();
  for (const CorpusDocument& doc : corpus) {
    if (doc.bow.empty()) continue;
    item_ids_.push_back(doc.item_id);
    docs_.push_back(doc.bow);
  }
  if (docs_.empty() || V_ == 0) throw EmptyCorpusError("hdp: corpus has no tokens");
  if (initial_lambda.rows() != params_.corpus_truncation || initial_lambda.cols() != V_) {
    throw std::invalid_argument("hdp: initial lambda has the wrong shape");
  }
  init(std::move(initial_lambda));
}

void HdpTrainer::init(Matrix initial_lambda) {
  for (const BowVector& bow : docs_) {
    for (const BowEntry& e : bow.entries()) {
      if (e.index >= V_) throw std::invalid_argument("hdp: word outside vocabulary");
    }
  }
  const std::size_t T = params_.corpus_truncation;
  lambda_ = std::move(initial_lambda);
  lambda_sum_.assign(T, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    for (double x : lambda_.row(t)) lambda_sum_[t] += x;
  }
  var_sticks_ = Matrix(2, T - 1);
  for (std::size_t t = 0; t + 1 < T; ++t) {
    var_sticks_(0, t) = 1.0;
    var_sticks_(1, t) = static_cast<double>(T - 1 - t);
  }
  varphi_ss_.assign(T, 0.0);
}

void HdpTrainer::update_batch(std::span<const std::size_t> docs) {
  if (docs.empty()) return;
  const std::size_t T = params_.corpus_truncation;
  const Matrix elog_beta = compute_elog_beta(lambda_, lambda_sum_, params_.eta);
  const std::vector<double> es1 = expect_log_sticks(var_sticks_.row(0), var_sticks_.row(1));

  std::vector<double> sticks_ss(T, 0.0);
  Matrix beta_ss(T, V_);
  for (std::size_t d : docs) {
    const BowVector& bow = docs_.at(d);
    const DocStep step = doc_e_step(elog_beta, es1, bow, params_);
    const std::size_t K = step.var_phi.rows();
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t t = 0; t < T; ++t) sticks_ss[t] += step.var_phi(k, t);
    }
    for (std::size_t n = 0; n < bow.size(); ++n) {
      const BowEntry& e = bow.entries()[n];
      for (std::size_t t = 0; t < T; ++t) {
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k) s += step.var_phi(k, t) * step.phi(n, k);
        beta_ss(t, e.index) += s * e.count;
      }
    }
  }

  ++updates_;
  const double rho = hdp_learning_rate(params_, updates_);
  const double scale = static_cast<double>(docs_.size()) / static_cast<double>(docs.size());
  for (std::size_t t = 0; t < T; ++t) {
    double row_ss = 0.0;
    for (std::size_t w = 0; w < V_; ++w) {
      lambda_(t, w) = (1.0 - rho) * lambda_(t, w) + rho * scale * beta_ss(t, w);
      row_ss += beta_ss(t, w);
    }
    lambda_sum_[t] = (1.0 - rho) * lambda_sum_[t] + rho * scale * row_ss;
    varphi_ss_[t] = (1.0 - rho) * varphi_ss_[t] + rho * scale * sticks_ss[t];
  }

  // Keep topics ordered by decreasing mass.
  std::vector<std::size_t> order(T);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lambda_sum_[a] > lambda_sum_[b]; });
  Matrix sorted(T, V_);
  std::vector<double> sorted_sum(T);
  std::vector<double> sorted_ss(T);
  for (std::size_t i = 0; i < T; ++i) {
    std::copy(lambda_.row(order[i]).begin(), lambda_.row(order[i]).end(), sorted.row(i).begin());
    sorted_sum[i] = lambda_sum_[order[i]];
    sorted_ss[i] = varphi_ss_[order[i]];
  }
  lambda_ = std::move(sorted);
  lambda_sum_ = std::move(sorted_sum);
  varphi_ss_ = std::move(sorted_ss);

  double tail = 0.0;
  for (std::size_t t = T; t-- > 1;) {
    tail += varphi_ss_[t];
    var_sticks_(0, t - 1) = varphi_ss_[t - 1] + 1.0;
    var_sticks_(1, t - 1) = tail + params_.gamma;
  }
}

void HdpTrainer::run_pass() {
  const std::size_t D = docs_.size();
  const std::size_t batch =
      params_.batch_size == 0 ? std::min<std::size_t>(256, D) : params_.batch_size;
  std::vector<std::size_t> ids;
  for (std::size_t start = 0; start < D; start += batch) {
    ids.clear();
    for (std::size_t d = start; d < std::min(D, start + batch); ++d) ids.push_back(d);
    update_batch(ids);
  }
}

double HdpTrainer::objective() const {
  const Matrix elog_beta = compute_elog_beta(lambda_, lambda_sum_, params_.eta);
  const std::vector<double> es1 = expect_log_sticks(var_sticks_.row(0), var_sticks_.row(1));
  double total = 0.0;
  for (const BowVector& bow : docs_) total += doc_e_step(elog_beta, es1, bow, params_).bound;
  return total;
}

HdpModel HdpTrainer::snapshot() const {
  HdpModel m;
  m.params = params_;
  m.lambda = lambda_;
  m.lambda_sum = lambda_sum_;
  m.var_sticks = var_sticks_;
  m.updates = updates_;
  m.refresh();
  return m;
}

HdpModel HdpTrainer::model(std::string vocab_hash) const {
  HdpModel m = snapshot();
  m.vocab_hash = std::move(vocab_hash);
  m.item_ids = item_ids_;
  for (const BowVector& bow : docs_) m.theta.push_back(fit_hdp_document(m, bow).theta);
  return m;
}

HdpModel train_hdp(const std::vector<CorpusDocument>& corpus, const Vocabulary& vocab,
                   const HdpParams& params) {
  if (corpus.empty()) throw EmptyCorpusError();
  HdpTrainer trainer(corpus, vocab.size(), params);
  for (std::uint32_t pass = 0; pass < params.passes; ++pass) trainer.run_pass();
  return trainer.model(vocab.hash());
}

HdpDocumentFit fit_hdp_document(const HdpModel& model, const BowVector& bow) {
  if (bow.empty()) throw UntraceablePostError();
  for (const BowEntry& e : bow.entries()) {
    if (e.index >= model.vocab_size()) throw std::invalid_argument("hdp: word outside vocabulary");
  }
  const DocStep step = doc_e_step(model.elog_beta, model.elog_sticks, bow, model.params);
  return {step.bound, project(step, bow)};
}

TopicDistribution infer_hdp(const HdpModel& model, const BowVector& bow) {
  return fit_hdp_document(model, bow).theta;
}

json to_json(const HdpModel& model) {
  const HdpParams& p = model.params;
  json params = {{"kappa", p.kappa},
                 {"tau", p.tau},
                 {"doc_truncation", p.doc_truncation},
                 {"corpus_truncation", p.corpus_truncation},
                 {"alpha", p.alpha},
                 {"gamma", p.gamma},
                 {"eta", p.eta},
                 {"batch_size", p.batch_size},
                 {"passes", p.passes},
                 {"var_converge", p.var_converge},
                 {"max_doc_iterations", p.max_doc_iterations},
                 {"seed", p.seed}};
  return {{"params", std::move(params)},
          {"vocab_hash", model.vocab_hash},
          {"lambda", model.lambda.to_rows()},
          {"lambda_sum", model.lambda_sum},
          {"var_sticks", model.var_sticks.to_rows()},
          {"stick_weights", model.stick_weights},
          {"updates", model.updates},
          {"item_ids", model.item_ids},
          {"theta", model.theta}};
}

HdpModel hdp_from_json(const json& j) {
  HdpModel m;
  const json& p = j.at("params");
  m.params.kappa = p.at("kappa").get<double>();
  m.params.tau = p.at("tau").get<double>();
  m.params.doc_truncation = p.at("doc_truncation").get<std::uint32_t>();
  m.params.corpus_truncation = p.at("corpus_truncation").get<std::uint32_t>();
  m.params.alpha = p.at("alpha").get<double>();
  m.params.gamma = p.at("gamma").get<double>();
  m.params.eta = p.at("eta").get<double>();
  m.params.batch_size = p.at("batch_size").get<std::uint32_t>();
  m.params.passes = p.at("passes").get<std::uint32_t>();
  m.params.var_converge = p.at("var_converge").get<double>();
  m.params.max_doc_iterations = p.at("max_doc_iterations").get<std::uint32_t>();
  m.params.seed = p.at("seed").get<std::uint64_t>();
  m.vocab_hash = j.at("vocab_hash").get<std::string>();
  m.lambda = Matrix::from_rows(j.at("lambda").get<std::vector<std::vector<double>>>());
  m.lambda_sum = j.at("lambda_sum").get<std::vector<double>>();
  const auto sticks = j.at("var_sticks").get<std::vector<std::vector<double>>>();
  m.var_sticks = Matrix(2, m.lambda.rows() - 1);
  for (std::size_t r = 0; r < 2 && r < sticks.size(); ++r) {
    for (std::size_t c = 0; c < sticks[r].size() && c < m.var_sticks.cols(); ++c) {
      m.var_sticks(r, c) = sticks[r][c];
    }
  }
  m.updates = j.at("updates").get<std::uint64_t>();
  m.item_ids = j.at("item_ids").get<std::vector<std::string>>();
  m.theta = j.at("theta").get<std::vector<TopicDistribution>>();
  m.refresh();
  return m;
}

}  // namespace forumtrace
