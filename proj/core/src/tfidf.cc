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

#include "forumtrace/tfidf.h"

#include <cmath>

#include "forumtrace/errors.h"

namespace forumtrace {

using nlohmann::json;

namespace {

SparseVector weigh(const std::vector<double>& idf, const BowVector& bow) {
  SparseVector v;
  v.dimension = idf.size();
  if (bow.empty()) return v;
  const double total = static_cast<double>(bow.total());
  for (const BowEntry& e : bow.entries()) {
    if (e.index >= idf.size()) throw std::invalid_argument("tfidf: index outside vocabulary");
    const double w = static_cast<double>(e.count) / total * idf[e.index];
    if (w != 0.0) v.entries.push_back({e.index, w});
  }
  return v;
}

}  // namespace

TfidfModel fit_tfidf(const std::vector<CorpusDocument>& corpus, const Vocabulary& vocab) {
  if (corpus.empty()) throw EmptyCorpusError();
  TfidfModel model;
  model.vocab_hash = vocab.hash();
  model.idf.resize(vocab.size());
  const double n = static_cast<double>(vocab.num_docs());
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    model.idf[i] = std::log2(n / static_cast<double>(vocab.df(i)));
  }
  for (const CorpusDocument& doc : corpus) {
    model.items.push_back({doc.item_id, weigh(model.idf, doc.bow)});
  }
  return model;
}

SparseVector tfidf_vector(const TfidfModel& model, const BowVector& bow) {
  return weigh(model.idf, bow);
}

json to_json(const TfidfModel& model) {
  json items = json::array();
  for (const ItemVector& iv : model.items) {
    json weights = json::array();
    for (const SparseEntry& e : iv.vector.entries) weights.push_back({e.index, e.value});
    items.push_back({{"item_id", iv.item_id}, {"weights", std::move(weights)}});
  }
  return {{"vocab_hash", model.vocab_hash},
          {"idf_base", 2},
          {"idf", model.idf},
          {"items", std::move(items)}};
}

TfidfModel tfidf_from_json(const json& j) {
  TfidfModel model;
  model.vocab_hash = j.at("vocab_hash").get<std::string>();
  model.idf = j.at("idf").get<std::vector<double>>();
  for (const json& item : j.at("items")) {
    ItemVector iv;
    iv.item_id = item.at("item_id").get<std::string>();
    iv.vector.dimension = model.idf.size();
    for (const json& w : item.at("weights")) {
      iv.vector.entries.push_back({w.at(0).get<std::uint32_t>(), w.at(1).get<double>()});
    }
    model.items.push_back(std::move(iv));
  }
  return model;
}

}  // namespace forumtrace
