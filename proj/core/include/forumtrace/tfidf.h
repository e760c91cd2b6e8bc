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

#ifndef FORUMTRACE_TFIDF_H_
#define FORUMTRACE_TFIDF_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forumtrace/corpus.h"
#include "forumtrace/sparse_vector.h"

namespace forumtrace {

// weight(s, d) = count(s, d) / total(d) * log2(num_docs / df(s)).
// No idf smoothing: a stem present in every document weighs exactly zero.
struct TfidfModel {
  std::string vocab_hash;
  std::vector<double> idf;         // per vocabulary index
  std::vector<ItemVector> items;   // zero weights omitted
};

TfidfModel fit_tfidf(const std::vector<CorpusDocument>& corpus, const Vocabulary& vocab);

// Same weighting with the query's own total as denominator; not normalized.
// An empty bow gives the zero vector.
SparseVector tfidf_vector(const TfidfModel& model, const BowVector& bow);

nlohmann::json to_json(const TfidfModel& model);
TfidfModel tfidf_from_json(const nlohmann::json& j);

}  // namespace forumtrace

#endif  // FORUMTRACE_TFIDF_H_
