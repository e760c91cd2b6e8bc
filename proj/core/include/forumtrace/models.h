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

#ifndef FORUMTRACE_MODELS_H_
#define FORUMTRACE_MODELS_H_

#include <array>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "forumtrace/hdp.h"
#include "forumtrace/lda.h"
#include "forumtrace/sparse_vector.h"
#include "forumtrace/supervised.h"
#include "forumtrace/tfidf.h"

namespace forumtrace {

enum class ModelKind { kTfidf, kLda, kHdp, kAt, kLlda };

inline constexpr std::array<ModelKind, 5> kAllModelKinds = {
    ModelKind::kTfidf, ModelKind::kLda, ModelKind::kHdp, ModelKind::kAt, ModelKind::kLlda};

// "tfidf", "lda", "hdp", "at", "llda".
const char* to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

using AnyModel = std::variant<TfidfModel, LdaModel, HdpModel, AtModel, LldaModel>;

ModelKind kind_of(const AnyModel& model);
const std::string& vocab_hash_of(const AnyModel& model);

// Post-side vector in the model's feature space. Throws UntraceablePostError
// for an empty bag, whatever the model.
SparseVector vectorize(const AnyModel& model, const BowVector& bow);

// Trained vectors of the course items the model was fit on.
std::vector<ItemVector> item_vectors(const AnyModel& model);

// Versioned artifact: {"format_version", "model", "payload"}.
nlohmann::json model_to_json(const AnyModel& model);
AnyModel model_from_json(const nlohmann::json& j);

}  // namespace forumtrace

#endif  // FORUMTRACE_MODELS_H_
