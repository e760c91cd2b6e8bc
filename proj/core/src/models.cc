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

#include "forumtrace/models.h"

#include <stdexcept>
#include <string>

#include "forumtrace/errors.h"
#include "forumtrace/format.h"

namespace forumtrace {

using nlohmann::json;

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<ItemVector> from_thetas(const std::vector<std::string>& ids,
                                    const std::vector<TopicDistribution>& theta) {
  std::vector<ItemVector> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.push_back({ids[i], SparseVector::from_dense(theta.at(i))});
  }
  return out;
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTfidf: return "tfidf";
    case ModelKind::kLda: return "lda";
    case ModelKind::kHdp: return "hdp";
    case ModelKind::kAt: return "at";
    case ModelKind::kLlda: return "llda";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (ModelKind kind : kAllModelKinds) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

ModelKind kind_of(const AnyModel& model) {
  return static_cast<ModelKind>(model.index());
}

const std::string& vocab_hash_of(const AnyModel& model) {
  return std::visit([](const auto& m) -> const std::string& { return m.vocab_hash; }, model);
}

SparseVector vectorize(const AnyModel& model, const BowVector& bow) {
  if (bow.empty()) throw UntraceablePostError();
  return std::visit(
      Overloaded{
          [&](const TfidfModel& m) { return tfidf_vector(m, bow); },
          [&](const LdaModel& m) { return SparseVector::from_dense(infer_lda(m, bow)); },
          [&](const HdpModel& m) { return SparseVector::from_dense(infer_hdp(m, bow)); },
          [&](const AtModel& m) { return SparseVector::from_dense(infer_at(m, bow)); },
          [&](const LldaModel& m) { return SparseVector::from_dense(infer_llda(m, bow)); },
      },
      model);
}

std::vector<ItemVector> item_vectors(const AnyModel& model) {
  return std::visit(Overloaded{
                        [](const TfidfModel& m) { return m.items; },
                        [](const auto& m) { return from_thetas(m.item_ids, m.theta); },
                    },
                    model);
}

json model_to_json(const AnyModel& model) {
  json payload = std::visit([](const auto& m) { return to_json(m); }, model);
  return {{"format_version", format_version()},
          {"model", to_string(kind_of(model))},
          {"payload", std::move(payload)}};
}

AnyModel model_from_json(const json& j) {
  check_format_version(j, "model");
  const std::string name = j.at("model").get<std::string>();
  const auto kind = parse_model_kind(name);
  if (!kind) throw ParseError("unknown model kind '" + name + "'", 0, 0);
  const json& payload = j.at("payload");
  switch (*kind) {
    case ModelKind::kTfidf: return tfidf_from_json(payload);
    case ModelKind::kLda: return lda_from_json(payload);
    case ModelKind::kHdp: return hdp_from_json(payload);
    case ModelKind::kAt: return at_from_json(payload);
    case ModelKind::kLlda: return llda_from_json(payload);
  }
  throw std::logic_error("unreachable");
}

}  // namespace forumtrace
