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

#ifndef FORUMTRACE_TRACE_H_
#define FORUMTRACE_TRACE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forumtrace/corpus.h"
#include "forumtrace/models.h"
#include "forumtrace/sparse_vector.h"

namespace forumtrace {

struct RankedItem {
  std::string item_id;
  std::optional<double> distance;  // absent for the random baseline

  bool operator==(const RankedItem&) const = default;
};

// One post's candidate items, closest first.
struct RankedTrace {
  std::string post_id;
  std::string model;
  std::vector<RankedItem> ranking;
  bool untraceable = false;  // no in-vocabulary words; ranking is empty
  bool zero_vector = false;  // post vector was zero; every distance is 1

  std::vector<std::string> flags() const;
  bool operator==(const RankedTrace&) const = default;
};

inline constexpr const char* kRandomModelName = "random";

// Sorts items by cosine distance to post_vector, ties by ascending item id.
// A zero vector on either side scores distance 1 and sets zero_vector.
RankedTrace rank_items(std::string post_id, std::string model_name,
                       const SparseVector& post_vector, std::span<const ItemVector> items);

// Vectorizes the post with the model and ranks the items. An untraceable post
// yields a flagged trace with an empty ranking.
RankedTrace trace_post(const AnyModel& model, std::string post_id, const BowVector& post_bow,
                       std::span<const ItemVector> items);

// Uniformly random permutation of the candidates; distances omitted.
RankedTrace random_trace(std::string post_id, std::span<const std::string> candidates,
                         std::uint64_t seed);

// Rankings JSONL record: {post_id, model, ranking: [{item_id, distance}], flags}.
nlohmann::json to_json(const RankedTrace& trace);
RankedTrace trace_from_json(const nlohmann::json& j);

}  // namespace forumtrace

#endif  // FORUMTRACE_TRACE_H_
