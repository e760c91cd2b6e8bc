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

#include "forumtrace/trace.h"

#include <algorithm>
#include <utility>

#include "forumtrace/errors.h"
#include "forumtrace/random.h"

namespace forumtrace {

using nlohmann::json;

std::vector<std::string> RankedTrace::flags() const {
  std::vector<std::string> out;
  if (untraceable) out.emplace_back("untraceable");
  if (zero_vector) out.emplace_back("zero_vector");
  return out;
}

RankedTrace rank_items(std::string post_id, std::string model_name,
                       const SparseVector& post_vector, std::span<const ItemVector> items) {
  RankedTrace trace;
  trace.post_id = std::move(post_id);
  trace.model = std::move(model_name);
  trace.ranking.reserve(items.size());
  for (const ItemVector& item : items) {
    double d = 1.0;
    try {
      d = cosine_distance(post_vector, item.vector);
    } catch (const ZeroVectorError&) {
      trace.zero_vector = true;
    }
    trace.ranking.push_back({item.item_id, d});
  }
  std::sort(trace.ranking.begin(), trace.ranking.end(),
            [](const RankedItem& a, const RankedItem& b) {
              if (*a.distance != *b.distance) return *a.distance < *b.distance;
              return a.item_id < b.item_id;
            });
  return trace;
}

RankedTrace trace_post(const AnyModel& model, std::string post_id, const BowVector& post_bow,
                       std::span<const ItemVector> items) {
  SparseVector v;
  try {
    v = vectorize(model, post_bow);
  } catch (const UntraceablePostError&) {
    RankedTrace trace;
    trace.post_id = std::move(post_id);
    trace.model = to_string(kind_of(model));
    trace.untraceable = true;
    return trace;
  }
  return rank_items(std::move(post_id), to_string(kind_of(model)), v, items);
}

RankedTrace random_trace(std::string post_id, std::span<const std::string> candidates,
                         std::uint64_t seed) {
  std::vector<std::string> order(candidates.begin(), candidates.end());
  Rng rng(seed);
  // Fisher-Yates from the back.
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_int(i);
    std::swap(order[i - 1], order[j]);
  }
  RankedTrace trace;
  trace.post_id = std::move(post_id);
  trace.model = kRandomModelName;
  for (std::string& id : order) trace.ranking.push_back({std::move(id), std::nullopt});
  return trace;
}

json to_json(const RankedTrace& trace) {
  json ranking = json::array();
  for (const RankedItem& item : trace.ranking) {
    json entry = {{"item_id", item.item_id}};
    entry["distance"] = item.distance ? json(*item.distance) : json(nullptr);
    ranking.push_back(std::move(entry));
  }
  return {{"post_id", trace.post_id},
          {"model", trace.model},
          {"ranking", std::move(ranking)},
          {"flags", trace.flags()}};
}

RankedTrace trace_from_json(const json& j) {
  RankedTrace trace;
  trace.post_id = j.at("post_id").get<std::string>();
  trace.model = j.at("model").get<std::string>();
  for (const json& entry : j.at("ranking")) {
    RankedItem item{entry.at("item_id").get<std::string>(), std::nullopt};
    if (entry.contains("distance") && !entry.at("distance").is_null()) {
      item.distance = entry.at("distance").get<double>();
    }
    trace.ranking.push_back(std::move(item));
  }
  for (const json& flag : j.at("flags")) {
    const std::string f = flag.get<std::string>();
    if (f == "untraceable") trace.untraceable = true;
    if (f == "zero_vector") trace.zero_vector = true;
  }
  return trace;
}

}  // namespace forumtrace
