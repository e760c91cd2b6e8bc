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

#ifndef FORUMTRACE_SPARSE_VECTOR_H_
#define FORUMTRACE_SPARSE_VECTOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace forumtrace {

// A probability vector over a model's topics (or labels).
using TopicDistribution = std::vector<double>;

struct SparseEntry {
  std::uint32_t index;
  double value;

  bool operator==(const SparseEntry&) const = default;
};

// Feature vector of fixed dimension with explicit nonzero entries, sorted by
// index. Every model's item and post vectors are carried in this form.
struct SparseVector {
  std::size_t dimension = 0;
  std::vector<SparseEntry> entries;

  bool is_zero() const;
  double norm() const;

  // Keeps exact zeros out of the entry list.
  static SparseVector from_dense(std::span<const double> values);
  std::vector<double> to_dense() const;

  bool operator==(const SparseVector&) const = default;
};

// A course item's vector in some model's feature space.
struct ItemVector {
  std::string item_id;
  SparseVector vector;
};

// 1 - a.b / (|a| |b|). Throws std::invalid_argument on a dimension mismatch
// and ZeroVectorError when either side is all zeros. The cosine is clamped to
// [-1, 1], so nonnegative inputs always give a value in [0, 1].
double cosine_distance(const SparseVector& a, const SparseVector& b);
double cosine_distance(std::span<const double> a, std::span<const double> b);

}  // namespace forumtrace

#endif  // FORUMTRACE_SPARSE_VECTOR_H_
