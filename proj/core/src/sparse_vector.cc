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

#include "forumtrace/sparse_vector.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "forumtrace/errors.h"

namespace forumtrace {

namespace {

double finish(double dot, double norm_a2, double norm_b2) {
  if (norm_a2 == 0.0 || norm_b2 == 0.0) throw ZeroVectorError();
  // sqrt of the product keeps identical vectors at exactly zero distance.
  const double cosine = std::clamp(dot / std::sqrt(norm_a2 * norm_b2), -1.0, 1.0);
  return 1.0 - cosine;
}

}  // namespace

bool SparseVector::is_zero() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SparseEntry& e) { return e.value == 0.0; });
}

double SparseVector::norm() const {
  double s = 0.0;
  for (const SparseEntry& e : entries) s += e.value * e.value;
  return std::sqrt(s);
}

SparseVector SparseVector::from_dense(std::span<const double> values) {
  SparseVector v;
  v.dimension = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) v.entries.push_back({static_cast<std::uint32_t>(i), values[i]});
  }
  return v;
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dimension, 0.0);
  for (const SparseEntry& e : entries) out.at(e.index) = e.value;
  return out;
}

double cosine_distance(const SparseVector& a, const SparseVector& b) {
  if (a.dimension != b.dimension) {
    throw std::invalid_argument("cosine_distance: dimension mismatch");
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const SparseEntry& e : a.entries) na += e.value * e.value;
  for (const SparseEntry& e : b.entries) nb += e.value * e.value;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->index < ib->index) {
      ++ia;
    } else if (ib->index < ia->index) {
      ++ib;
    } else {
      dot += ia->value * ib->value;
      ++ia;
      ++ib;
    }
  }
  return finish(dot, na, nb);
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine_distance: dimension mismatch");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return finish(dot, na, nb);
}

}  // namespace forumtrace
