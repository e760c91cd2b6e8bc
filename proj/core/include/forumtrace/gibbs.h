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

#ifndef FORUMTRACE_GIBBS_H_
#define FORUMTRACE_GIBBS_H_

#include <cstdint>
#include <vector>

#include "forumtrace/corpus.h"
#include "forumtrace/matrix.h"
#include "forumtrace/sparse_vector.h"

namespace forumtrace {

// Pieces shared by the three Gibbs-sampled models.

// Expands a bag of words into one word id per token, in index order.
std::vector<std::uint32_t> expand_tokens(const BowVector& bow);

// Inference seed for one document: a function of the model seed and the
// bag's content only, so a post always folds in to the same vector.
std::uint64_t fold_in_seed(std::uint64_t model_seed, const BowVector& bow);

struct FoldInSchedule {
  std::uint32_t burn_in = 50;
  std::uint32_t samples = 10;
};

// Fold-in Gibbs against a clamped topic-word matrix (rows = topics, columns =
// vocabulary). Token assignments are sampled with weight
// (m_k + alpha) * phi[k][w], own assignment excluded; after burn_in sweeps the
// estimate (m_k + alpha) / (n + K alpha) is averaged over `samples` further
// sweeps. Throws UntraceablePostError on an empty bag.
TopicDistribution fold_in(const Matrix& phi, const BowVector& bow, double alpha,
                          const FoldInSchedule& schedule, std::uint64_t seed);

// Rescales to an exact probability vector (sum 1 within rounding).
void normalize_in_place(std::vector<double>& v);

}  // namespace forumtrace

#endif  // FORUMTRACE_GIBBS_H_
