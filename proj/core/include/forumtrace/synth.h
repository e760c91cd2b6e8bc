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

#ifndef FORUMTRACE_SYNTH_H_
#define FORUMTRACE_SYNTH_H_

#include <cstdint>
#include <vector>

#include "forumtrace/corpus.h"
#include "forumtrace/eval.h"

namespace forumtrace {

// Synthetic course with planted vocabularies, used by the acceptance study.
//
// Every item, lesson and module owns a private set of pseudo-words; a shared
// noise vocabulary is mixed into every document at `noise_fraction`. Item
// documents and posts draw from their own item's words plus the enclosing
// lesson's and module's. Posts also carry a little forum chatter that never
// occurs in the course material.
struct SynthConfig {
  std::uint32_t modules = 3;
  std::uint32_t lessons_per_module = 3;
  std::uint32_t items_per_lesson = 2;
  std::uint32_t posts_per_item = 10;
  std::uint32_t item_vocab = 8;
  std::uint32_t lesson_vocab = 10;
  std::uint32_t module_vocab = 10;
  std::uint32_t noise_vocab = 60;
  std::uint32_t item_length = 150;
  std::uint32_t post_length = 10;
  double noise_fraction = 0.30;
  // Shares of the non-noise tokens; the item share is the remainder.
  double lesson_share = 0.40;
  double module_share = 0.30;
  std::uint32_t off_topic_posts = 5;
  std::uint64_t seed = 13;
};

struct SynthCorpus {
  CourseBranch course;
  std::vector<ForumPost> posts;
  std::vector<GroundTruthLabel> truth;
};

SynthCorpus generate_synthetic(const SynthConfig& config);

}  // namespace forumtrace

#endif  // FORUMTRACE_SYNTH_H_
