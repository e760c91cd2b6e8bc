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

#include "forumtrace/synth.h"

#include <set>
#include <stdexcept>
#include <string>

#include "forumtrace/random.h"

namespace forumtrace {

namespace {

// Letters chosen so the stemmer leaves every pseudo-word untouched.
constexpr std::string_view kVowels = "aou";
constexpr std::string_view kInner = "bdfgkprvznmt";
constexpr std::string_view kFinal = "bdfgkpz";

// Forum chatter that never occurs in course material.
const std::vector<std::string>& chatter() {
  static const std::vector<std::string> words = {
      "kindly", "coursera", "peer", "thanks", "upload", "please",
      "grading", "deadline", "certificate", "submission", "forum", "help"};
  return words;
}

class WordMaker {
 public:
  explicit WordMaker(Rng& rng) : rng_(rng) {}

  std::vector<std::string> make(std::size_t n) {
    std::vector<std::string> out;
    while (out.size() < n) {
      std::string w;
      const std::size_t syllables = 2 + rng_.uniform_int(2);
      for (std::size_t s = 0; s < syllables; ++s) {
        w.push_back(kInner[rng_.uniform_int(kInner.size())]);
        w.push_back(kVowels[rng_.uniform_int(kVowels.size())]);
      }
      w.push_back(kFinal[rng_.uniform_int(kFinal.size())]);
      if (used_.insert(w).second) out.push_back(std::move(w));
    }
    return out;
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

struct Pools {
  const std::vector<std::string>* item;
  const std::vector<std::string>* lesson;
  const std::vector<std::string>* module;
  const std::vector<std::string>* noise;
};

std::string pick(Rng& rng, const std::vector<std::string>& pool) {
  return pool[rng.uniform_int(pool.size())];
}

std::string draw_text(Rng& rng, const SynthConfig& c, const Pools& pools, std::size_t length) {
  std::string text;
  for (std::size_t i = 0; i < length; ++i) {
    std::string w;
    if (rng.uniform() < c.noise_fraction) {
      w = pick(rng, *pools.noise);
    } else {
      const double u = rng.uniform();
      if (u < c.module_share) {
        w = pick(rng, *pools.module);
      } else if (u < c.module_share + c.lesson_share) {
        w = pick(rng, *pools.lesson);
      } else {
        w = pick(rng, *pools.item);
      }
    }
    if (!text.empty()) text.push_back(' ');
    text += w;
  }
  return text;
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

}  // namespace

SynthCorpus generate_synthetic(const SynthConfig& c) {
  if (c.modules == 0 || c.lessons_per_module == 0 || c.items_per_lesson == 0) {
    throw std::invalid_argument("synth: empty hierarchy");
  }
  if (c.item_vocab == 0 || c.lesson_vocab == 0 || c.module_vocab == 0 || c.noise_vocab == 0) {
    throw std::invalid_argument("synth: every vocabulary needs at least one word");
  }
  if (!(c.noise_fraction >= 0.0 && c.noise_fraction < 1.0) || c.lesson_share < 0.0 ||
      c.module_share < 0.0 || c.lesson_share + c.module_share > 1.0) {
    throw std::invalid_argument("synth: mixture shares out of range");
  }

  Rng rng(c.seed);
  WordMaker maker(rng);
  const std::vector<std::string> noise = maker.make(c.noise_vocab);

  SynthCorpus out;
  out.course.branch_id = "synthetic";
  std::vector<std::vector<std::string>> module_words;
  std::vector<std::vector<std::vector<std::string>>> lesson_words;
  std::vector<std::vector<std::vector<std::vector<std::string>>>> item_words;

  for (std::uint32_t m = 0; m < c.modules; ++m) {
    module_words.push_back(maker.make(c.module_vocab));
    lesson_words.emplace_back();
    item_words.emplace_back();
    Module module;
    module.id = "m" + std::to_string(m + 1);
    module.name = "Module " + std::to_string(m + 1) + ": " + capitalize(module_words[m][0]);
    for (std::uint32_t l = 0; l < c.lessons_per_module; ++l) {
      lesson_words[m].push_back(maker.make(c.lesson_vocab));
      item_words[m].emplace_back();
      Lesson lesson;
      lesson.id = module.id + "-l" + std::to_string(l + 1);
      lesson.name = "Lesson " + std::to_string(m + 1) + "." + std::to_string(l + 1) + ": " +
                    capitalize(lesson_words[m][l][0]);
      for (std::uint32_t i = 0; i < c.items_per_lesson; ++i) {
        item_words[m][l].push_back(maker.make(c.item_vocab));
        const Pools pools{&item_words[m][l][i], &lesson_words[m][l], &module_words[m], &noise};
        Item item;
        item.id = lesson.id + "-i" + std::to_string(i + 1);
        item.kind = i % 2 == 0 ? ItemKind::kLecture : ItemKind::kReading;
        item.name = std::string(i % 2 == 0 ? "Video " : "Reading ") + std::to_string(m + 1) + "." +
                    std::to_string(l + 1) + "." + std::to_string(i + 1) + ": " +
                    capitalize(item_words[m][l][i][0]);
        item.raw_text = "<p>" + capitalize(draw_text(rng, c, pools, c.item_length)) + ".</p>";
        lesson.items.push_back(std::move(item));
      }
      module.lessons.push_back(std::move(lesson));
    }
    out.course.modules.push_back(std::move(module));
  }

  std::size_t post_no = 0;
  auto next_id = [&] {
    std::string n = std::to_string(++post_no);
    return "p" + std::string(n.size() < 4 ? 4 - n.size() : 0, '0') + n;
  };
  for (std::uint32_t m = 0; m < c.modules; ++m) {
    const Module& module = out.course.modules[m];
    for (std::uint32_t l = 0; l < c.lessons_per_module; ++l) {
      const Lesson& lesson = module.lessons[l];
      for (std::uint32_t i = 0; i < c.items_per_lesson; ++i) {
        const Item& item = lesson.items[i];
        const Pools pools{&item_words[m][l][i], &lesson_words[m][l], &module_words[m], &noise};
        for (std::uint32_t p = 0; p < c.posts_per_item; ++p) {
          ForumPost post;
          post.post_id = next_id();
          post.forum_name = "Week " + std::to_string(m + 1);
          post.kind = p % 3 == 2 ? PostKind::kAnswer : PostKind::kQuestion;
          post.raw_text = capitalize(pick(rng, chatter())) + ", " +
                          draw_text(rng, c, pools, c.post_length) + "? " + pick(rng, chatter());
          out.truth.push_back({post.post_id, module.name, lesson.name, item.name});
          out.posts.push_back(std::move(post));
        }
      }
    }
  }
  for (std::uint32_t p = 0; p < c.off_topic_posts; ++p) {
    ForumPost post;
    post.post_id = next_id();
    post.forum_name = "General Discussion";
    post.raw_text = capitalize(pick(rng, chatter())) + " " + pick(rng, chatter()) + " " +
                    pick(rng, noise) + " " + pick(rng, chatter()) + "!";
    out.truth.push_back({post.post_id, "", "", std::nullopt});
    out.posts.push_back(std::move(post));
  }
  return out;
}

}  // namespace forumtrace
