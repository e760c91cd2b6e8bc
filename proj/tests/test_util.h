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

#ifndef FORUMTRACE_TESTS_TEST_UTIL_H_
#define FORUMTRACE_TESTS_TEST_UTIL_H_

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "forumtrace/corpus.h"

namespace forumtrace::testing {

inline BowVector bow(std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> entries) {
  std::vector<BowEntry> out;
  for (const auto& [i, c] : entries) out.push_back({i, c});
  return BowVector(std::move(out));
}

// A vocabulary whose stems all have df = 1 out of num_docs documents.
inline Vocabulary vocab_of(std::vector<std::string> stems, std::uint32_t num_docs = 2) {
  std::vector<std::uint32_t> df(stems.size(), 1);
  return Vocabulary(std::move(stems), std::move(df), num_docs);
}

// "alpha" x 20 in one document and "beta" x 20 in the other.
inline std::vector<CorpusDocument> disjoint_corpus(std::uint32_t n = 20) {
  return {{"d1", bow({{0, n}})}, {"d2", bow({{1, n}})}};
}

inline double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

inline std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Lines of a text file without line terminators or trailing blank lines.
inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

// Random strings over letters, digits, punctuation, markup and non-ASCII.
inline std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "a", "e", "i", "o", "u", "b", "c", "d", "s", "t", "r", "n", "g", "y", "l", "m",
      "A", "E", "S", "T", "Q", "Z", "0", "1", "5", "9", " ", " ", " ", "\t", "\n",
      ".", ",", "!", "?", "-", "_", "'", "\"", "(", ")", "/", "\\", "@", "#", "$",
      "%", "&", "*", "+", "=", ":", ";", "<", ">", "[", "]", "{", "}", "|", "~", "^",
      "`", "é", "Ü", "ß", "λ", "Ж", "—", "“", "”", "…", "€", "\xff"};
  std::uniform_int_distribution<std::size_t> len(0, 60);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s += pieces[pick(rng)];
  return s;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("forumtrace-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace forumtrace::testing

#endif  // FORUMTRACE_TESTS_TEST_UTIL_H_
