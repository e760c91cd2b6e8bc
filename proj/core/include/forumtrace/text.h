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

#ifndef FORUMTRACE_TEXT_H_
#define FORUMTRACE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace forumtrace {

// Ordered stems produced by preprocess().
using TokenList = std::vector<std::string>;

inline constexpr std::size_t kMinTokenLength = 3;

// Text pipeline applied to both course material and posts:
//
//   1. drop every "<...>" span (single pass, non-nesting; an unmatched "<"
//      drops the rest of the input);
//   2. lowercase (ASCII plus the Latin-1, Latin Extended-A, Greek and
//      Cyrillic case pairs);
//   3. digits are deleted, ASCII punctuation and common Unicode punctuation
//      become token separators;
//   4. split on whitespace;
//   5. drop stopwords and tokens shorter than three code points;
//   6. Porter-stem, dropping any stem that ends up shorter than three code
//      points (e.g. "ties" -> "ti").
//
// Non-ASCII letters survive to the stemmer unchanged.
TokenList preprocess(std::string_view raw_text);

// Steps 1-4 only: the lowercased, tag/punctuation/digit-free word sequence.
std::vector<std::string> tokenize(std::string_view raw_text);

bool is_stopword(std::string_view word);

// The vendored stopword list, one word per line, sorted.
std::string_view stopword_list();

// fingerprint() of stopword_list(); recorded in every report.
const std::string& stopword_list_hash();

// Number of Unicode code points in a UTF-8 string (invalid bytes count as one).
std::size_t utf8_length(std::string_view s);

}  // namespace forumtrace

#endif  // FORUMTRACE_TEXT_H_
