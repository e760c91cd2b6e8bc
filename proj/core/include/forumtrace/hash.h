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

#ifndef FORUMTRACE_HASH_H_
#define FORUMTRACE_HASH_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace forumtrace {

// 64-bit FNV-1a. Used as a content fingerprint for inputs, the stopword list
// and vocabularies; not a cryptographic hash.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

// Fixed-width lowercase hex, e.g. "fnv1a64:00ff...".
std::string fingerprint(std::string_view data);

}  // namespace forumtrace

#endif  // FORUMTRACE_HASH_H_
