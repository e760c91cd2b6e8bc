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

#ifndef FORUMTRACE_PORTER_STEMMER_H_
#define FORUMTRACE_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace forumtrace {

// Porter (1980) suffix stripper, following Martin Porter's reference C
// implementation, including its two departures from the published text
// ("bli" -> "ble" and "logi" -> "log") so that the canonical voc.txt /
// output.txt pair matches exactly.
//
// Input is expected to be lowercase. Words of one or two characters are
// returned unchanged. Bytes outside a-z are treated as consonants and are never
// collapsed as doubled letters, so UTF-8 sequences pass through intact.
std::string porter_stem(std::string_view word);

}  // namespace forumtrace

#endif  // FORUMTRACE_PORTER_STEMMER_H_
