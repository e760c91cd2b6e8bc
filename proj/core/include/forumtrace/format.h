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

#ifndef FORUMTRACE_FORMAT_H_
#define FORUMTRACE_FORMAT_H_

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace forumtrace {

// Every persisted artifact carries "format_version": "<major>.<minor>".
// Readers accept any minor revision of a major they know and refuse newer
// majors.
inline constexpr int kFormatMajor = 1;
inline constexpr int kFormatMinor = 0;

std::string format_version();

// Throws FormatVersionError when the field is missing, malformed or names a
// newer major version. `artifact` is used in the message.
void check_format_version(const nlohmann::json& j, std::string_view artifact);

// Canonical serialization used for every JSON artifact: two-space indent,
// trailing newline. Object keys are sorted by nlohmann::json itself.
std::string dump_artifact(const nlohmann::json& j);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never see a partial artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// Throws Error naming the path when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

// Parses JSON, mapping syntax errors to ParseError with line/column.
nlohmann::json parse_json(std::string_view text, std::string_view what);

}  // namespace forumtrace

#endif  // FORUMTRACE_FORMAT_H_
