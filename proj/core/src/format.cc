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

#include "forumtrace/format.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "forumtrace/errors.h"

namespace forumtrace {

namespace fs = std::filesystem;

std::string format_version() {
  return std::to_string(kFormatMajor) + "." + std::to_string(kFormatMinor);
}

void check_format_version(const nlohmann::json& j, std::string_view artifact) {
  const std::string name(artifact);
  if (!j.is_object() || !j.contains("format_version") || !j["format_version"].is_string()) {
    throw FormatVersionError(name + ": missing format_version");
  }
  const std::string v = j["format_version"].get<std::string>();
  int major = 0;
  int minor = 0;
  char tail = 0;
  if (std::sscanf(v.c_str(), "%d.%d%c", &major, &minor, &tail) != 2 || major < 0 || minor < 0) {
    throw FormatVersionError(name + ": malformed format_version \"" + v + "\"");
  }
  if (major > kFormatMajor) {
    throw FormatVersionError(name + ": format_version " + v +
                             " is newer than supported major " + std::to_string(kFormatMajor));
  }
}

std::string dump_artifact(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_file_atomic(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json(std::string_view text, std::string_view what) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Convert the byte offset into a line / column pair.
    std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    if (offset > text.size()) offset = text.size();
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string(what) + ": invalid JSON", line, column);
  }
}

}  // namespace forumtrace
