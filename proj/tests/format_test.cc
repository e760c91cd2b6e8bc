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

#include <gtest/gtest.h>

#include "forumtrace/errors.h"
#include "forumtrace/format.h"
#include "forumtrace/models.h"
#include "test_util.h"

namespace forumtrace {
namespace {

TEST(Format, VersionString) { EXPECT_EQ(format_version(), "1.0"); }

TEST(Format, AcceptsSameMajorRejectsNewer) {
  EXPECT_NO_THROW(check_format_version({{"format_version", "1.0"}}, "x"));
  EXPECT_NO_THROW(check_format_version({{"format_version", "1.7"}}, "x"));
  EXPECT_THROW(check_format_version({{"format_version", "2.0"}}, "x"), FormatVersionError);
  EXPECT_THROW(check_format_version({{"other", 1}}, "x"), Error);
  EXPECT_THROW(check_format_version({{"format_version", "one"}}, "x"), Error);
}

TEST(Format, NewerModelArtifactRefused) {
  TfidfModel m;
  m.vocab_hash = "h";
  nlohmann::json j = model_to_json(m);
  EXPECT_NO_THROW(model_from_json(j));
  j["format_version"] = "2.0";
  EXPECT_THROW(model_from_json(j), FormatVersionError);
}

TEST(Format, AtomicWriteReplacesContents) {
  testing::TempDir dir;
  const auto p = dir.path() / "a.json";
  write_file_atomic(p, "one");
  write_file_atomic(p, "two");
  EXPECT_EQ(read_file(p), "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++files;
  EXPECT_EQ(files, 1u);
}

TEST(Format, ParseJsonReportsPosition) {
  try {
    parse_json("{\n  \"a\": ,\n}", "thing.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("thing.json"), std::string::npos);
  }
}

TEST(Format, DumpIsStable) {
  const nlohmann::json j = {{"b", 0.1}, {"a", {1, 2}}};
  EXPECT_EQ(dump_artifact(j), dump_artifact(nlohmann::json::parse(dump_artifact(j))));
  EXPECT_EQ(dump_artifact(j).back(), '\n');
}

}  // namespace
}  // namespace forumtrace
