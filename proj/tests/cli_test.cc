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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.h"
#include "test_util.h"

namespace forumtrace {
namespace {

using testing::slurp;
using testing::TempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("TRACE_WORKSPACE"); }
  Result ws(std::vector<std::string> args) {
    args.insert(args.begin(), {"--workspace", dir_.path().string()});
    return run_cli(args);
  }
  TempDir dir_;
};

TEST_F(CliTest, TrainTwiceIsByteIdentical) {
  ASSERT_EQ(ws({"synth"}).code, cli::kExitOk);
  ASSERT_EQ(ws({"ingest"}).code, cli::kExitOk);
  ASSERT_EQ(ws({"train", "--model", "llda", "--seed", "42"}).code, cli::kExitOk);
  const std::string first = slurp(dir_.path() / "models" / "llda.json");
  ASSERT_EQ(ws({"--seed", "42", "train", "--model", "llda"}).code, cli::kExitOk);
  EXPECT_EQ(first, slurp(dir_.path() / "models" / "llda.json"));
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  const Result bogus = ws({"train", "--model", "bogus"});
  EXPECT_EQ(bogus.code, cli::kExitUsage);
  EXPECT_NE(bogus.err.find("bogus"), std::string::npos);
  EXPECT_EQ(ws({}).code, cli::kExitUsage);
  EXPECT_EQ(ws({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(ws({"train"}).code, cli::kExitUsage);
  EXPECT_EQ(ws({"evaluate", "--bootstrap", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(ws({"compare", "--models", "llda"}).code, cli::kExitUsage);
  EXPECT_EQ(ws({"trace", "--model", "nope"}).code, cli::kExitUsage);
}

TEST_F(CliTest, MissingWorkspaceExitsTwo) {
  const Result r = run_cli({"ingest"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, WorkspaceFromEnvironment) {
  setenv("TRACE_WORKSPACE", dir_.path().string().c_str(), 1);
  EXPECT_EQ(run_cli({"synth"}).code, cli::kExitOk);
  EXPECT_TRUE(std::filesystem::exists(dir_.path() / "course.json"));
  unsetenv("TRACE_WORKSPACE");
}

TEST_F(CliTest, EvaluateBeforeTraceExitsOne) {
  ASSERT_EQ(ws({"synth"}).code, cli::kExitOk);
  ASSERT_EQ(ws({"ingest"}).code, cli::kExitOk);
  const Result r = ws({"evaluate"});
  EXPECT_EQ(r.code, cli::kExitDataError);
  EXPECT_NE(r.err.find("no rankings found"), std::string::npos);
}

TEST_F(CliTest, DataErrorsNameTheArtifact) {
  const Result r = ws({"ingest"});
  EXPECT_EQ(r.code, cli::kExitDataError);
  EXPECT_NE(r.err.find("course.json"), std::string::npos);
  std::ofstream(dir_.path() / "course.json") << "{ not json";
  const Result bad = ws({"ingest"});
  EXPECT_EQ(bad.code, cli::kExitDataError);
  EXPECT_NE(bad.err.find("course.json"), std::string::npos);
}

TEST_F(CliTest, FullPipeline) {
  ASSERT_EQ(ws({"synth", "--posts-per-item", "4"}).code, cli::kExitOk);
  ASSERT_EQ(ws({"ingest"}).code, cli::kExitOk);
  for (const char* m : {"tfidf", "lda", "hdp", "at", "llda"}) {
    ASSERT_EQ(ws({"train", "--model", m}).code, cli::kExitOk) << m;
  }
  ASSERT_EQ(ws({"trace", "--all-models"}).code, cli::kExitOk);
  const Result eval = ws({"evaluate", "--all-models", "--bootstrap", "50"});
  ASSERT_EQ(eval.code, cli::kExitOk) << eval.err;
  EXPECT_NE(eval.out.find("random"), std::string::npos);
  const Result cmp = ws({"compare", "--models", "llda,lda"});
  EXPECT_EQ(cmp.code, cli::kExitOk) << cmp.err;
  EXPECT_EQ(ws({"oov", "--top", "5"}).code, cli::kExitOk);
  EXPECT_TRUE(std::filesystem::exists(dir_.path() / "oov.json"));
  EXPECT_TRUE(std::filesystem::exists(dir_.path() / "violin.csv"));
}

}  // namespace
}  // namespace forumtrace
