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

#ifndef FORUMTRACE_WORKSPACE_H_
#define FORUMTRACE_WORKSPACE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forumtrace/errors.h"
#include "forumtrace/eval.h"
#include "forumtrace/models.h"
#include "forumtrace/synth.h"

namespace forumtrace {

// A required artifact is missing or inconsistent with its inputs.
class WorkspaceError : public Error {
 public:
  using Error::Error;
};

struct TrainOptions {
  std::uint64_t seed = 13;
  std::optional<std::uint32_t> sweeps;  // Gibbs sweeps / LLDA iterations / HDP passes
  std::optional<std::uint32_t> topics;  // K for lda and at
  bool llda_background = false;
};

struct EvaluateOptions {
  std::optional<std::filesystem::path> truth;  // defaults to <workspace>/truth.csv
  std::uint32_t bootstrap = 1000;
  std::uint64_t seed = 13;
  std::vector<ModelKind> models;  // empty: every model with rankings
  bool all_models = false;        // require rankings for all five models
};

struct IngestSummary {
  std::size_t modules = 0;
  std::size_t lessons = 0;
  std::size_t items = 0;
  std::size_t documents = 0;
  std::size_t excluded = 0;
  std::size_t vocabulary = 0;
  std::size_t posts = 0;
};

// File-based pipeline state:
//
//   course.json, posts.jsonl, truth.csv      inputs
//   corpus.json, exclusions.json             ingest
//   models/<model>.json                      train
//   rankings/<model>.jsonl                   trace
//   report.json, violin.csv                  evaluate / compare
//   oov.json                                 oov
//   manifest.json                            seeds and input fingerprints
//
// Every output is a pure function of the inputs and seeds, and is written
// with an atomic rename.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path course_path() const { return root_ / "course.json"; }
  std::filesystem::path posts_path() const { return root_ / "posts.jsonl"; }
  std::filesystem::path truth_path() const { return root_ / "truth.csv"; }
  std::filesystem::path corpus_path() const { return root_ / "corpus.json"; }
  std::filesystem::path exclusions_path() const { return root_ / "exclusions.json"; }
  std::filesystem::path manifest_path() const { return root_ / "manifest.json"; }
  std::filesystem::path model_path(ModelKind kind) const;
  std::filesystem::path rankings_path(std::string_view model) const;
  std::filesystem::path report_path() const { return root_ / "report.json"; }
  std::filesystem::path violin_path() const { return root_ / "violin.csv"; }
  std::filesystem::path oov_path() const { return root_ / "oov.json"; }

  SynthCorpus synth(const SynthConfig& config);
  IngestSummary ingest();
  void train(ModelKind kind, const TrainOptions& options);
  std::size_t trace(ModelKind kind);
  nlohmann::json evaluate(const EvaluateOptions& options);
  ComparisonRow compare(ModelKind a, ModelKind b);
  ComparisonRow compare(const std::string& a, const std::string& b);
  std::vector<OovEntry> oov(std::size_t top_k);

 private:
  void record(const std::string& key, nlohmann::json value);

  std::filesystem::path root_;
};

}  // namespace forumtrace

#endif  // FORUMTRACE_WORKSPACE_H_
