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

#include "cli.h"

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "forumtrace/errors.h"
#include "forumtrace/models.h"
#include "forumtrace/trace.h"
#include "forumtrace/workspace.h"

namespace forumtrace::cli {

namespace {

std::string model_names() {
  std::string out;
  for (ModelKind k : kAllModelKinds) {
    if (!out.empty()) out += "|";
    out += to_string(k);
  }
  return out;
}

ModelKind require_kind(const std::string& name) {
  auto kind = parse_model_kind(name);
  if (!kind) throw CLI::ValidationError("--model", "unknown model '" + name + "'");
  return *kind;
}

// Accepts any model name plus the random baseline.
std::string check_model_name(const std::string& name) {
  if (name == kRandomModelName || parse_model_kind(name)) return {};
  return "unknown model '" + name + "' (expected " + model_names() + "|random)";
}

std::string check_trainable(const std::string& name) {
  if (parse_model_kind(name)) return {};
  return "unknown model '" + name + "' (expected " + model_names() + ")";
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string p_string(double p) {
  if (p == 0.0) return "<1e-300";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", p);
  return buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace forum posts back to course material", "forumtrace"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string workspace;
  std::uint64_t seed = 13;
  app.add_option("--workspace", workspace, "Workspace directory")->envname("TRACE_WORKSPACE");
  app.add_option("--seed", seed, "Random seed")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Generate the synthetic course, posts and labels");
  SynthConfig synth_config;
  synth->add_option("--posts-per-item", synth_config.posts_per_item)->capture_default_str();
  synth->add_option("--noise", synth_config.noise_fraction, "Shared-noise token fraction")
      ->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "Preprocess course and posts; build the vocabulary");

  auto* train = app.add_subcommand("train", "Train one model");
  std::string train_model;
  std::optional<std::uint32_t> sweeps;
  std::optional<std::uint32_t> topics;
  bool background = false;
  train->add_option("--model", train_model, model_names())->required()->check(check_trainable);
  train->add_option("--sweeps", sweeps, "Gibbs sweeps, LLDA iterations or HDP passes");
  train->add_option("--topics", topics, "Number of topics for lda and at");
  train->add_flag("--background", background, "Add a shared background label (llda)");

  auto* trace = app.add_subcommand("trace", "Rank course items for every post");
  std::vector<std::string> trace_models;
  bool trace_all = false;
  trace->add_option("--model", trace_models, model_names())->delimiter(',')->check(check_trainable);
  trace->add_flag("--all-models", trace_all);

  auto* evaluate = app.add_subcommand("evaluate", "Score rankings against manual labels");
  EvaluateOptions eval_options;
  std::string truth;
  std::vector<std::string> eval_models;
  evaluate->add_option("--truth", truth, "Labels CSV (default: <workspace>/truth.csv)");
  evaluate->add_option("--bootstrap", eval_options.bootstrap, "Bootstrap resamples")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--models", eval_models, model_names())
      ->delimiter(',')
      ->check(check_trainable);
  evaluate->add_flag("--all-models", eval_options.all_models);

  auto* compare = app.add_subcommand("compare", "Rank-sum test between two evaluated models");
  std::vector<std::string> compare_models_arg;
  compare->add_option("--models", compare_models_arg, "Two models, e.g. llda,lda")
      ->required()
      ->delimiter(',')
      ->expected(2)
      ->check(check_model_name);

  auto* oov = app.add_subcommand("oov", "Report post stems missing from the course vocabulary");
  std::size_t top = 20;
  oov->add_option("--top", top, "Entries to keep (0 keeps all)")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (workspace.empty()) {
      throw CLI::RequiredError("--workspace (or TRACE_WORKSPACE)");
    }
    if (trace->parsed() && trace_models.empty() && !trace_all) {
      throw CLI::RequiredError("--model or --all-models");
    }
    if (compare->parsed() && compare_models_arg.size() != 2) {
      throw CLI::ValidationError("--models", "expected exactly two models");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (msg.empty()) msg = e.get_name();
    err << "forumtrace: usage error: " << msg << "\n";
    return kExitUsage;
  }

  Workspace ws(workspace);
  try {
    if (synth->parsed()) {
      synth_config.seed = seed;
      const SynthCorpus c = ws.synth(synth_config);
      out << "synth: " << c.course.num_items() << " items, " << c.posts.size() << " posts, "
          << c.truth.size() << " labels in " << workspace << "\n";
    } else if (ingest->parsed()) {
      const IngestSummary s = ws.ingest();
      out << "ingest: " << s.documents << " documents (" << s.excluded << " excluded), "
          << s.vocabulary << " stems, " << s.posts << " posts\n";
    } else if (train->parsed()) {
      TrainOptions options;
      options.seed = seed;
      options.sweeps = sweeps;
      options.topics = topics;
      options.llda_background = background;
      const ModelKind kind = require_kind(train_model);
      ws.train(kind, options);
      out << "train: wrote " << ws.model_path(kind).string() << "\n";
    } else if (trace->parsed()) {
      std::vector<ModelKind> kinds;
      if (trace_all) {
        kinds.assign(kAllModelKinds.begin(), kAllModelKinds.end());
      } else {
        for (const std::string& m : trace_models) kinds.push_back(require_kind(m));
      }
      for (ModelKind k : kinds) {
        const std::size_t n = ws.trace(k);
        out << "trace: " << n << " posts -> " << ws.rankings_path(to_string(k)).string() << "\n";
      }
    } else if (evaluate->parsed()) {
      eval_options.seed = seed;
      if (!truth.empty()) eval_options.truth = truth;
      for (const std::string& m : eval_models) eval_options.models.push_back(require_kind(m));
      const nlohmann::json report = ws.evaluate(eval_options);
      out << "model    queries  mrr     bootstrap  p_vs_random\n";
      for (const auto& m : report.at("models")) {
        std::string p = "-";
        for (const auto& t : report.at("tests")) {
          if (t.at("model_a") == m.at("model") && t.at("model_b") == kRandomModelName) {
            p = p_string(t.at("p_value").get<double>());
          }
        }
        out << std::left << std::setw(9) << m.at("model").get<std::string>() << std::setw(9)
            << m.at("queries").get<std::size_t>() << std::setw(8)
            << fixed(m.at("mrr").get<double>()) << std::setw(11)
            << fixed(m.at("bootstrap_mean").get<double>()) << p << "\n";
      }
      out << "evaluate: wrote " << ws.report_path().string() << " and "
          << ws.violin_path().string() << "\n";
    } else if (compare->parsed()) {
      const ComparisonRow row = ws.compare(compare_models_arg[0], compare_models_arg[1]);
      out << "compare: " << row.model_a << " vs " << row.model_b << " W=" << fixed(row.test.w, 1)
          << " p=" << p_string(row.test.p_value) << "\n";
    } else if (oov->parsed()) {
      for (const OovEntry& e : ws.oov(top)) out << e.stem << "\t" << e.frequency << "\n";
    }
  } catch (const CLI::ValidationError& e) {
    err << "forumtrace: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "forumtrace: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "forumtrace: error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace forumtrace::cli
