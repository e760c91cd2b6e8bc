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

#include "forumtrace/workspace.h"

#include <algorithm>
#include <set>

#include "forumtrace/format.h"
#include "forumtrace/hash.h"
#include "forumtrace/random.h"
#include "forumtrace/text.h"

namespace forumtrace {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kPoolingRule =
    "per-pair reciprocal ranks concatenated across all bootstrap resamples";

struct PostBow {
  std::string post_id;
  BowVector bow;
};

struct LoadedCorpus {
  Vocabulary vocab;
  std::vector<CorpusDocument> documents;
  std::vector<PostBow> posts;
};

json bow_json(const BowVector& bow) {
  json out = json::array();
  for (const BowEntry& e : bow.entries()) out.push_back({e.index, e.count});
  return out;
}

BowVector bow_from_json(const json& j) {
  std::vector<BowEntry> entries;
  for (const json& e : j) {
    entries.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>()});
  }
  return BowVector(std::move(entries));
}

std::string read_artifact(const fs::path& path, const std::string& missing_hint) {
  if (!fs::exists(path)) throw WorkspaceError("no " + path.filename().string() + " found in " +
                                              path.parent_path().string() + "; " + missing_hint);
  return read_file(path);
}

json load_json_artifact(const fs::path& path, const std::string& missing_hint) {
  const std::string text = read_artifact(path, missing_hint);
  json j;
  try {
    j = parse_json(text, path.filename().string());
  } catch (const ParseError& e) {
    throw WorkspaceError(path.string() + ": " + e.what());
  }
  check_format_version(j, path.filename().string());
  return j;
}

CourseBranch load_course(const fs::path& path) {
  const std::string text = read_artifact(path, "supply a course or run synth");
  try {
    return parse_course(text);
  } catch (const Error& e) {
    throw WorkspaceError(path.string() + ": " + e.what());
  }
}

std::vector<ForumPost> load_posts(const fs::path& path) {
  const std::string text = read_artifact(path, "supply posts or run synth");
  try {
    return parse_posts(text);
  } catch (const Error& e) {
    throw WorkspaceError(path.string() + ": " + e.what());
  }
}

LoadedCorpus load_corpus(const fs::path& path) {
  const json j = load_json_artifact(path, "run ingest first");
  try {
    LoadedCorpus c;
    const json& v = j.at("vocabulary");
    c.vocab = Vocabulary(v.at("stems").get<std::vector<std::string>>(),
                         v.at("df").get<std::vector<std::uint32_t>>(),
                         v.at("num_docs").get<std::uint32_t>());
    if (c.vocab.hash() != v.at("hash").get<std::string>()) {
      throw WorkspaceError(path.string() + ": vocabulary hash mismatch");
    }
    for (const json& d : j.at("documents")) {
      c.documents.push_back({d.at("item_id").get<std::string>(), bow_from_json(d.at("bow"))});
    }
    for (const json& p : j.at("posts")) {
      c.posts.push_back({p.at("post_id").get<std::string>(), bow_from_json(p.at("bow"))});
    }
    return c;
  } catch (const json::exception& e) {
    throw WorkspaceError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw WorkspaceError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> candidate_ids(const LoadedCorpus& c) {
  std::vector<std::string> ids;
  for (const CorpusDocument& d : c.documents) {
    if (!d.bow.empty()) ids.push_back(d.item_id);
  }
  return ids;
}

std::vector<RankedTrace> load_rankings(const fs::path& path) {
  const std::string text = read_file(path);
  std::vector<RankedTrace> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    const std::string_view line(text.data() + start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const json j = parse_json(line, path.filename().string());
      check_format_version(j, path.filename().string());
      out.push_back(trace_from_json(j));
    } catch (const json::exception& e) {
      throw WorkspaceError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw WorkspaceError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

json model_json_for_report(const ModelEvaluation& ev) {
  json ranks = json::array();
  for (std::size_t i = 0; i < ev.post_ids.size(); ++i) {
    ranks.push_back({{"post_id", ev.post_ids[i]}, {"reciprocal_rank", ev.reciprocal_ranks[i]}});
  }
  return {{"model", ev.model},
          {"queries", ev.reciprocal_ranks.size()},
          {"mrr", ev.mrr},
          {"bootstrap_mean", ev.bootstrap.mean},
          {"module_hit_rate", ev.module_hit_rate},
          {"lesson_hit_rate", ev.lesson_hit_rate},
          {"excluded",
           {{"off_topic", ev.excluded_off_topic}, {"untraceable", ev.excluded_untraceable}}},
          {"reciprocal_ranks", std::move(ranks)},
          {"bootstrap", ev.bootstrap.mrrs}};
}

ModelEvaluation model_from_report(const json& m) {
  ModelEvaluation ev;
  ev.model = m.at("model").get<std::string>();
  for (const json& r : m.at("reciprocal_ranks")) {
    ev.post_ids.push_back(r.at("post_id").get<std::string>());
    ev.reciprocal_ranks.push_back(r.at("reciprocal_rank").get<double>());
  }
  ev.mrr = m.at("mrr").get<double>();
  ev.bootstrap.mrrs = m.at("bootstrap").get<std::vector<double>>();
  ev.bootstrap.mean = m.at("bootstrap_mean").get<double>();
  return ev;
}

json test_json(const ComparisonRow& row) {
  return {{"model_a", row.model_a}, {"model_b", row.model_b}, {"w", row.test.w},
          {"z", row.test.z},        {"p_value", row.test.p_value},
          {"exact", row.test.exact}, {"n_a", row.n_a},       {"n_b", row.n_b}};
}

}  // namespace

Workspace::Workspace(fs::path root) : root_(std::move(root)) {}

fs::path Workspace::model_path(ModelKind kind) const {
  return root_ / "models" / (std::string(to_string(kind)) + ".json");
}

fs::path Workspace::rankings_path(std::string_view model) const {
  return root_ / "rankings" / (std::string(model) + ".jsonl");
}

void Workspace::record(const std::string& key, json value) {
  json manifest;
  if (fs::exists(manifest_path())) {
    manifest = load_json_artifact(manifest_path(), "");
  } else {
    manifest = {{"format_version", format_version()}, {"steps", json::object()}};
  }
  manifest["format_version"] = format_version();
  manifest["steps"][key] = std::move(value);
  write_file_atomic(manifest_path(), dump_artifact(manifest));
}

SynthCorpus Workspace::synth(const SynthConfig& config) {
  SynthCorpus corpus = generate_synthetic(config);
  fs::create_directories(root_);
  const std::string course = serialize_course(corpus.course);
  const std::string posts = serialize_posts(corpus.posts);
  const std::string truth = serialize_truth_csv(corpus.truth);
  write_file_atomic(course_path(), course);
  write_file_atomic(posts_path(), posts);
  write_file_atomic(truth_path(), truth);
  record("synth", {{"seed", config.seed},
                   {"items", corpus.course.num_items()},
                   {"posts", corpus.posts.size()},
                   {"course", fingerprint(course)},
                   {"posts_hash", fingerprint(posts)},
                   {"truth", fingerprint(truth)}});
  return corpus;
}

IngestSummary Workspace::ingest() {
  const CourseBranch course = load_course(course_path());
  const std::vector<ForumPost> posts = load_posts(posts_path());
  CorpusBuild build;
  try {
    build = build_vocabulary(course);
  } catch (const EmptyCorpusError& e) {
    throw WorkspaceError(course_path().string() + ": " + e.what());
  }

  json documents = json::array();
  for (const CorpusDocument& d : build.documents) {
    documents.push_back({{"item_id", d.item_id}, {"bow", bow_json(d.bow)}});
  }
  json post_bows = json::array();
  for (const ForumPost& p : posts) {
    post_bows.push_back(
        {{"post_id", p.post_id}, {"bow", bow_json(to_bow(preprocess(p.raw_text), build.vocab))}});
  }
  const json corpus = {{"format_version", format_version()},
                       {"stopwords", stopword_list_hash()},
                       {"vocabulary",
                        {{"hash", build.vocab.hash()},
                         {"num_docs", build.vocab.num_docs()},
                         {"stems", build.vocab.stems()},
                         {"df", build.vocab.document_frequencies()}}},
                       {"documents", std::move(documents)},
                       {"posts", std::move(post_bows)}};
  fs::create_directories(root_);
  write_file_atomic(corpus_path(), dump_artifact(corpus));
  write_file_atomic(exclusions_path(),
                    dump_artifact({{"format_version", format_version()},
                                   {"items", build.excluded}}));

  record("ingest", {{"course", fingerprint(read_file(course_path()))},
                    {"posts", fingerprint(read_file(posts_path()))},
                    {"stopwords", stopword_list_hash()},
                    {"vocabulary", build.vocab.hash()}});

  IngestSummary s;
  s.modules = course.num_modules();
  s.lessons = course.num_lessons();
  s.items = course.num_items();
  s.documents = build.documents.size();
  s.excluded = build.excluded.size();
  s.vocabulary = build.vocab.size();
  s.posts = posts.size();
  return s;
}

void Workspace::train(ModelKind kind, const TrainOptions& options) {
  const LoadedCorpus corpus = load_corpus(corpus_path());
  AnyModel model;
  switch (kind) {
    case ModelKind::kTfidf:
      model = fit_tfidf(corpus.documents, corpus.vocab);
      break;
    case ModelKind::kLda: {
      LdaParams p;
      p.seed = options.seed;
      if (options.sweeps) p.train_sweeps = *options.sweeps;
      if (options.topics) p.num_topics = *options.topics;
      model = train_lda(corpus.documents, corpus.vocab, p);
      break;
    }
    case ModelKind::kHdp: {
      HdpParams p;
      p.seed = options.seed;
      if (options.sweeps) p.passes = *options.sweeps;
      model = train_hdp(corpus.documents, corpus.vocab, p);
      break;
    }
    case ModelKind::kAt:
    case ModelKind::kLlda: {
      const LabelCensus census = extract_labels(load_course(course_path()));
      const std::vector<LabeledDocument> labeled = attach_labels(corpus.documents, census);
      if (kind == ModelKind::kAt) {
        AtParams p;
        p.seed = options.seed;
        if (options.sweeps) p.train_sweeps = *options.sweeps;
        if (options.topics) p.num_topics = *options.topics;
        model = train_at(labeled, corpus.vocab, p);
      } else {
        LldaParams p;
        p.seed = options.seed;
        p.background_label = options.llda_background;
        if (options.sweeps) p.iterations = *options.sweeps;
        model = train_llda(labeled, corpus.vocab, p);
      }
      break;
    }
  }
  fs::create_directories(model_path(kind).parent_path());
  write_file_atomic(model_path(kind), dump_artifact(model_to_json(model)));
}

std::size_t Workspace::trace(ModelKind kind) {
  const LoadedCorpus corpus = load_corpus(corpus_path());
  const std::string name = to_string(kind);
  const json j = load_json_artifact(model_path(kind), "run train --model " + name + " first");
  AnyModel model;
  try {
    model = model_from_json(j);
  } catch (const json::exception& e) {
    throw WorkspaceError(model_path(kind).string() + ": " + e.what());
  }
  if (vocab_hash_of(model) != corpus.vocab.hash()) {
    throw WorkspaceError(model_path(kind).string() +
                         ": model was trained on a different vocabulary; re-run train");
  }
  const std::vector<ItemVector> items = item_vectors(model);
  std::string out;
  for (const PostBow& p : corpus.posts) {
    json line = to_json(trace_post(model, p.post_id, p.bow, items));
    line["format_version"] = format_version();
    out += line.dump() + "\n";
  }
  fs::create_directories(rankings_path(name).parent_path());
  write_file_atomic(rankings_path(name), out);
  return corpus.posts.size();
}

json Workspace::evaluate(const EvaluateOptions& options) {
  std::vector<ModelKind> kinds = options.models;
  if (options.all_models) kinds.assign(kAllModelKinds.begin(), kAllModelKinds.end());
  if (kinds.empty()) {
    for (ModelKind k : kAllModelKinds) {
      if (fs::exists(rankings_path(to_string(k)))) kinds.push_back(k);
    }
    if (kinds.empty()) {
      throw WorkspaceError("no rankings found in " + (root_ / "rankings").string() +
                           "; run trace first");
    }
  }
  for (ModelKind k : kinds) {
    if (!fs::exists(rankings_path(to_string(k)))) {
      throw WorkspaceError("no rankings found for " + std::string(to_string(k)) + " at " +
                           rankings_path(to_string(k)).string() + "; run trace first");
    }
  }

  const fs::path truth_file = options.truth.value_or(truth_path());
  const std::string truth_text = read_artifact(truth_file, "supply manual labels with --truth");
  std::vector<GroundTruthLabel> labels;
  try {
    labels = parse_truth_csv(truth_text);
  } catch (const ParseError& e) {
    throw WorkspaceError(truth_file.string() + ": " + e.what());
  }
  const CourseBranch course = load_course(course_path());
  const std::vector<ForumPost> posts = load_posts(posts_path());
  const LoadedCorpus corpus = load_corpus(corpus_path());
  const std::vector<std::string> candidates = candidate_ids(corpus);
  const TruthResolver resolver(course, candidates, posts);
  std::vector<TruthTarget> truths;
  try {
    truths = resolver.resolve_all(labels);
  } catch (const EvalError& e) {
    throw WorkspaceError(truth_file.string() + ": " + e.what());
  }

  // Random baseline, scored on the same pairs as the models.
  std::vector<RankedTrace> random;
  for (const PostBow& p : corpus.posts) {
    if (p.bow.empty()) {
      RankedTrace t;
      t.post_id = p.post_id;
      t.model = kRandomModelName;
      t.untraceable = true;
      random.push_back(std::move(t));
    } else {
      random.push_back(random_trace(p.post_id, candidates,
                                    derive_seed(options.seed, fnv1a64(p.post_id))));
    }
  }

  std::vector<ModelEvaluation> evals;
  json config_models = json::object();
  for (ModelKind k : kinds) {
    const std::string name = to_string(k);
    const std::vector<RankedTrace> traces = load_rankings(rankings_path(name));
    try {
      evals.push_back(
          evaluate_traces(name, traces, truths, resolver, options.bootstrap, options.seed));
    } catch (const EvalError& e) {
      throw WorkspaceError(rankings_path(name).string() + ": " + e.what());
    }
    if (fs::exists(model_path(k))) {
      const json m = load_json_artifact(model_path(k), "");
      const json& payload = m.at("payload");
      config_models[name] = payload.contains("params") ? payload.at("params") : json::object();
    }
  }
  evals.push_back(
      evaluate_traces(kRandomModelName, random, truths, resolver, options.bootstrap, options.seed));

  json models = json::array();
  for (const ModelEvaluation& ev : evals) models.push_back(model_json_for_report(ev));
  json tests = json::array();
  const ModelEvaluation& base = evals.back();
  for (std::size_t i = 0; i + 1 < evals.size(); ++i) {
    tests.push_back(test_json(compare_models(evals[i], base, options.bootstrap, options.seed)));
  }

  std::vector<TokenList> post_tokens;
  for (const ForumPost& p : posts) post_tokens.push_back(preprocess(p.raw_text));
  json oov = json::array();
  for (const OovEntry& e : oov_report(post_tokens, corpus.vocab, 20)) {
    oov.push_back({{"stem", e.stem}, {"frequency", e.frequency}});
  }

  const json report = {{"format_version", format_version()},
                       {"config",
                        {{"seed", options.seed},
                         {"bootstrap", options.bootstrap},
                         {"stopwords", stopword_list_hash()},
                         {"vocabulary", corpus.vocab.hash()},
                         {"truth", fingerprint(truth_text)},
                         {"pooling", kPoolingRule},
                         {"models", std::move(config_models)}}},
                       {"labeled_pairs", labels.size()},
                       {"models", std::move(models)},
                       {"tests", std::move(tests)},
                       {"oov", std::move(oov)}};
  write_file_atomic(report_path(), dump_artifact(report));

  std::string violin = "model,resample_index,mrr\n";
  for (const ModelEvaluation& ev : evals) {
    for (std::size_t r = 0; r < ev.bootstrap.mrrs.size(); ++r) {
      violin += ev.model + "," + std::to_string(r) + "," + json(ev.bootstrap.mrrs[r]).dump() + "\n";
    }
  }
  write_file_atomic(violin_path(), violin);
  record("evaluate", {{"seed", options.seed},
                      {"bootstrap", options.bootstrap},
                      {"report", fingerprint(dump_artifact(report))}});
  return report;
}

ComparisonRow Workspace::compare(ModelKind a, ModelKind b) {
  return compare(std::string(to_string(a)), std::string(to_string(b)));
}

ComparisonRow Workspace::compare(const std::string& a, const std::string& b) {
  json report = load_json_artifact(report_path(), "run evaluate first");
  const json* ja = nullptr;
  const json* jb = nullptr;
  for (const json& m : report.at("models")) {
    if (m.at("model") == a) ja = &m;
    if (m.at("model") == b) jb = &m;
  }
  if (!ja || !jb) {
    throw WorkspaceError(report_path().string() + ": no evaluation for " + (ja ? b : a) +
                         "; include it in evaluate");
  }
  const std::uint32_t resamples = report.at("config").at("bootstrap").get<std::uint32_t>();
  const std::uint64_t seed = report.at("config").at("seed").get<std::uint64_t>();
  ComparisonRow row;
  try {
    row = compare_models(model_from_report(*ja), model_from_report(*jb), resamples, seed);
  } catch (const EvalError& e) {
    throw WorkspaceError(report_path().string() + ": " + e.what());
  }
  json& tests = report["tests"];
  json kept = json::array();
  for (json& t : tests) {
    if (!(t.at("model_a") == a && t.at("model_b") == b)) kept.push_back(std::move(t));
  }
  kept.push_back(test_json(row));
  tests = std::move(kept);
  write_file_atomic(report_path(), dump_artifact(report));
  return row;
}

std::vector<OovEntry> Workspace::oov(std::size_t top_k) {
  const LoadedCorpus corpus = load_corpus(corpus_path());
  const std::vector<ForumPost> posts = load_posts(posts_path());
  std::vector<TokenList> tokens;
  for (const ForumPost& p : posts) tokens.push_back(preprocess(p.raw_text));
  const std::vector<OovEntry> entries = oov_report(tokens, corpus.vocab, top_k);
  json list = json::array();
  for (const OovEntry& e : entries) list.push_back({{"stem", e.stem}, {"frequency", e.frequency}});
  write_file_atomic(oov_path(), dump_artifact({{"format_version", format_version()},
                                               {"top", top_k},
                                               {"vocabulary", corpus.vocab.hash()},
                                               {"entries", std::move(list)}}));
  return entries;
}

}  // namespace forumtrace
