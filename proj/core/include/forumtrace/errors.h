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

#ifndef FORUMTRACE_ERRORS_H_
#define FORUMTRACE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forumtrace {

// Base of every error raised by the library. Data errors (bad input files,
// degenerate corpora) derive from this; programming errors use
// std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed course / posts / truth / artifact input. Line and column are
// 1-based; zero means "unknown".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(const std::string& id);
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class EmptyCorpusError : public Error {
 public:
  explicit EmptyCorpusError(const std::string& what = "corpus has no usable documents")
      : Error(what) {}
};

class LabelError : public Error {
 public:
  using Error::Error;
};

// The post has no course-vocabulary words, so no model can place it.
class UntraceablePostError : public Error {
 public:
  UntraceablePostError() : Error("post has no in-vocabulary words") {}
};

class ZeroVectorError : public Error {
 public:
  ZeroVectorError() : Error("cosine distance undefined for a zero vector") {}
};

enum class ExclusionReason { kOffTopic, kUntraceable };

const char* to_string(ExclusionReason reason);

// Raised by reciprocal_rank for pairs that are skipped from MRR.
class ExcludedPostError : public Error {
 public:
  explicit ExcludedPostError(ExclusionReason reason);
  ExclusionReason reason() const { return reason_; }

 private:
  ExclusionReason reason_;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class SampleError : public Error {
 public:
  using Error::Error;
};

// Artifact written by a newer, incompatible major format version.
class FormatVersionError : public Error {
 public:
  using Error::Error;
};

}  // namespace forumtrace

#endif  // FORUMTRACE_ERRORS_H_
