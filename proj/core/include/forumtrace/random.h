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

#ifndef FORUMTRACE_RANDOM_H_
#define FORUMTRACE_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace forumtrace {

// Seeded pseudo-random source with a platform-stable output stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not, so the conversions to doubles
// and bounded integers are done here with fixed arithmetic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, n). n must be positive. Rejection sampling keeps
  // the result exactly unbiased.
  std::uint64_t uniform_int(std::uint64_t n);

  // Index drawn with probability proportional to weights[i]. Weights must be
  // nonnegative with a positive sum.
  std::size_t categorical(std::span<const double> weights);

  // Draw from Gamma(shape, 1) (Marsaglia-Tsang, with the shape < 1 boost).
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a stream index
// (splitmix64 finaliser over the pair).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace forumtrace

#endif  // FORUMTRACE_RANDOM_H_
