/*
 * Copyright 2026 The FairScope Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Seedable, platform-stable randomness.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not (their algorithms are left to
// the library vendor), so every draw used by the project goes through the
// helpers below instead of <random> distributions:
//
//   Uniform()        53 high bits of one engine output, scaled by 2^-53.
//   UniformIndex(n)  rejection sampling on the top bits, unbiased.
//   Normal()         Marsaglia polar method on Uniform().
//
// Seeds for sub-streams are derived with SplitMix64 (MixSeed) or, for named
// pipeline stages, FNV-1a over (master seed, stage name, index) finished with
// SplitMix64 (DeriveStageSeed).

#ifndef FAIRSCOPE_RANDOM_H_
#define FAIRSCOPE_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace fairscope {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;

std::uint64_t SplitMix64(std::uint64_t x);

// Stable 64-bit FNV-1a. `basis` allows chaining over several buffers.
std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t basis = kFnvOffsetBasis);

// Seed of the `index`-th sub-stream of `seed`.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index);

// Seed of a named pipeline stage.
std::uint64_t DeriveStageSeed(std::uint64_t master, std::string_view stage,
                              std::uint64_t index = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  double Uniform();
  std::size_t UniformIndex(std::size_t n);
  double Normal();

  // `count` distinct indices from [0, n), drawn uniformly without
  // replacement (partial Fisher-Yates), returned in ascending order.
  std::vector<std::size_t> SampleWithoutReplacement(std::size_t n,
                                                    std::size_t count);

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace fairscope

#endif  // FAIRSCOPE_RANDOM_H_
