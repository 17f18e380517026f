// Copyright 2026 The putbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PUTBOUND_RNG_H_
#define PUTBOUND_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

namespace putbound {

/// Seeded generator with platform-independent output. The engine is
/// std::mt19937_64 (bit-exact by the standard); every derived draw below is
/// built from raw 64-bit words with explicit arithmetic, never through
/// std::*_distribution, whose streams vary across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Index drawn from the pmf `weights` (not necessarily normalized) by
  /// inverse-CDF over the running total.
  std::size_t categorical(const std::vector<double>& weights);

  /// Point on the simplex of dimension `k`, Dirichlet(1,...,1): normalized
  /// standard exponentials -log(1-U).
  std::vector<double> simplex_point(std::size_t k);

 private:
  std::mt19937_64 engine_;
};

/// Stream seed for trial `index` under master `seed`: a splitmix64 scramble
/// of seed XOR (golden-ratio increment * (index + 1)). Distinct indices give
/// independent-looking streams and the derivation is scheduling-free.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace putbound

#endif  // PUTBOUND_RNG_H_
