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

#include "putbound/rng.h"

#include <cmath>

#include "putbound/error.h"

namespace putbound {

std::size_t Rng::categorical(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) {
    throw_error(Errc::kInvalidParam, "categorical draw from zero total mass");
  }
  const double u = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return weights.size() - 1;  // guards against accumulated rounding
}

std::vector<double> Rng::simplex_point(std::size_t k) {
  std::vector<double> e(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    e[i] = -std::log1p(-uniform());
    total += e[i];
  }
  if (total <= 0.0) total = 1.0;
  for (double& v : e) v /= total;
  return e;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace putbound
