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

#include "putbound/deviation.h"

#include <cmath>

#include "putbound/error.h"

namespace putbound {

DeviationRadius deviation_radius(std::size_t n, std::size_t d, double beta) {
  if (n < 1 || d < 1) {
    throw_error(Errc::kInvalidParam, "n and d must be at least 1");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw_error(Errc::kInvalidBeta, "beta must lie in (0,1)");
  }
  const double value = std::sqrt(
      (2.0 / static_cast<double>(n)) * (static_cast<double>(d) -
                                        std::log(beta)));
  return DeviationRadius{n, d, beta, value};
}

double weissman_tail(std::size_t n, std::size_t d, double eps) {
  if (eps < 0.0) throw_error(Errc::kInvalidParam, "eps must be nonnegative");
  return std::exp(static_cast<double>(d) -
                  static_cast<double>(n) * eps * eps / 2.0);
}

}  // namespace putbound
