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

#ifndef PUTBOUND_DEVIATION_H_
#define PUTBOUND_DEVIATION_H_

#include <cstddef>

namespace putbound {

/// The 1-beta confidence l1 radius for an empirical distribution on an
/// alphabet of product size d estimated from n samples:
///   value = sqrt((2/n) (d - ln beta)).
struct DeviationRadius {
  std::size_t n = 0;
  std::size_t d = 0;
  double beta = 0.0;
  double value = 0.0;
};

/// Throws InvalidBeta unless beta is in (0,1); requires n, d >= 1.
DeviationRadius deviation_radius(std::size_t n, std::size_t d, double beta);

/// Upper bound on Pr(||empirical - truth||_1 >= eps): exp(d - n eps^2 / 2).
/// May exceed 1, in which case the bound is vacuous.
double weissman_tail(std::size_t n, std::size_t d, double eps);

}  // namespace putbound

#endif  // PUTBOUND_DEVIATION_H_
