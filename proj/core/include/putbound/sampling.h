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

#ifndef PUTBOUND_SAMPLING_H_
#define PUTBOUND_SAMPLING_H_

#include <cstdint>
#include <vector>

#include "putbound/prob.h"

namespace putbound {

/// n i.i.d. draws from Q with the seeded generator of rng.h. The same seed
/// always yields the same SampleSet, on every platform.
SampleSet sample(const JointDistribution& q, std::size_t n,
                 std::uint64_t seed);

/// Feasible region for ball sampling: the whole simplex, or its subset with
/// every S- and X-marginal at least `gamma`.
struct BallConstraint {
  enum class Kind { kSimplex, kMarginFloor };
  Kind kind = Kind::kSimplex;
  double gamma = 0.0;

  static BallConstraint simplex() { return {}; }
  static BallConstraint margin_floor(double gamma) {
    return {Kind::kMarginFloor, gamma};
  }
};

/// m distributions inside the l1 ball of radius r around `center`, all
/// satisfying `constraint`. The list starts with the center (when feasible),
/// followed by deterministic boundary probes along +-coordinate-pair
/// directions at distance exactly r where the geometry allows, then random
/// points: Dirichlet targets pulled toward the center until both the ball
/// and the constraint hold. Throws InfeasibleConstraint when no feasible
/// point can be exhibited inside the ball.
std::vector<JointDistribution> sample_ball(const JointDistribution& center,
                                           double r,
                                           const BallConstraint& constraint,
                                           std::size_t m, std::uint64_t seed);

}  // namespace putbound

#endif  // PUTBOUND_SAMPLING_H_
