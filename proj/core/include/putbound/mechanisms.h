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

#ifndef PUTBOUND_MECHANISMS_H_
#define PUTBOUND_MECHANISMS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "putbound/measure.h"
#include "putbound/prob.h"
#include "putbound/sampling.h"

namespace putbound {

/// Randomized response on X: keeps the symbol with probability
/// e^rho / (e^rho + |X| - 1), otherwise flips to one of the others
/// uniformly. rho = 0 is uniform noise; rho -> inf approaches identity.
Mechanism randomized_response(double rho, const Alphabet& x_alphabet);

/// Absorbing channel: symbol xbar maps to itself; every other symbol stays
/// put with probability 1 - zeta and falls into xbar with probability zeta.
/// For |X| = 2 these are the Z-channels.
Mechanism z_channel(std::size_t xbar, double zeta, const Alphabet& x_alphabet);

/// Single-output channel: the release carries no information at all.
Mechanism constant_channel(const Alphabet& x_alphabet);

/// y = x, the utility-maximal (and most leaky) release.
Mechanism identity_channel(const Alphabet& x_alphabet);

/// One-parameter families searched by design_in_family, or the exhaustive
/// lattice of row-stochastic matrices used as the desk-scale oracle.
struct FamilySpec {
  enum class Kind { kRandomizedResponse, kZChannel, kFullGrid };
  Kind kind = Kind::kRandomizedResponse;
  std::optional<std::size_t> xbar;  // z-channel: pin the absorbing symbol
  std::size_t n_outputs = 0;        // full grid
  double step = 0.0;                // full grid

  static FamilySpec rr() { return {Kind::kRandomizedResponse, {}, 0, 0.0}; }
  static FamilySpec z(std::optional<std::size_t> xbar = std::nullopt) {
    return {Kind::kZChannel, xbar, 0, 0.0};
  }
  static FamilySpec grid(std::size_t n_outputs, double step) {
    return {Kind::kFullGrid, {}, n_outputs, step};
  }
  std::string str() const;
};

/// Smallest achievable leakage over all mechanisms: the largest S-marginal
/// for probability of correctly guessing (already achieved by a constant
/// release), zero for every other covered measure.
double epsilon_min(const MeasureSpec& spec, const JointDistribution& q);

struct DesignResult {
  Mechanism mechanism;
  double epsilon = 0.0;
  double achieved_leakage = 0.0;
  double achieved_utility = 0.0;
  FamilySpec family;
  std::string method;
};

/// Utility-maximal member of the family subject to leakage <= eps on Q:
/// a 201-point parameter grid followed by golden-section refinement and a
/// bisection of the leakage boundary, to parameter tolerance 1e-6. The
/// Z-channel family without a pinned xbar loops over absorbing symbols.
/// Throws Infeasible when even the family's most private member leaks more
/// than eps. Sibson and maximal alpha-leakage are bound-only measures here
/// and are rejected.
DesignResult design_in_family(const FamilySpec& family,
                              const MeasureSpec& spec_l,
                              const MeasureSpec& spec_u,
                              const JointDistribution& q, double eps);

struct BruteForceResult {
  double max_utility = 0.0;
  /// Lattice mechanisms within 1e-9 of the maximum, in lattice order
  /// (lexicographic over the flattened matrix); capped at kMaxTies.
  std::vector<Mechanism> argmax;
  bool argmax_truncated = false;

  static constexpr std::size_t kMaxTies = 10000;
};

/// Exhaustive privacy-utility function over the lattice of |X| x N
/// row-stochastic matrices with entries on a step grid. Complexity guard:
/// |X| <= 3, N <= 4, step >= 0.01. Throws Infeasible when no lattice
/// mechanism satisfies the leakage budget (never when eps >= epsilon_min,
/// since the constant channel sits on every lattice).
BruteForceResult brute_force_trade_off(const MeasureSpec& spec_l,
                                       const MeasureSpec& spec_u,
                                       const JointDistribution& q, double eps,
                                       std::size_t n_outputs, double step);

/// All lattice mechanisms with leakage within eps and utility within
/// `tolerance` of the lattice maximum. With tolerance = 2 * step this is
/// the lattice shadow of the optimal set: the continuum optimum is often a
/// ridge along which exact lattice utilities spread far wider than any tie
/// threshold, so set-distance experiments compare against this band.
std::vector<Mechanism> near_optimal_set(const MeasureSpec& spec_l,
                                        const MeasureSpec& spec_u,
                                        const JointDistribution& q, double eps,
                                        std::size_t n_outputs, double step,
                                        double tolerance);

/// One lattice sweep evaluated against many budgets at once; entries of
/// `h` are NaN where the feasible set is empty. `eps_list` must be sorted.
struct LatticeSweep {
  std::vector<double> values;
  std::vector<std::optional<Mechanism>> argmax;  // first argmax per budget
};
LatticeSweep brute_force_trade_off_multi(
    const MeasureSpec& spec_l, const MeasureSpec& spec_u,
    const JointDistribution& q, const std::vector<double>& eps_list,
    std::size_t n_outputs, double step);

/// Closed form of the probability-of-correctly-guessing trade-off for the
/// Bernoulli(p) source observed through a binary symmetric channel of
/// crossover q:
///   H(eps) = 1 - (1-q)(p+q-2pq)/(p-q) + eps (p+q-2pq)/(p-q),
/// valid for p in [1/2,1], q in [0,1-p], p > q, eps in [p, 1-q].
double pc_trade_off_closed_form(double p, double q, double eps);

/// The Bernoulli/BSC joint: rows ((1-p)(1-q), (1-p)q ; pq, p(1-q)).
JointDistribution bernoulli_bsc_joint(double p, double q);

struct UniformDesignResult {
  DesignResult inner;
  double r = 0.0;
  double c_l = 0.0;
  double shrunk_epsilon = 0.0;  // eps - c_l * r
  struct Verification {
    std::size_t samples_checked = 0;
    double max_leakage_in_ball = 0.0;
    bool pass = false;
  } verification;
};

/// Designs at the shrunk budget eps - C_L r, so the result leaks at most
/// eps for every distribution within l1 distance r of p_hat; then verifies
/// that claim on a Monte-Carlo ball sample. C_L is the privacy-side
/// constant evaluated with the worst marginal over the ball,
/// (min empirical S-marginal - r)_+, when the measure needs one. Throws
/// InfeasibleShrunkBudget when that margin vanishes or the shrunk budget
/// falls below epsilon_min.
UniformDesignResult uniform_design(const MeasureSpec& spec_l,
                                   const MeasureSpec& spec_u,
                                   const JointDistribution& p_hat, double eps,
                                   double r, const FamilySpec& family,
                                   std::size_t ball_samples = 500,
                                   std::uint64_t seed = 0,
                                   const BallConstraint& constraint = {});

/// Monte-Carlo estimate of min utility over the radius-r ball around p_hat
/// (center included, so the value never exceeds the utility at p_hat).
double worst_case_utility(const MeasureSpec& spec_u,
                          const JointDistribution& p_hat, const Mechanism& w,
                          double r, std::size_t m, std::uint64_t seed);

/// Grid proxy for an optimal uniform mechanism: among lattice mechanisms
/// whose worst ball leakage stays within eps, the one with the best worst
/// ball utility. Ties resolve to the first in lattice order. Throws
/// EmptyFeasibleSet when no lattice mechanism passes the ball check.
Mechanism brute_force_uniform(const MeasureSpec& spec_l,
                              const MeasureSpec& spec_u,
                              const JointDistribution& p_hat, double eps,
                              double r, std::size_t n_outputs, double step,
                              std::size_t m, std::uint64_t seed);

/// min over the set of the entrywise l1 distance; EmptySet when empty.
double dist_to_set(const Mechanism& w, const std::vector<Mechanism>& set);

std::string to_json(const DesignResult& result);
std::string to_json(const UniformDesignResult& result);

}  // namespace putbound

#endif  // PUTBOUND_MECHANISMS_H_
