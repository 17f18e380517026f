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

#ifndef PUTBOUND_TOOLS_EXPERIMENTS_H_
#define PUTBOUND_TOOLS_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "putbound/mechanisms.h"
#include "putbound/prob.h"

namespace putbound::tools {

struct ExperimentConfig {
  JointDistribution truth;
  MeasureSpec spec_l;
  MeasureSpec spec_u;
  FamilySpec family;
  std::vector<std::size_t> n_values;
  double beta = 0.1;
  double eps = 0.65;
  std::vector<double> eps_grid;
  std::vector<double> r_values;
  std::size_t grid_outputs = 2;
  double grid_step = 0.01;
  std::size_t ball_samples = 500;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  /// Dataset mode: train/test splits come from these samples instead of
  /// fresh draws from `truth`.
  std::optional<SampleSet> dataset;
};

/// Train/design/test discrepancies against twice the certificate bound.
/// Rows: n, trial, delta_l, delta_u, bound_l, bound_u.
std::string run_discrepancy(const ExperimentConfig& config);

/// Empirical vs true privacy-utility function and optimal-set distance.
/// Rows: n, trial, eps, tradeoff_emp, tradeoff_true, infeasible, delta_n,
/// dist.
std::string run_convergence(const ExperimentConfig& config);

/// Shrunk-budget uniform designs with ball verification and the
/// utility-gap bound. Rows: r, shrunk_eps, max_leakage_in_ball, pass,
/// utility_at_phat, worst_case_utility, gap_bound.
std::string run_uniform(const ExperimentConfig& config);

}  // namespace putbound::tools

#endif  // PUTBOUND_TOOLS_EXPERIMENTS_H_
