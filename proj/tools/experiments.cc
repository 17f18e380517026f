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

#include "experiments.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "putbound/bounds.h"
#include "putbound/csv.h"
#include "putbound/error.h"
#include "putbound/par.h"
#include "putbound/rng.h"
#include "putbound/sampling.h"

namespace putbound::tools {

namespace {

struct SplitPair {
  JointDistribution train;
  JointDistribution test;
};

// Fresh draws in synthetic mode; a seeded shuffle split in dataset mode.
SplitPair train_test_split(const ExperimentConfig& config, std::size_t n,
                           std::uint64_t trial_seed) {
  if (!config.dataset.has_value()) {
    return SplitPair{
        empirical(sample(config.truth, n, derive_seed(trial_seed, 1))),
        empirical(sample(config.truth, n, derive_seed(trial_seed, 2)))};
  }
  const SampleSet& data = *config.dataset;
  if (2 * n > data.pairs.size()) {
    throw_error(Errc::kInsufficientData,
                "need 2n = " + std::to_string(2 * n) + " records, have " +
                    std::to_string(data.pairs.size()));
  }
  std::vector<std::size_t> order(data.pairs.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(trial_seed, 3));
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(order[i - 1], order[std::min(j, i - 1)]);
  }
  auto take = [&](std::size_t begin) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(n);
    for (std::size_t k = begin; k < begin + n; ++k) {
      pairs.push_back(data.pairs[order[k]]);
    }
    return empirical(
        SampleSet(data.s_alphabet, data.x_alphabet, std::move(pairs)));
  };
  return SplitPair{take(0), take(n)};
}

}  // namespace

std::string run_discrepancy(const ExperimentConfig& config) {
  struct Row {
    std::size_t n = 0, trial = 0;
    bool infeasible = false;
    double delta_l = 0, delta_u = 0, bound_l = 0, bound_u = 0;
  };
  const std::size_t total = config.n_values.size() * config.trials;
  std::vector<Row> rows(total);

  parallel_for(total, [&](std::size_t job) {
    const std::size_t ni = job / config.trials;
    const std::size_t trial = job % config.trials;
    const std::size_t n = config.n_values[ni];
    Row& row = rows[job];
    row.n = n;
    row.trial = trial;
    const SplitPair split =
        train_test_split(config, n, derive_seed(config.seed, job));
    try {
      const DesignResult design =
          design_in_family(config.family, config.spec_l, config.spec_u,
                           split.train, config.eps);
      row.delta_l = std::abs(
          leakage(config.spec_l, split.test, design.mechanism).value -
          leakage(config.spec_l, split.train, design.mechanism).value);
      row.delta_u = std::abs(
          utility(config.spec_u, split.test, design.mechanism).value -
          utility(config.spec_u, split.train, design.mechanism).value);
      row.bound_l = 2.0 * discrepancy_bound(config.spec_l, Side::kPrivacy,
                                            split.train, n, config.beta)
                              .bound;
      row.bound_u = 2.0 * discrepancy_bound(config.spec_u, Side::kUtility,
                                            split.train, n, config.beta)
                              .bound;
    } catch (const Error& e) {
      if (e.code() != Errc::kInfeasible) throw;
      row.infeasible = true;
    }
  });

  std::ostringstream out;
  out << "n,trial,delta_l,delta_u,bound_l,bound_u,infeasible\n";
  for (const Row& r : rows) {
    out << r.n << ',' << r.trial << ',';
    if (r.infeasible) {
      out << ",,,,1\n";
    } else {
      out << csv_double(r.delta_l) << ',' << csv_double(r.delta_u) << ','
          << csv_double(r.bound_l) << ',' << csv_double(r.bound_u) << ",0\n";
    }
  }
  return out.str();
}

std::string run_convergence(const ExperimentConfig& config) {
  if (config.eps_grid.empty()) {
    throw_error(Errc::kInvalidParam, "convergence needs a sorted eps grid");
  }
  const LatticeSweep truth_sweep = brute_force_trade_off_multi(
      config.spec_l, config.spec_u, config.truth, config.eps_grid,
      config.grid_outputs, config.grid_step);
  // The optimum is typically a ridge; the distance target is its lattice
  // shadow at the lattice resolution, not the exact-tie argmax.
  const std::vector<Mechanism> truth_set = near_optimal_set(
      config.spec_l, config.spec_u, config.truth, config.eps,
      config.grid_outputs, config.grid_step, 2.0 * config.grid_step);

  struct Trial {
    std::vector<double> emp_values;  // NaN where infeasible
    double delta_n = 0.0;
    double dist = std::numeric_limits<double>::quiet_NaN();
  };
  const std::size_t total = config.n_values.size() * config.trials;
  std::vector<Trial> results(total);

  parallel_for(total, [&](std::size_t job) {
    const std::size_t ni = job / config.trials;
    const std::size_t n = config.n_values[ni];
    const JointDistribution emp =
        empirical(sample(config.truth, n, derive_seed(config.seed, job)));
    Trial& t = results[job];
    const LatticeSweep sweep = brute_force_trade_off_multi(
        config.spec_l, config.spec_u, emp, config.eps_grid,
        config.grid_outputs, config.grid_step);
    t.emp_values = sweep.values;
    // Largest signed gap H(emp) - H(truth) over the budgets where both
    // functions are defined.
    double best_abs = -1.0;
    for (std::size_t i = 0; i < config.eps_grid.size(); ++i) {
      if (std::isnan(sweep.values[i]) || std::isnan(truth_sweep.values[i])) {
        continue;
      }
      const double gap = sweep.values[i] - truth_sweep.values[i];
      if (std::abs(gap) > best_abs) {
        best_abs = std::abs(gap);
        t.delta_n = gap;
      }
    }
    try {
      const BruteForceResult emp_opt =
          brute_force_trade_off(config.spec_l, config.spec_u, emp, config.eps,
                        config.grid_outputs, config.grid_step);
      t.dist = dist_to_set(emp_opt.argmax.front(), truth_set);
    } catch (const Error& e) {
      if (e.code() != Errc::kInfeasible) throw;
    }
  });

  std::ostringstream out;
  out << "n,trial,eps,tradeoff_emp,tradeoff_true,infeasible,delta_n,dist\n";
  for (std::size_t job = 0; job < total; ++job) {
    const std::size_t ni = job / config.trials;
    const std::size_t trial = job % config.trials;
    const Trial& t = results[job];
    for (std::size_t i = 0; i < config.eps_grid.size(); ++i) {
      const bool row_infeasible =
          std::isnan(t.emp_values[i]) || std::isnan(truth_sweep.values[i]);
      out << config.n_values[ni] << ',' << trial << ','
          << csv_double(config.eps_grid[i]) << ',';
      if (!std::isnan(t.emp_values[i])) out << csv_double(t.emp_values[i]);
      out << ',';
      if (!std::isnan(truth_sweep.values[i])) {
        out << csv_double(truth_sweep.values[i]);
      }
      out << ',' << (row_infeasible ? 1 : 0) << ',' << csv_double(t.delta_n)
          << ',';
      if (!std::isnan(t.dist)) out << csv_double(t.dist);
      out << '\n';
    }
  }
  return out.str();
}

namespace {

// Lipschitz constant valid over the whole radius-r ball: margin-dependent
// measures get the worst marginal any member can have.
double ball_constant(const MeasureSpec& spec, Side side,
                     const JointDistribution& p_hat, double r) {
  BoundContext ctx{spec, side, p_hat.s_size(), p_hat.x_size(), std::nullopt};
  if (spec.kind == MeasureKind::kFInfo) {
    const std::vector<double> marg =
        side == Side::kPrivacy ? marginal_s(p_hat) : marginal_x(p_hat);
    const double floor = *std::min_element(marg.begin(), marg.end()) - r;
    if (floor <= 0.0) {
      throw_error(Errc::kInfeasibleShrunkBudget,
                  "ball reaches distributions with a vanishing marginal");
    }
    ctx.margin_floor = floor;
  }
  return lipschitz_constant(ctx);
}

// Detects the Bernoulli/BSC structure so the closed form can stand in
// for a lattice
// sweep of the trade-off curve.
std::optional<std::pair<double, double>> match_bernoulli_bsc(
    const JointDistribution& j) {
  if (j.s_size() != 2 || j.x_size() != 2) return std::nullopt;
  const double p = marginal_s(j)[1];
  if (p < 0.5 || p >= 1.0) return std::nullopt;
  const double q = j(0, 1) / (1.0 - p);
  if (q < 0.0 || q > 1.0 - p || p <= q) return std::nullopt;
  if (l1_distance(j, bernoulli_bsc_joint(p, q)) > 1e-9) return std::nullopt;
  return std::make_pair(p, q);
}

double trade_off_value(const ExperimentConfig& config, double eps) {
  if (config.spec_l.kind == MeasureKind::kPc &&
      config.spec_u.kind == MeasureKind::kPc) {
    if (const auto pq = match_bernoulli_bsc(config.truth)) {
      const auto [p, q] = *pq;
      if (eps >= p && eps <= 1.0 - q) {
        return pc_trade_off_closed_form(p, q, eps);
      }
    }
  }
  return brute_force_trade_off(config.spec_l, config.spec_u, config.truth, eps,
                       config.grid_outputs, config.grid_step)
      .max_utility;
}

}  // namespace

std::string run_uniform(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "r,shrunk_eps,max_leakage_in_ball,pass,utility_at_phat,"
         "worst_case_utility,gap_bound\n";
  for (std::size_t ri = 0; ri < config.r_values.size(); ++ri) {
    const double r = config.r_values[ri];
    const UniformDesignResult uni = uniform_design(
        config.spec_l, config.spec_u, config.truth, config.eps, r,
        config.family, config.ball_samples, derive_seed(config.seed, ri));
    const double util_at_phat =
        utility(config.spec_u, config.truth, uni.inner.mechanism).value;
    const double worst = worst_case_utility(
        config.spec_u, config.truth, uni.inner.mechanism, r,
        config.ball_samples, derive_seed(config.seed, 1000 + ri));
    const double c_u =
        ball_constant(config.spec_u, Side::kUtility, config.truth, r);
    const double gap =
        trade_off_value(config, config.eps + uni.c_l * r) -
        trade_off_value(config, config.eps - uni.c_l * r) + 2.0 * c_u * r;
    out << csv_double(r) << ',' << csv_double(uni.shrunk_epsilon) << ','
        << csv_double(uni.verification.max_leakage_in_ball) << ','
        << (uni.verification.pass ? 1 : 0) << ',' << csv_double(util_at_phat)
        << ',' << csv_double(worst) << ',' << csv_double(gap) << '\n';
  }
  return out.str();
}

}  // namespace putbound::tools
