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

// End-to-end verification of the library's numerical claims at desk scale.
// Each test prints one [criterion NN] PASS/FAIL line.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <vector>

#include "gtest/gtest.h"
#include "putbound/bounds.h"
#include "putbound/deviation.h"
#include "putbound/mechanisms.h"
#include "putbound/par.h"
#include "putbound/preprocess.h"
#include "putbound/rng.h"
#include "putbound/sampling.h"
#include "test_util.h"

namespace putbound {
namespace {

using testing::demo_joint;
using testing::joint_from_input_channel;
using testing::random_joint;
using testing::random_mechanism;

constexpr std::uint64_t kSeed = 20260101;

void report(int id, const char* name, bool ok) {
  std::printf("[criterion %02d] %-36s %s\n", id, name, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------
// 1. Lipschitz property sweeps across the five measure families: 1000
//    random triples per covered (measure, side), marginals >= 0.05, zero
//    violations at tolerance 1e-9.
TEST(Acceptance, Criterion01LipschitzSuites) {
  const char* names[] = {"pc",          "f:tv",       "f:chi2",
                         "f:hellinger(2)", "arimoto(2)", "arimoto(inf)",
                         "sibson(2)",   "sibson(inf)", "maxal(2)",
                         "maxal(inf)"};
  constexpr int kTrials = 1000;
  bool all_ok = true;
  for (const char* name : names) {
    const MeasureSpec spec = MeasureSpec::parse(name);
    for (Side side : {Side::kPrivacy, Side::kUtility}) {
      std::atomic<int> violations{0};
      parallel_for(kTrials, [&](std::size_t trial) {
        Rng rng(derive_seed(kSeed, trial));
        const JointDistribution q1 = random_joint(rng, 2, 3, 0.05);
        const JointDistribution q2 = random_joint(rng, 2, 3, 0.05);
        const Mechanism w = random_mechanism(rng, q1.x_alphabet(), 3);
        if (!certify_lipschitz(spec, side, q1, q2, w).ok) ++violations;
      });
      EXPECT_EQ(violations.load(), 0)
          << name << " " << side_name(side) << " violations";
      all_ok &= violations.load() == 0;
    }
  }
  report(1, "lipschitz sweeps, all measures", all_ok);
}

// ---------------------------------------------------------------------------
// 2. Order-infinity Arimoto information equals the log ratio of posterior
//    to prior guessing probability, to 1e-12, on 100 random joints.
TEST(Acceptance, Criterion02GuessingIdentity) {
  Rng rng(derive_seed(kSeed, 2));
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const JointDistribution j = random_joint(rng, 3, 3);
    const double lhs = arimoto_mi(j, kAlphaInf).value;
    const double rhs =
        std::log(pc_posterior(j).value / pc_prior(marginal_s(j)).value);
    EXPECT_NEAR(lhs, rhs, 1e-12);
    ok &= std::abs(lhs - rhs) <= 1e-12;
  }
  report(2, "arimoto(inf) = log(posterior/prior)", ok);
}

// ---------------------------------------------------------------------------
// 3. Maximal leakage of order infinity: the grid supremum over input laws
//    of order-infinity Arimoto information matches the production
//    Sibson-infinity path within 1e-9, on 100 random (Q, W).
TEST(Acceptance, Criterion03MaximalLeakageSup) {
  Rng rng(derive_seed(kSeed, 3));
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const JointDistribution q = random_joint(rng, 2, 3, 0.05);
    const Mechanism w = random_mechanism(rng, q.x_alphabet(), 3);
    const JointDistribution sy = push_forward(q, w).sy_joint;
    const std::vector<double> pu = marginal_s(sy);
    std::vector<std::vector<double>> k(2, std::vector<double>(sy.x_size()));
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t y = 0; y < sy.x_size(); ++y) {
        k[s][y] = sy(s, y) / pu[s];
      }
    }
    double grid_sup = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double p = static_cast<double>(i) / 1000.0;
      grid_sup = std::max(
          grid_sup,
          arimoto_mi(joint_from_input_channel({p, 1.0 - p}, k), kAlphaInf)
              .value);
    }
    const double got = max_alpha_leakage(q, w, kAlphaInf).value;
    EXPECT_NEAR(got, grid_sup, 1e-9);
    ok &= std::abs(got - grid_sup) <= 1e-9;
  }
  report(3, "maxal(inf) = sibson(inf) via grid sup", ok);
}

// ---------------------------------------------------------------------------
// 4. Deterministic-merge equality: I_f(X;Y0) = I_f(X0;Y0) through the
//    chain X -> X0 -> Y0, to 1e-12, on 100 random merge instances.
TEST(Acceptance, Criterion04MergeEquality) {
  Rng rng(derive_seed(kSeed, 4));
  const FGenerator gens[] = {FGenerator::total_variation(),
                             FGenerator::chi_squared(),
                             FGenerator::hellinger(2.0)};
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const JointDistribution q = random_joint(rng, 2, 4);
    const MergeResult merge = merge_rare_symbols(q, 0.2);
    const std::size_t nxg = merge.merged.x_size(), ny = 3;
    std::vector<std::vector<double>> w0(nxg);
    for (auto& row : w0) row = rng.simplex_point(ny);
    const std::vector<double> px = marginal_x(q);
    const std::vector<double> px0 = marginal_x(merge.merged);
    std::vector<double> x_y0(q.x_size() * ny), x0_y0(nxg * ny);
    for (std::size_t x = 0; x < q.x_size(); ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        x_y0[x * ny + y] = px[x] * w0[merge.map.apply(x)][y];
      }
    }
    for (std::size_t x0 = 0; x0 < nxg; ++x0) {
      for (std::size_t y = 0; y < ny; ++y) {
        x0_y0[x0 * ny + y] = px0[x0] * w0[x0][y];
      }
    }
    const JointDistribution jx(q.x_alphabet(), Alphabet::numbered(ny, "y"),
                               x_y0);
    const JointDistribution jx0(merge.merged.x_alphabet(),
                                Alphabet::numbered(ny, "y"), x0_y0);
    for (const FGenerator& g : gens) {
      const double gap = std::abs(f_information(jx, g).value -
                                  f_information(jx0, g).value);
      EXPECT_LE(gap, 1e-12) << g.name();
      ok &= gap <= 1e-12;
    }
  }
  report(4, "merge-channel f-information equality", ok);
}

// ---------------------------------------------------------------------------
// 5. Coverage of the deviation radius: over 2000 trials of 500 draws from
//    the demo joint, the radius at beta = 0.1 is exceeded in at most a
//    0.1 + 3 sqrt(0.09/2000) fraction of trials.
TEST(Acceptance, Criterion05RadiusCoverage) {
  const JointDistribution p = demo_joint();
  constexpr std::size_t kTrialCount = 2000, kN = 500;
  const double radius = deviation_radius(kN, 4, 0.1).value;
  std::atomic<int> exceed{0};
  parallel_for(kTrialCount, [&](std::size_t trial) {
    const JointDistribution emp =
        empirical(sample(p, kN, derive_seed(kSeed + 5, trial)));
    if (l1_distance(emp, p) >= radius) ++exceed;
  });
  const double fraction =
      static_cast<double>(exceed.load()) / static_cast<double>(kTrialCount);
  const double limit = 0.1 + 3.0 * std::sqrt(0.09 / 2000.0);
  EXPECT_LE(fraction, limit);
  std::printf("    exceedance %.4f vs limit %.4f\n", fraction, limit);
  report(5, "deviation-radius coverage", fraction <= limit);
}

// ---------------------------------------------------------------------------
// 6. Certificate validity: with the same sampling setup and random
//    randomized-response mechanisms, the realized per-measure discrepancy
//    exceeds its certificate in at most a beta + slack fraction of trials.
TEST(Acceptance, Criterion06CertificateValidity) {
  const JointDistribution p = demo_joint();
  constexpr std::size_t kTrialCount = 2000, kN = 500;
  const double beta = 0.1;
  const double limit = beta + 3.0 * std::sqrt(beta * (1.0 - beta) / 2000.0);
  const char* names[] = {"pc",        "f:tv",        "f:chi2",
                         "arimoto(2)", "arimoto(inf)", "sibson(2)",
                         "sibson(inf)", "maxal(2)",   "maxal(inf)"};
  bool all_ok = true;
  for (const char* name : names) {
    const MeasureSpec spec = MeasureSpec::parse(name);
    std::atomic<int> violations_l{0}, violations_u{0};
    parallel_for(kTrialCount, [&](std::size_t trial) {
      Rng rng(derive_seed(kSeed + 6, trial));
      const JointDistribution emp =
          empirical(sample(p, kN, rng.next_u64()));
      const Mechanism w = randomized_response(
          -std::log(rng.uniform(0.02, 1.0)), p.x_alphabet());
      const double dl = std::abs(leakage(spec, emp, w).value -
                                 leakage(spec, p, w).value);
      if (dl > discrepancy_bound(spec, Side::kPrivacy, emp, kN, beta).bound +
                   1e-12) {
        ++violations_l;
      }
      const double du = std::abs(utility(spec, emp, w).value -
                                 utility(spec, p, w).value);
      if (du > discrepancy_bound(spec, Side::kUtility, emp, kN, beta).bound +
                   1e-12) {
        ++violations_u;
      }
    });
    const double fl = violations_l / 2000.0, fu = violations_u / 2000.0;
    EXPECT_LE(fl, limit) << name << " privacy";
    EXPECT_LE(fu, limit) << name << " utility";
    all_ok &= fl <= limit && fu <= limit;
  }
  report(6, "certificate validity, random designs", all_ok);
}

// ---------------------------------------------------------------------------
// 7. Plug-in rate: the log-log slope of the median worst-case guessing
//    discrepancy over the randomized-response family sits in [-0.7, -0.3]
//    across n = 1e2..1e5.
TEST(Acceptance, Criterion07RootNRate) {
  const JointDistribution p = demo_joint();
  const MeasureSpec pc = MeasureSpec::pc();
  std::vector<Mechanism> family;
  for (int i = 0; i <= 20; ++i) {
    const double diag = 0.5 + 0.025 * i;
    family.push_back(Mechanism(
        p.x_alphabet(), {{diag, 1.0 - diag}, {1.0 - diag, diag}}));
  }
  std::vector<double> truth;
  truth.reserve(family.size());
  for (const Mechanism& w : family) truth.push_back(leakage(pc, p, w).value);

  const std::size_t ns[] = {100, 1000, 10000, 100000};
  std::vector<double> log_n, log_med;
  for (std::size_t ni = 0; ni < 4; ++ni) {
    std::vector<double> sup_gap(50);
    parallel_for(50, [&](std::size_t seed_idx) {
      const JointDistribution emp = empirical(
          sample(p, ns[ni], derive_seed(kSeed + 7, ni * 100 + seed_idx)));
      double sup = 0.0;
      for (std::size_t i = 0; i < family.size(); ++i) {
        sup = std::max(
            sup, std::abs(leakage(pc, emp, family[i]).value - truth[i]));
      }
      sup_gap[seed_idx] = sup;
    });
    log_n.push_back(std::log(static_cast<double>(ns[ni])));
    log_med.push_back(std::log(median(sup_gap)));
  }
  // Least-squares slope through the four points.
  double mx = 0, my = 0;
  for (int i = 0; i < 4; ++i) {
    mx += log_n[i] / 4.0;
    my += log_med[i] / 4.0;
  }
  double num = 0, den = 0;
  for (int i = 0; i < 4; ++i) {
    num += (log_n[i] - mx) * (log_med[i] - my);
    den += (log_n[i] - mx) * (log_n[i] - mx);
  }
  const double slope = num / den;
  std::printf("    log-log slope %.4f\n", slope);
  EXPECT_GE(slope, -0.7);
  EXPECT_LE(slope, -0.3);
  report(7, "O(1/sqrt(n)) discrepancy rate", slope >= -0.7 && slope <= -0.3);
}

// ---------------------------------------------------------------------------
// 8. Lattice oracle vs closed form: the exhaustive trade-off value for
//    the (p, q) = (0.6, 0.2) Bernoulli/BSC instance matches the affine
//    closed form within 0.02 at five
//    budgets (N = 3, step = 0.01).
TEST(Acceptance, Criterion08ClosedFormAgreement) {
  const JointDistribution q = bernoulli_bsc_joint(0.6, 0.2);
  const MeasureSpec pc = MeasureSpec::pc();
  const std::vector<double> budgets{0.60, 0.65, 0.70, 0.75, 0.80};
  const LatticeSweep sweep =
      brute_force_trade_off_multi(pc, pc, q, budgets, 3, 0.01);
  bool ok = true;
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const double want = pc_trade_off_closed_form(0.6, 0.2, budgets[i]);
    ASSERT_FALSE(std::isnan(sweep.values[i]));
    EXPECT_NEAR(sweep.values[i], want, 0.02) << budgets[i];
    ok &= std::abs(sweep.values[i] - want) <= 0.02;
  }
  report(8, "example-2 closed form vs lattice", ok);
}

// ---------------------------------------------------------------------------
// 9. Uniform designs: shrunk-budget mechanisms keep leakage within eps on
//    every ball sample, and their utility trails the brute-force uniform
//    proxy by at most the budget-shrinking gap bound plus lattice
//    tolerance.
TEST(Acceptance, Criterion09UniformDesigns) {
  const MeasureSpec pc = MeasureSpec::pc();
  bool ok = true;

  // Demo instance: eps = 0.68, r = 0.02.
  const JointDistribution q_demo = demo_joint();
  const UniformDesignResult uni_demo = uniform_design(
      pc, pc, q_demo, 0.68, 0.02, FamilySpec::rr(), 500,
      derive_seed(kSeed, 90));
  EXPECT_TRUE(uni_demo.verification.pass);
  ok &= uni_demo.verification.pass;

  // Bernoulli/BSC instance across three radii.
  const JointDistribution q_bsc = bernoulli_bsc_joint(0.6, 0.2);
  for (double r : {0.01, 0.02, 0.05}) {
    const UniformDesignResult uni = uniform_design(
        pc, pc, q_bsc, 0.75, r, FamilySpec::rr(), 500,
        derive_seed(kSeed, 91));
    EXPECT_TRUE(uni.verification.pass) << r;
    ok &= uni.verification.pass;
  }

  // Utility-gap inequality against the brute-force uniform proxy, with
  // p_hat playing the role of the (in-ball) true distribution.
  struct GapCase {
    const JointDistribution* p_hat;
    double eps, r;
  };
  const GapCase cases[] = {{&q_demo, 0.68, 0.02}, {&q_bsc, 0.75, 0.02}};
  for (const GapCase& c : cases) {
    const double shrunk = c.eps - c.r;  // C_L = 1 for guessing probability
    const Mechanism w_star =
        brute_force_trade_off(pc, pc, *c.p_hat, shrunk, 2, 0.01).argmax.front();
    const Mechanism w_dagger =
        brute_force_uniform(pc, pc, *c.p_hat, c.eps, c.r, 2, 0.01, 500,
                            derive_seed(kSeed, 92));
    const double u_star = utility(pc, *c.p_hat, w_star).value;
    const double u_dagger = utility(pc, *c.p_hat, w_dagger).value;
    const double h_hi =
        brute_force_trade_off(pc, pc, *c.p_hat, c.eps + c.r, 2, 0.01)
            .max_utility;
    const double h_lo =
        brute_force_trade_off(pc, pc, *c.p_hat, c.eps - c.r, 2, 0.01)
            .max_utility;
    const double gap_bound = h_hi - h_lo + 2.0 * c.r;
    EXPECT_LE(u_dagger - u_star, gap_bound + 0.02);
    ok &= (u_dagger - u_star) <= gap_bound + 0.02;
  }
  report(9, "uniform designs and gap bound", ok);
}

// ---------------------------------------------------------------------------
// 10. Merging never helps the trade-off: merged <= raw + 0.02 on five
//     randomized 2x3 instances with a rare symbol, chi-squared both sides.
TEST(Acceptance, Criterion10MergeTradeOff) {
  Rng rng(derive_seed(kSeed, 10));
  bool ok = true;
  for (int instance = 0; instance < 5; ++instance) {
    // Random 2x3 joint whose third column is rare (X-marginal ~ 0.04).
    std::vector<double> mass = rng.simplex_point(4);
    const double rare = 0.04;
    for (double& v : mass) v *= (1.0 - rare);
    const double split = rng.uniform();
    const JointDistribution q(
        Alphabet::numbered(2), Alphabet::numbered(3),
        {{mass[0], mass[1], rare * split}, {mass[2], mass[3],
                                            rare * (1.0 - split)}});
    const MergeTradeOffCheck check =
        check_merge_tradeoff(FGenerator::chi_squared(), q, 0.1, 0.05, 3,
                             0.05, 0.02);
    EXPECT_TRUE(check.ok) << "instance " << instance << ": merged "
                          << check.merged_value << " raw " << check.raw_value;
    ok &= check.ok;
  }
  report(10, "pre-processing trade-off monotonicity", ok);
}

// ---------------------------------------------------------------------------
// 11. Convergence trends on the chi-squared demo instance: the median sup
//     gap |Delta_n| and the median distance to the optimal set both
//     strictly decrease across n = 1e2, 1e3, 1e4 (20 seeds), with the
//     distance at n = 1e4 within twice the lattice step.
TEST(Acceptance, Criterion11ConvergenceTrends) {
  const JointDistribution p = demo_joint();
  const MeasureSpec chi2 = MeasureSpec::parse("f:chi2");
  const double eps_star = 0.05, step = 0.01;
  std::vector<double> eps_grid;
  for (int i = 0; i <= 10; ++i) eps_grid.push_back(0.01 * i);

  const LatticeSweep truth_sweep =
      brute_force_trade_off_multi(chi2, chi2, p, eps_grid, 2, step);
  const std::vector<Mechanism> truth_set =
      near_optimal_set(chi2, chi2, p, eps_star, 2, step, 2.0 * step);

  const std::size_t ns[] = {100, 1000, 10000};
  std::vector<double> med_gap, med_dist;
  for (std::size_t ni = 0; ni < 3; ++ni) {
    std::vector<double> gaps(20), dists(20);
    parallel_for(20, [&](std::size_t seed_idx) {
      const JointDistribution emp = empirical(sample(
          p, ns[ni], derive_seed(kSeed + 11, ni * 100 + seed_idx)));
      const LatticeSweep sweep =
          brute_force_trade_off_multi(chi2, chi2, emp, eps_grid, 2, step);
      double sup = 0.0;
      for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (std::isnan(sweep.values[i]) ||
            std::isnan(truth_sweep.values[i])) {
          continue;
        }
        sup = std::max(sup, std::abs(sweep.values[i] - truth_sweep.values[i]));
      }
      gaps[seed_idx] = sup;
      const Mechanism w_star =
          brute_force_trade_off(chi2, chi2, emp, eps_star, 2, step)
              .argmax.front();
      dists[seed_idx] = dist_to_set(w_star, truth_set);
    });
    med_gap.push_back(median(gaps));
    med_dist.push_back(median(dists));
  }
  std::printf("    median |Delta_n|: %.4f %.4f %.4f\n", med_gap[0],
              med_gap[1], med_gap[2]);
  std::printf("    median dist:      %.4f %.4f %.4f\n", med_dist[0],
              med_dist[1], med_dist[2]);
  bool ok = med_gap[0] > med_gap[1] && med_gap[1] > med_gap[2];
  ok &= med_dist[0] > med_dist[1] && med_dist[1] > med_dist[2];
  ok &= med_dist[2] <= 2.0 * step + 1e-12;
  EXPECT_GT(med_gap[0], med_gap[1]);
  EXPECT_GT(med_gap[1], med_gap[2]);
  EXPECT_GT(med_dist[0], med_dist[1]);
  EXPECT_GT(med_dist[1], med_dist[2]);
  EXPECT_LE(med_dist[2], 2.0 * step + 1e-12);
  report(11, "convergence of H and optimal sets", ok);
}

// ---------------------------------------------------------------------------
// 12. The smallest achievable leakage is realized exactly by the constant
//     channel, for every covered measure, on 100 random distributions.
TEST(Acceptance, Criterion12EpsilonMinExactness) {
  Rng rng(derive_seed(kSeed, 12));
  const char* names[] = {"pc",          "f:tv",        "f:chi2",
                         "f:hellinger(2)", "arimoto(2)", "arimoto(inf)",
                         "sibson(2)",   "sibson(inf)", "maxal(2)",
                         "maxal(inf)",  "shannon"};
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const JointDistribution q = random_joint(rng, 2, 3);
    const Mechanism constant = constant_channel(q.x_alphabet());
    for (const char* name : names) {
      const MeasureSpec spec = MeasureSpec::parse(name);
      const double at_constant = leakage(spec, q, constant).value;
      const double floor = epsilon_min(spec, q);
      EXPECT_NEAR(at_constant, floor, 1e-12) << name;
      ok &= std::abs(at_constant - floor) <= 1e-12;
      if (spec.kind == MeasureKind::kPc) {
        const std::vector<double> ms = marginal_s(q);
        const double want = *std::max_element(ms.begin(), ms.end());
        EXPECT_NEAR(floor, want, 1e-15);
        ok &= std::abs(floor - want) <= 1e-15;
      }
    }
  }
  report(12, "epsilon_min realized by constant channel", ok);
}

}  // namespace
}  // namespace putbound
