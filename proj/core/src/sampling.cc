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

#include "putbound/sampling.h"

#include <algorithm>
#include <cmath>

#include "putbound/error.h"
#include "putbound/rng.h"

namespace putbound {

SampleSet sample(const JointDistribution& q, std::size_t n,
                 std::uint64_t seed) {
  if (n == 0) {
    throw_error(Errc::kInvalidParam, "sample size must be positive");
  }
  std::vector<double> cdf(q.mass().size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += q.mass()[i];
    cdf[i] = acc;
  }
  Rng rng(seed);
  const std::size_t nx = q.x_size();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.uniform() * acc;
    std::size_t cell =
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (cell >= cdf.size()) cell = cdf.size() - 1;
    pairs.emplace_back(static_cast<std::uint32_t>(cell / nx),
                       static_cast<std::uint32_t>(cell % nx));
  }
  return SampleSet(q.s_alphabet(), q.x_alphabet(), std::move(pairs));
}

namespace {

constexpr double kFeasTol = 1e-12;

bool satisfies(const std::vector<double>& mass, std::size_t ns, std::size_t nx,
               const BallConstraint& c) {
  if (c.kind == BallConstraint::Kind::kSimplex) return true;
  for (std::size_t s = 0; s < ns; ++s) {
    double m = 0.0;
    for (std::size_t x = 0; x < nx; ++x) m += mass[s * nx + x];
    if (m < c.gamma - kFeasTol) return false;
  }
  for (std::size_t x = 0; x < nx; ++x) {
    double m = 0.0;
    for (std::size_t s = 0; s < ns; ++s) m += mass[s * nx + x];
    if (m < c.gamma - kFeasTol) return false;
  }
  return true;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

std::vector<double> lerp(const std::vector<double>& a,
                         const std::vector<double>& b, double t) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + t * (b[i] - a[i]);
  }
  return out;
}

// Largest t in [0,1] with ||lerp(base, target, t) - center||_1 <= r. The
// distance is convex in t and equals ||base - center||_1 <= r at t = 0.
double max_step_in_ball(const std::vector<double>& base,
                        const std::vector<double>& target,
                        const std::vector<double>& center, double r) {
  if (l1(lerp(base, target, 1.0), center) <= r) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (l1(lerp(base, target, mid), center) <= r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Largest t in [0,1] keeping every marginal of lerp(base, target, t) at or
// above gamma; base is assumed feasible, marginals are affine in t.
double max_step_in_constraint(const std::vector<double>& marg_base,
                              const std::vector<double>& marg_target,
                              double gamma, double t_so_far) {
  double t = t_so_far;
  for (std::size_t k = 0; k < marg_base.size(); ++k) {
    const double slope = marg_target[k] - marg_base[k];
    if (slope < 0.0) {
      t = std::min(t, (marg_base[k] - gamma) / -slope);
    }
  }
  return std::max(0.0, t);
}

std::vector<double> marg_rows(const std::vector<double>& mass, std::size_t ns,
                              std::size_t nx) {
  std::vector<double> m(ns, 0.0);
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t x = 0; x < nx; ++x) m[s] += mass[s * nx + x];
  return m;
}

std::vector<double> marg_cols(const std::vector<double>& mass, std::size_t ns,
                              std::size_t nx) {
  std::vector<double> m(nx, 0.0);
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t x = 0; x < nx; ++x) m[x] += mass[s * nx + x];
  return m;
}

}  // namespace

std::vector<JointDistribution> sample_ball(const JointDistribution& center,
                                           double r,
                                           const BallConstraint& constraint,
                                           std::size_t m, std::uint64_t seed) {
  if (r < 0.0) throw_error(Errc::kInvalidParam, "negative ball radius");
  const std::size_t ns = center.s_size(), nx = center.x_size();
  const std::size_t d = ns * nx;
  const std::vector<double>& c = center.mass();

  if (constraint.kind == BallConstraint::Kind::kMarginFloor &&
      (constraint.gamma * static_cast<double>(ns) > 1.0 + kFeasTol ||
       constraint.gamma * static_cast<double>(nx) > 1.0 + kFeasTol)) {
    throw_error(Errc::kInfeasibleConstraint,
                "margin floor exceeds 1/|S| or 1/|X|");
  }

  // Base point: the center when feasible, otherwise the center mixed toward
  // the uniform joint just enough to lift every deficient marginal to gamma.
  std::vector<double> base = c;
  bool center_feasible = satisfies(c, ns, nx, constraint);
  if (!center_feasible) {
    const double g = constraint.gamma;
    const std::vector<double> ms = marg_rows(c, ns, nx);
    const std::vector<double> mx = marg_cols(c, ns, nx);
    double lambda = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      const double u = 1.0 / static_cast<double>(ns);
      if (ms[s] < g) lambda = std::max(lambda, (g - ms[s]) / (u - ms[s]));
    }
    for (std::size_t x = 0; x < nx; ++x) {
      const double u = 1.0 / static_cast<double>(nx);
      if (mx[x] < g) lambda = std::max(lambda, (g - mx[x]) / (u - mx[x]));
    }
    const double cell = 1.0 / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) {
      base[i] = (1.0 - lambda) * c[i] + lambda * cell;
    }
    if (l1(base, c) > r + kFeasTol || !satisfies(base, ns, nx, constraint)) {
      throw_error(Errc::kInfeasibleConstraint,
                  "no feasible point found inside the ball");
    }
  }

  std::vector<std::vector<double>> points;
  points.push_back(base);

  // Deterministic boundary probes: move mass t from cell j to cell i, with
  // t capped by r/2, by the donor mass, and by the margin floor. Distance
  // from the center is exactly 2t.
  if (center_feasible && r > 0.0) {
    const double g = constraint.gamma;
    const std::vector<double> ms = marg_rows(c, ns, nx);
    const std::vector<double> mx = marg_cols(c, ns, nx);
    for (std::size_t i = 0; i < d && points.size() < m; ++i) {
      for (std::size_t j = 0; j < d && points.size() < m; ++j) {
        if (i == j) continue;
        const std::size_t si = i / nx, xi = i % nx;
        const std::size_t sj = j / nx, xj = j % nx;
        double t = std::min(r / 2.0, c[j]);
        t = std::min(t, 1.0 - c[i]);
        if (constraint.kind == BallConstraint::Kind::kMarginFloor) {
          if (si != sj) t = std::min(t, ms[sj] - g);
          if (xi != xj) t = std::min(t, mx[xj] - g);
        }
        if (t <= 1e-15) continue;
        std::vector<double> probe = c;
        probe[i] += t;
        probe[j] -= t;
        points.push_back(std::move(probe));
      }
    }
  }

  // Random interior/boundary points: pull a Dirichlet target toward the
  // base until both the ball and the constraint hold.
  Rng rng(seed);
  const std::vector<double> marg_base_s = marg_rows(base, ns, nx);
  const std::vector<double> marg_base_x = marg_cols(base, ns, nx);
  while (points.size() < m) {
    const std::vector<double> target = rng.simplex_point(d);
    double t_max = max_step_in_ball(base, target, c, r);
    if (constraint.kind == BallConstraint::Kind::kMarginFloor) {
      t_max = max_step_in_constraint(marg_base_s,
                                     marg_rows(target, ns, nx),
                                     constraint.gamma, t_max);
      t_max = max_step_in_constraint(marg_base_x,
                                     marg_cols(target, ns, nx),
                                     constraint.gamma, t_max);
    }
    points.push_back(lerp(base, target, t_max * rng.uniform()));
  }

  std::vector<JointDistribution> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.emplace_back(center.s_alphabet(), center.x_alphabet(),
                     std::move(points[k]));
  }
  return out;
}

}  // namespace putbound
