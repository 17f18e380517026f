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

#include "putbound/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "json.hpp"
#include "putbound/bounds.h"
#include "putbound/error.h"

namespace putbound {

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kParamTol = 1e-6;
constexpr std::size_t kCoarseGridPoints = 201;

void check_design_measure(const MeasureSpec& spec) {
  if (spec.kind == MeasureKind::kSibson ||
      spec.kind == MeasureKind::kMaxAlpha) {
    throw_error(Errc::kUnsupportedMeasure,
                "mechanism design covers pc, f-information, arimoto and "
                "shannon; '" + spec.str() + "' is bound-only");
  }
}

// sy(s,y) = sum_x q(s,x) w(x,y) into a caller-owned buffer.
void compose_sy(const JointDistribution& q, const double* w, std::size_t ny,
                double* sy) {
  const std::size_t ns = q.s_size(), nx = q.x_size();
  std::fill(sy, sy + ns * ny, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t x = 0; x < nx; ++x) {
      const double qsx = q(s, x);
      if (qsx == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) {
        sy[s * ny + y] += qsx * w[x * ny + y];
      }
    }
  }
}

void compose_xy(const std::vector<double>& px, const double* w, std::size_t ny,
                double* xy) {
  for (std::size_t x = 0; x < px.size(); ++x) {
    for (std::size_t y = 0; y < ny; ++y) xy[x * ny + y] = px[x] * w[x * ny + y];
  }
}

double leak_on_buffers(const MeasureSpec& spec_l, const JointDistribution& q,
                       const double* w, std::size_t ny,
                       std::vector<double>& sy_buf) {
  compose_sy(q, w, ny, sy_buf.data());
  return measure_on_buffer(spec_l, sy_buf.data(), q.s_size(), ny);
}

}  // namespace

Mechanism randomized_response(double rho, const Alphabet& x_alphabet) {
  if (rho < 0.0 || std::isnan(rho)) {
    throw_error(Errc::kInvalidParam, "randomized response needs rho >= 0");
  }
  const std::size_t k = x_alphabet.size();
  const double denom = std::exp(rho) + static_cast<double>(k) - 1.0;
  const double keep = std::isinf(rho) ? 1.0 : std::exp(rho) / denom;
  const double flip =
      std::isinf(rho) ? 0.0 : 1.0 / denom;
  std::vector<double> rows(k * k, flip);
  for (std::size_t x = 0; x < k; ++x) rows[x * k + x] = keep;
  return Mechanism(x_alphabet, k, std::move(rows));
}

Mechanism z_channel(std::size_t xbar, double zeta, const Alphabet& x_alphabet) {
  const std::size_t k = x_alphabet.size();
  if (xbar >= k) throw_error(Errc::kInvalidParam, "xbar outside alphabet");
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw_error(Errc::kInvalidParam, "zeta must lie in [0,1]");
  }
  std::vector<double> rows(k * k, 0.0);
  for (std::size_t x = 0; x < k; ++x) {
    if (x == xbar) {
      rows[x * k + x] = 1.0;
    } else {
      rows[x * k + x] = 1.0 - zeta;
      rows[x * k + xbar] = zeta;
    }
  }
  return Mechanism(x_alphabet, k, std::move(rows));
}

Mechanism constant_channel(const Alphabet& x_alphabet) {
  return Mechanism(x_alphabet, 1,
                   std::vector<double>(x_alphabet.size(), 1.0));
}

Mechanism identity_channel(const Alphabet& x_alphabet) {
  const std::size_t k = x_alphabet.size();
  std::vector<double> rows(k * k, 0.0);
  for (std::size_t x = 0; x < k; ++x) rows[x * k + x] = 1.0;
  return Mechanism(x_alphabet, k, std::move(rows));
}

std::string FamilySpec::str() const {
  switch (kind) {
    case Kind::kRandomizedResponse:
      return "rr";
    case Kind::kZChannel:
      return xbar ? "z(xbar=" + std::to_string(*xbar) + ")" : "z";
    case Kind::kFullGrid: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "grid(N=%zu,step=%g)", n_outputs, step);
      return buf;
    }
  }
  return "?";
}

double epsilon_min(const MeasureSpec& spec, const JointDistribution& q) {
  if (spec.kind == MeasureKind::kPc) {
    const std::vector<double> ms = marginal_s(q);
    return *std::max_element(ms.begin(), ms.end());
  }
  return 0.0;
}

namespace {

// Maximize utility subject to leakage <= eps over a one-parameter curve of
// mechanisms: coarse grid, golden-section inside the feasible run around
// the best grid point, and bisection of the leakage boundary.
struct CurveSearch {
  std::function<Mechanism(double)> make;
  double lo = 0.0;
  double hi = 1.0;
};

struct CurveBest {
  double param = 0.0;
  double leak = 0.0;
  double util = 0.0;
  bool found = false;
};

CurveBest solve_curve(const CurveSearch& curve, const MeasureSpec& spec_l,
                      const MeasureSpec& spec_u, const JointDistribution& q,
                      double eps) {
  auto eval = [&](double t) {
    const Mechanism w = curve.make(t);
    return std::pair<double, double>(leakage(spec_l, q, w).value,
                                     utility(spec_u, q, w).value);
  };

  const std::size_t n = kCoarseGridPoints;
  std::vector<double> ts(n), leaks(n), utils(n);
  for (std::size_t i = 0; i < n; ++i) {
    ts[i] = curve.lo + (curve.hi - curve.lo) * static_cast<double>(i) /
                           static_cast<double>(n - 1);
    auto [l, u] = eval(ts[i]);
    leaks[i] = l;
    utils[i] = u;
  }

  CurveBest best;
  auto consider = [&](double t, double l, double u) {
    if (l <= eps + kTieTol && (!best.found || u > best.util)) {
      best = CurveBest{t, l, u, true};
    }
  };
  std::size_t best_i = n;
  for (std::size_t i = 0; i < n; ++i) {
    consider(ts[i], leaks[i], utils[i]);
    if (best.found && best.param == ts[i]) best_i = i;
  }
  if (!best.found) return best;

  // Contiguous feasible run around the best grid point.
  std::size_t i_lo = best_i, i_hi = best_i;
  while (i_lo > 0 && leaks[i_lo - 1] <= eps + kTieTol) --i_lo;
  while (i_hi + 1 < n && leaks[i_hi + 1] <= eps + kTieTol) ++i_hi;

  // Golden-section on utility inside the feasible run.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = ts[i_lo], b = ts[i_hi];
  if (b - a > kParamTol) {
    double c = b - phi * (b - a), d = a + phi * (b - a);
    auto [lc, uc] = eval(c);
    auto [ld, ud] = eval(d);
    double fc = lc <= eps + kTieTol ? uc : -std::numeric_limits<double>::max();
    double fd = ld <= eps + kTieTol ? ud : -std::numeric_limits<double>::max();
    while (b - a > kParamTol) {
      if (fc > fd) {
        b = d; d = c; fd = fc;
        c = b - phi * (b - a);
        auto [l2, u2] = eval(c);
        fc = l2 <= eps + kTieTol ? u2 : -std::numeric_limits<double>::max();
      } else {
        a = c; c = d; fc = fd;
        d = a + phi * (b - a);
        auto [l2, u2] = eval(d);
        fd = l2 <= eps + kTieTol ? u2 : -std::numeric_limits<double>::max();
      }
    }
    const double mid = 0.5 * (a + b);
    auto [lm, um] = eval(mid);
    consider(mid, lm, um);
  }

  // Bisect the leakage boundary on each side of the feasible run.
  auto bisect_boundary = [&](double feas, double infeas) {
    for (int it = 0; it < 60 && std::abs(infeas - feas) > kParamTol; ++it) {
      const double mid = 0.5 * (feas + infeas);
      auto [l, u] = eval(mid);
      if (l <= eps + kTieTol) {
        feas = mid;
      } else {
        infeas = mid;
      }
    }
    auto [l, u] = eval(feas);
    consider(feas, l, u);
  };
  if (i_lo > 0) bisect_boundary(ts[i_lo], ts[i_lo - 1]);
  if (i_hi + 1 < n) bisect_boundary(ts[i_hi], ts[i_hi + 1]);

  return best;
}

}  // namespace

DesignResult design_in_family(const FamilySpec& family,
                              const MeasureSpec& spec_l,
                              const MeasureSpec& spec_u,
                              const JointDistribution& q, double eps) {
  check_design_measure(spec_l);
  check_design_measure(spec_u);

  switch (family.kind) {
    case FamilySpec::Kind::kRandomizedResponse: {
      const std::size_t k = q.x_size();
      const double diag_lo = 1.0 / static_cast<double>(k);
      auto make = [&](double diag) {
        diag = std::clamp(diag, diag_lo, 1.0);
        // diag = e^rho / (e^rho + k - 1), so diag in [1/k, 1] spans rho >= 0.
        std::vector<double> rows(k * k,
                                 (1.0 - diag) / static_cast<double>(k - 1));
        for (std::size_t x = 0; x < k; ++x) rows[x * k + x] = diag;
        return Mechanism(q.x_alphabet(), k, std::move(rows));
      };
      const Mechanism most_private = make(diag_lo);
      if (leakage(spec_l, q, most_private).value > eps + kTieTol) {
        throw_error(Errc::kInfeasible,
                    "eps below the minimum leakage of randomized response");
      }
      const CurveBest best =
          solve_curve({make, diag_lo, 1.0}, spec_l, spec_u, q, eps);
      return DesignResult{make(best.param), eps,        best.leak,
                          best.util,        family, "rr-grid-golden"};
    }
    case FamilySpec::Kind::kZChannel: {
      std::optional<DesignResult> best;
      std::vector<std::size_t> xbars;
      if (family.xbar) {
        xbars.push_back(*family.xbar);
      } else {
        for (std::size_t x = 0; x < q.x_size(); ++x) xbars.push_back(x);
      }
      for (std::size_t xb : xbars) {
        auto make = [&, xb](double zeta) {
          return z_channel(xb, std::clamp(zeta, 0.0, 1.0), q.x_alphabet());
        };
        if (leakage(spec_l, q, make(1.0)).value > eps + kTieTol) continue;
        const CurveBest cb =
            solve_curve({make, 0.0, 1.0}, spec_l, spec_u, q, eps);
        if (!cb.found) continue;
        if (!best || cb.util > best->achieved_utility) {
          best = DesignResult{make(cb.param), eps,
                              cb.leak,        cb.util,
                              family,         "z-grid-golden(xbar=" +
                                                  std::to_string(xb) + ")"};
        }
      }
      if (!best) {
        throw_error(Errc::kInfeasible,
                    "eps below the minimum leakage of every z-channel");
      }
      return *best;
    }
    case FamilySpec::Kind::kFullGrid: {
      BruteForceResult r = brute_force_trade_off(spec_l, spec_u, q, eps,
                                         family.n_outputs, family.step);
      Mechanism w = r.argmax.front();
      return DesignResult{std::move(w),
                          eps,
                          leakage(spec_l, q, r.argmax.front()).value,
                          r.max_utility,
                          family,
                          "grid"};
    }
  }
  throw_error(Errc::kInvalidParam, "unknown family kind");
}

namespace {

struct Lattice {
  std::vector<std::vector<double>> rows;  // each a pmf over n_outputs
  std::size_t n_outputs = 0;
};

// All pmfs over n_outputs with entries k/m, in lexicographic order.
Lattice make_lattice(std::size_t n_outputs, double step) {
  const long m = std::lround(1.0 / step);
  Lattice lat;
  lat.n_outputs = n_outputs;
  std::vector<double> row(n_outputs, 0.0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos,
                                                   long left) {
    if (pos + 1 == n_outputs) {
      row[pos] = static_cast<double>(left) / static_cast<double>(m);
      lat.rows.push_back(row);
      return;
    }
    for (long c = 0; c <= left; ++c) {
      row[pos] = static_cast<double>(c) / static_cast<double>(m);
      rec(pos + 1, left - c);
    }
  };
  rec(0, m);
  return lat;
}

void check_lattice_guard(std::size_t nx, std::size_t n_outputs, double step) {
  if (nx > 3 || n_outputs > 4 || step < 0.01 - 1e-12) {
    throw_error(Errc::kTooLarge,
                "lattice guard: |X| <= 3, N <= 4, step >= 0.01");
  }
}

// Visits every |X|-tuple of lattice rows. The S,Y composition is built
// incrementally along the tuple; fn sees the flat mechanism, sy and xy.
void sweep_lattice(const JointDistribution& q, const Lattice& lat,
                   const std::function<void(const std::vector<std::uint32_t>&,
                                            const double*, const double*,
                                            const double*)>& fn) {
  const std::size_t nx = q.x_size(), ns = q.s_size(), ny = lat.n_outputs;
  const std::vector<double> px = marginal_x(q);
  std::vector<std::uint32_t> idx(nx, 0);
  std::vector<double> wflat(nx * ny, 0.0);
  std::vector<double> xy(nx * ny, 0.0);
  // sy partial sums per depth: level d holds contributions of rows < d.
  std::vector<std::vector<double>> sy_partial(nx + 1,
                                              std::vector<double>(ns * ny));
  std::fill(sy_partial[0].begin(), sy_partial[0].end(), 0.0);

  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == nx) {
      fn(idx, wflat.data(), sy_partial[nx].data(), xy.data());
      return;
    }
    for (std::uint32_t r = 0; r < lat.rows.size(); ++r) {
      idx[depth] = r;
      const std::vector<double>& row = lat.rows[r];
      for (std::size_t y = 0; y < ny; ++y) {
        wflat[depth * ny + y] = row[y];
        xy[depth * ny + y] = px[depth] * row[y];
      }
      const std::vector<double>& prev = sy_partial[depth];
      std::vector<double>& next = sy_partial[depth + 1];
      for (std::size_t s = 0; s < ns; ++s) {
        const double qsx = q(s, depth);
        for (std::size_t y = 0; y < ny; ++y) {
          next[s * ny + y] = prev[s * ny + y] + qsx * row[y];
        }
      }
      rec(depth + 1);
    }
  };
  rec(0);
}

}  // namespace

BruteForceResult brute_force_trade_off(const MeasureSpec& spec_l,
                                       const MeasureSpec& spec_u,
                                       const JointDistribution& q, double eps,
                                       std::size_t n_outputs, double step) {
  check_design_measure(spec_l);
  check_design_measure(spec_u);
  check_lattice_guard(q.x_size(), n_outputs, step);
  const Lattice lat = make_lattice(n_outputs, step);

  double h = -std::numeric_limits<double>::infinity();
  struct Tie {
    std::vector<std::uint32_t> idx;
    double util;
  };
  std::vector<Tie> ties;
  bool truncated = false;
  const std::size_t ns = q.s_size(), nx = q.x_size();

  sweep_lattice(q, lat,
                [&](const std::vector<std::uint32_t>& idx, const double*,
                    const double* sy, const double* xy) {
                  const double leak =
                      measure_on_buffer(spec_l, sy, ns, n_outputs);
                  if (leak > eps + kTieTol) return;
                  const double util =
                      measure_on_buffer(spec_u, xy, nx, n_outputs);
                  if (util > h + kTieTol) {
                    h = util;
                    ties.clear();
                    truncated = false;
                  }
                  if (util >= h - kTieTol) {
                    h = std::max(h, util);
                    if (ties.size() < BruteForceResult::kMaxTies) {
                      ties.push_back(Tie{idx, util});
                    } else {
                      truncated = true;
                    }
                  }
                });

  if (ties.empty()) {
    throw_error(Errc::kInfeasible,
                "no lattice mechanism satisfies the leakage budget");
  }
  BruteForceResult result;
  result.max_utility = h;
  result.argmax_truncated = truncated;
  for (const Tie& tie : ties) {
    // The maximum can creep within the band during the sweep; drop
    // candidates the final value left behind.
    if (tie.util < h - kTieTol) continue;
    std::vector<double> rows(nx * n_outputs);
    for (std::size_t x = 0; x < nx; ++x) {
      std::copy(lat.rows[tie.idx[x]].begin(), lat.rows[tie.idx[x]].end(),
                rows.begin() + static_cast<long>(x * n_outputs));
    }
    result.argmax.emplace_back(q.x_alphabet(), n_outputs, std::move(rows));
  }
  return result;
}

std::vector<Mechanism> near_optimal_set(const MeasureSpec& spec_l,
                                        const MeasureSpec& spec_u,
                                        const JointDistribution& q, double eps,
                                        std::size_t n_outputs, double step,
                                        double tolerance) {
  check_design_measure(spec_l);
  check_design_measure(spec_u);
  check_lattice_guard(q.x_size(), n_outputs, step);
  const Lattice lat = make_lattice(n_outputs, step);
  const std::size_t ns = q.s_size(), nx = q.x_size();

  // Two passes: the maximum first, then everything in the band below it.
  double h = -std::numeric_limits<double>::infinity();
  sweep_lattice(q, lat,
                [&](const std::vector<std::uint32_t>&, const double*,
                    const double* sy, const double* xy) {
                  if (measure_on_buffer(spec_l, sy, ns, n_outputs) >
                      eps + kTieTol) {
                    return;
                  }
                  h = std::max(h,
                               measure_on_buffer(spec_u, xy, nx, n_outputs));
                });
  if (h == -std::numeric_limits<double>::infinity()) {
    throw_error(Errc::kInfeasible,
                "no lattice mechanism satisfies the leakage budget");
  }
  std::vector<Mechanism> set;
  sweep_lattice(
      q, lat,
      [&](const std::vector<std::uint32_t>& idx, const double*,
          const double* sy, const double* xy) {
        if (set.size() >= BruteForceResult::kMaxTies) return;
        if (measure_on_buffer(spec_l, sy, ns, n_outputs) > eps + kTieTol) {
          return;
        }
        if (measure_on_buffer(spec_u, xy, nx, n_outputs) < h - tolerance) {
          return;
        }
        std::vector<double> rows(nx * n_outputs);
        for (std::size_t x = 0; x < nx; ++x) {
          std::copy(lat.rows[idx[x]].begin(), lat.rows[idx[x]].end(),
                    rows.begin() + static_cast<long>(x * n_outputs));
        }
        set.emplace_back(q.x_alphabet(), n_outputs, std::move(rows));
      });
  return set;
}

LatticeSweep brute_force_trade_off_multi(
    const MeasureSpec& spec_l, const MeasureSpec& spec_u,
    const JointDistribution& q, const std::vector<double>& eps_list,
    std::size_t n_outputs, double step) {
  check_design_measure(spec_l);
  check_design_measure(spec_u);
  check_lattice_guard(q.x_size(), n_outputs, step);
  if (!std::is_sorted(eps_list.begin(), eps_list.end())) {
    throw_error(Errc::kInvalidParam, "eps grid must be sorted ascending");
  }
  const Lattice lat = make_lattice(n_outputs, step);
  const std::size_t ns = q.s_size(), nx = q.x_size(), ne = eps_list.size();

  // Bucket b: mechanisms whose leakage first fits eps_list[b]. The running
  // per-bucket best becomes the final answer after a prefix max, because
  // feasible sets nest as eps grows.
  std::vector<double> bucket_best(ne,
                                  -std::numeric_limits<double>::infinity());
  std::vector<std::vector<std::uint32_t>> bucket_arg(ne);

  sweep_lattice(q, lat,
                [&](const std::vector<std::uint32_t>& idx, const double*,
                    const double* sy, const double* xy) {
                  const double leak =
                      measure_on_buffer(spec_l, sy, ns, n_outputs);
                  const auto it = std::lower_bound(
                      eps_list.begin(), eps_list.end(), leak - kTieTol);
                  if (it == eps_list.end()) return;
                  const std::size_t b =
                      static_cast<std::size_t>(it - eps_list.begin());
                  const double util =
                      measure_on_buffer(spec_u, xy, nx, n_outputs);
                  if (util > bucket_best[b]) {
                    bucket_best[b] = util;
                    bucket_arg[b] = idx;
                  }
                });

  LatticeSweep sweep;
  sweep.values.assign(ne, std::numeric_limits<double>::quiet_NaN());
  sweep.argmax.assign(ne, std::nullopt);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> best_idx;
  for (std::size_t b = 0; b < ne; ++b) {
    if (bucket_best[b] > best) {
      best = bucket_best[b];
      best_idx = bucket_arg[b];
    }
    if (best == -std::numeric_limits<double>::infinity()) continue;
    sweep.values[b] = best;
    std::vector<double> rows(nx * n_outputs);
    for (std::size_t x = 0; x < nx; ++x) {
      std::copy(lat.rows[best_idx[x]].begin(), lat.rows[best_idx[x]].end(),
                rows.begin() + static_cast<long>(x * n_outputs));
    }
    sweep.argmax[b] = Mechanism(q.x_alphabet(), n_outputs, std::move(rows));
  }
  return sweep;
}

double pc_trade_off_closed_form(double p, double q, double eps) {
  if (!(p >= 0.5 && p <= 1.0 && q >= 0.0 && q <= 1.0 - p && p > q)) {
    throw_error(Errc::kOutOfRange,
                "closed form needs p in [1/2,1], q in [0,1-p], p > q");
  }
  if (!(eps >= p - 1e-12 && eps <= 1.0 - q + 1e-12)) {
    throw_error(Errc::kOutOfRange, "closed form valid for eps in [p, 1-q]");
  }
  const double slope = (p + q - 2.0 * p * q) / (p - q);
  return 1.0 - (1.0 - q) * slope + eps * slope;
}

JointDistribution bernoulli_bsc_joint(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw_error(Errc::kInvalidParam, "p and q must be probabilities");
  }
  return JointDistribution(
      Alphabet::numbered(2), Alphabet::numbered(2),
      {{(1.0 - p) * (1.0 - q), (1.0 - p) * q}, {p * q, p * (1.0 - q)}});
}

UniformDesignResult uniform_design(const MeasureSpec& spec_l,
                                   const MeasureSpec& spec_u,
                                   const JointDistribution& p_hat, double eps,
                                   double r, const FamilySpec& family,
                                   std::size_t ball_samples,
                                   std::uint64_t seed,
                                   const BallConstraint& constraint) {
  check_design_measure(spec_l);
  check_design_measure(spec_u);
  if (r < 0.0) throw_error(Errc::kInvalidParam, "negative ball radius");

  // C_L over the whole ball: margin-dependent constants get the worst
  // marginal any member can have, (min empirical marginal - r)_+.
  BoundContext ctx{spec_l, Side::kPrivacy, p_hat.s_size(), p_hat.x_size(),
                   std::nullopt};
  if (spec_l.kind == MeasureKind::kFInfo) {
    const std::vector<double> ms = marginal_s(p_hat);
    const double floor =
        *std::min_element(ms.begin(), ms.end()) - r;
    if (floor <= 0.0) {
      throw_error(Errc::kInfeasibleShrunkBudget,
                  "ball reaches distributions with vanishing S-marginal; "
                  "no uniform Lipschitz constant exists");
    }
    ctx.margin_floor = floor;
  }
  const double c_l = lipschitz_constant(ctx);

  const double shrunk = eps - c_l * r;
  if (shrunk < epsilon_min(spec_l, p_hat) - kTieTol) {
    throw_error(Errc::kInfeasibleShrunkBudget,
                "eps - C_L r falls below the smallest achievable leakage");
  }

  DesignResult inner = design_in_family(family, spec_l, spec_u, p_hat, shrunk);

  UniformDesignResult result{std::move(inner), r, c_l, shrunk, {}};
  const std::vector<JointDistribution> ball =
      sample_ball(p_hat, r, constraint, ball_samples, seed);
  double worst = 0.0;
  for (const JointDistribution& qball : ball) {
    worst = std::max(
        worst, leakage(spec_l, qball, result.inner.mechanism).value);
  }
  result.verification = {ball.size(), worst, worst <= eps + kTieTol};
  return result;
}

double worst_case_utility(const MeasureSpec& spec_u,
                          const JointDistribution& p_hat, const Mechanism& w,
                          double r, std::size_t m, std::uint64_t seed) {
  const std::vector<JointDistribution> ball =
      sample_ball(p_hat, r, BallConstraint::simplex(), m, seed);
  double worst = std::numeric_limits<double>::infinity();
  for (const JointDistribution& q : ball) {
    worst = std::min(worst, utility(spec_u, q, w).value);
  }
  return worst;
}

Mechanism brute_force_uniform(const MeasureSpec& spec_l,
                              const MeasureSpec& spec_u,
                              const JointDistribution& p_hat, double eps,
                              double r, std::size_t n_outputs, double step,
                              std::size_t m, std::uint64_t seed) {
  check_design_measure(spec_l);
  check_design_measure(spec_u);
  check_lattice_guard(p_hat.x_size(), n_outputs, step);
  const Lattice lat = make_lattice(n_outputs, step);
  const std::vector<JointDistribution> ball =
      sample_ball(p_hat, r, BallConstraint::simplex(), m, seed);

  const std::size_t ns = p_hat.s_size(), nx = p_hat.x_size();
  std::vector<double> sy_buf(ns * n_outputs);
  std::vector<double> xy_buf(nx * n_outputs);
  std::vector<std::vector<double>> ball_px;
  ball_px.reserve(ball.size());
  for (const JointDistribution& q : ball) ball_px.push_back(marginal_x(q));

  double best_worst_util = -std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> best_idx;

  sweep_lattice(
      p_hat, lat,
      [&](const std::vector<std::uint32_t>& idx, const double* w,
          const double* sy, const double*) {
        // The center sits in the ball, so its leakage prefilters the rest.
        if (measure_on_buffer(spec_l, sy, ns, n_outputs) > eps + kTieTol) {
          return;
        }
        double worst_util = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < ball.size(); ++b) {
          if (leak_on_buffers(spec_l, ball[b], w, n_outputs, sy_buf) >
              eps + kTieTol) {
            return;
          }
          compose_xy(ball_px[b], w, n_outputs, xy_buf.data());
          worst_util = std::min(worst_util, measure_on_buffer(
                                                spec_u, xy_buf.data(), nx,
                                                n_outputs));
        }
        if (worst_util > best_worst_util) {
          best_worst_util = worst_util;
          best_idx = idx;
        }
      });

  if (best_idx.empty()) {
    throw_error(Errc::kEmptyFeasibleSet,
                "no lattice mechanism keeps leakage within eps over the ball");
  }
  std::vector<double> rows(nx * n_outputs);
  for (std::size_t x = 0; x < nx; ++x) {
    std::copy(lat.rows[best_idx[x]].begin(), lat.rows[best_idx[x]].end(),
              rows.begin() + static_cast<long>(x * n_outputs));
  }
  return Mechanism(p_hat.x_alphabet(), n_outputs, std::move(rows));
}

double dist_to_set(const Mechanism& w, const std::vector<Mechanism>& set) {
  if (set.empty()) throw_error(Errc::kEmptySet, "distance to an empty set");
  double best = std::numeric_limits<double>::infinity();
  for (const Mechanism& other : set) {
    best = std::min(best, l1_distance(w, other));
  }
  return best;
}

namespace {

nlohmann::json mechanism_json(const Mechanism& w) {
  std::vector<std::vector<double>> rows(w.x_size());
  for (std::size_t x = 0; x < w.x_size(); ++x) {
    rows[x].assign(w.rows().begin() + static_cast<long>(x * w.n_outputs()),
                   w.rows().begin() +
                       static_cast<long>((x + 1) * w.n_outputs()));
  }
  return nlohmann::json{{"x_labels", w.x_alphabet().labels()},
                        {"n_outputs", w.n_outputs()},
                        {"rows", rows}};
}

nlohmann::json design_json(const DesignResult& d) {
  return nlohmann::json{{"mechanism", mechanism_json(d.mechanism)},
                        {"epsilon", d.epsilon},
                        {"achieved_leakage", d.achieved_leakage},
                        {"achieved_utility", d.achieved_utility},
                        {"family", d.family.str()},
                        {"method", d.method}};
}

}  // namespace

std::string to_json(const DesignResult& result) {
  return design_json(result).dump(2);
}

std::string to_json(const UniformDesignResult& result) {
  nlohmann::json j{
      {"inner", design_json(result.inner)},
      {"r", result.r},
      {"c_l", result.c_l},
      {"shrunk_epsilon", result.shrunk_epsilon},
      {"verification",
       {{"samples_checked", result.verification.samples_checked},
        {"max_leakage_in_ball", result.verification.max_leakage_in_ball},
        {"pass", result.verification.pass}}},
  };
  return j.dump(2);
}

}  // namespace putbound
