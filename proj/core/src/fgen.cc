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

#include "putbound/fgen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "putbound/error.h"

namespace putbound {

namespace {

constexpr int kGridPoints = 10000;

void spot_check(const std::string& name,
                const std::function<double(double)>& f,
                const std::function<double(double)>& sup_norm,
                const std::function<double(double)>& lipschitz) {
  if (std::abs(f(1.0)) > 1e-9) {
    throw_error(Errc::kInvalidParam, "generator '" + name + "': f(1) != 0");
  }
  // Convexity on a few fixed triples t1 < tm < t2 with tm the midpoint.
  const double pts[] = {0.0, 0.25, 0.5, 0.9, 1.0, 1.5, 2.0, 4.0, 8.0};
  for (double a : pts) {
    for (double b : pts) {
      if (a >= b) continue;
      const double mid = 0.5 * (a + b);
      if (f(mid) > 0.5 * (f(a) + f(b)) + 1e-9) {
        throw_error(Errc::kInvalidParam,
                    "generator '" + name + "': f is not convex");
      }
    }
  }
  // Relative slack absorbs the O(h) bias of grid-estimated constants.
  const double us[] = {0.5, 1.0, 2.0, 4.0, 16.0};
  for (std::size_t i = 0; i + 1 < std::size(us); ++i) {
    if (sup_norm(us[i]) > sup_norm(us[i + 1]) * (1.0 + 1e-3) + 1e-9 ||
        lipschitz(us[i]) > lipschitz(us[i + 1]) * (1.0 + 1e-3) + 1e-9) {
      throw_error(Errc::kInvalidParam,
                  "generator '" + name + "': K or L not nondecreasing");
    }
  }
}

}  // namespace

FGenerator::FGenerator(std::string name, std::function<double(double)> f,
                       std::function<double(double)> sup_norm,
                       std::function<double(double)> lipschitz)
    : name_(std::move(name)),
      f_(std::move(f)),
      sup_norm_(std::move(sup_norm)),
      lipschitz_(std::move(lipschitz)) {
  spot_check(name_, f_, sup_norm_, lipschitz_);
}

FGenerator FGenerator::total_variation() {
  return FGenerator(
      "tv", [](double t) { return std::abs(t - 1.0) / 2.0; },
      [](double u) { return std::max(1.0, u - 1.0) / 2.0; },
      [](double) { return 0.5; });
}

FGenerator FGenerator::chi_squared() {
  return FGenerator(
      "chi2", [](double t) { return (t - 1.0) * (t - 1.0); },
      [](double u) { return std::max(1.0, (u - 1.0) * (u - 1.0)); },
      [](double u) { return 2.0 * std::max(1.0, u - 1.0); });
}

FGenerator FGenerator::hellinger(double a) {
  if (!(a > 1.0)) {
    throw_error(Errc::kInvalidParam, "hellinger order must exceed 1");
  }
  char order[32];
  std::snprintf(order, sizeof order, "%g", a);
  return FGenerator(
      "hellinger(" + std::string(order) + ")",
      [a](double t) { return (std::pow(t, a) - 1.0) / (a - 1.0); },
      [a](double u) {
        return std::max(1.0, std::pow(u, a) - 1.0) / (a - 1.0);
      },
      [a](double u) { return a * std::pow(u, a - 1.0) / (a - 1.0); });
}

FGenerator FGenerator::custom(std::string name,
                              std::function<double(double)> f) {
  auto sup_norm = [f](double u) {
    double k = 0.0;
    for (int i = 0; i <= kGridPoints; ++i) {
      const double t = u * static_cast<double>(i) / kGridPoints;
      k = std::max(k, std::abs(f(t)));
    }
    return k;
  };
  auto lipschitz = [f](double u) {
    double l = 0.0;
    double prev = f(0.0);
    const double h = u / kGridPoints;
    for (int i = 1; i <= kGridPoints; ++i) {
      const double cur = f(h * static_cast<double>(i));
      l = std::max(l, std::abs(cur - prev) / h);
      prev = cur;
    }
    return l;
  };
  return FGenerator(std::move(name), std::move(f), std::move(sup_norm),
                    std::move(lipschitz));
}

}  // namespace putbound
