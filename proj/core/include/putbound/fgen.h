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

#ifndef PUTBOUND_FGEN_H_
#define PUTBOUND_FGEN_H_

#include <functional>
#include <string>

namespace putbound {

/// Generator of an f-divergence: a convex f on [0,inf) with f(1) = 0,
/// together with its running sup-norm K(u) = sup |f| on [0,u] and running
/// Lipschitz constant L(u) on [0,u]. Both enter the discrepancy constant
///   f_info_constant(u) = 2 K(1/u) + (2/u + 1) L(1/u).
class FGenerator {
 public:
  /// f(t) = |t-1|/2: total variation. K(u) = max{1, u-1}/2, L(u) = 1/2.
  static FGenerator total_variation();
  /// f(t) = (t-1)^2: chi-squared. K(u) = max{1, (u-1)^2},
  /// L(u) = 2 max{1, u-1}.
  static FGenerator chi_squared();
  /// f(t) = (t^a - 1)/(a - 1), a > 1: Hellinger divergence of order a.
  /// K(u) = max{1, u^a - 1}/(a-1), L(u) = a u^(a-1)/(a-1).
  static FGenerator hellinger(double a);

  /// Generator with numerically estimated K and L: both are evaluated on a
  /// 10^4-point grid over [0,u], so the constants (and any bound built from
  /// them) are approximate. Spot-checks convexity, f(1) = 0, and that the
  /// estimated K and L are nondecreasing; throws InvalidParam on failure.
  static FGenerator custom(std::string name, std::function<double(double)> f);

  /// Fully specified generator; runs the same spot checks as custom().
  FGenerator(std::string name, std::function<double(double)> f,
             std::function<double(double)> sup_norm,
             std::function<double(double)> lipschitz);

  const std::string& name() const { return name_; }
  double operator()(double t) const { return f_(t); }
  double sup_norm(double u) const { return sup_norm_(u); }
  double lipschitz(double u) const { return lipschitz_(u); }

 private:
  FGenerator() = default;

  std::string name_;
  std::function<double(double)> f_;
  std::function<double(double)> sup_norm_;
  std::function<double(double)> lipschitz_;
};

}  // namespace putbound

#endif  // PUTBOUND_FGEN_H_
