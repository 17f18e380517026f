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

#ifndef PUTBOUND_BOUNDS_H_
#define PUTBOUND_BOUNDS_H_

#include <cstddef>
#include <optional>
#include <string>

#include "putbound/deviation.h"
#include "putbound/fgen.h"
#include "putbound/measure.h"
#include "putbound/prob.h"

namespace putbound {

/// Everything the per-measure Lipschitz constant depends on besides the
/// measure itself: which side, the alphabet sizes, and (where the constant
/// is margin-dependent) a floor on the relevant marginal. The floor is
/// required exactly for f-information (both sides), Sibson of finite order
/// (both sides), and the privacy side of the order-infinity family
/// (Sibson-inf and maximal alpha-leakage).
struct BoundContext {
  MeasureSpec spec;
  Side side = Side::kPrivacy;
  std::size_t s_size = 0;
  std::size_t x_size = 0;
  std::optional<double> margin_floor;
};

/// Discrepancy constant of an f-information at marginal floor u:
///   f_info_constant(u) = 2 K_f(1/u) + (2/u + 1) L_f(1/u).
/// Nonincreasing in u; throws InvalidMargin unless u is in (0, 1].
double f_info_constant(const FGenerator& fgen, double u);

/// The per-measure constant C with |M(Q1,W) - M(Q2,W)| <= C ||Q1 - Q2||_1:
///
///                privacy                       utility
///   pc           1                             1
///   f-info       f_info_constant(m_S)          f_info_constant(m_X)
///   arimoto(a)   2a/(a-1) |S|^(1-1/a)          2a/(a-1) |X|^(1-1/a)
///   sibson(a)    (2a+1)/((a-1) m_S^(1-1/a))    1/((a-1) m_X^(1-1/a))
///   sibson(inf)  2 / m                         0
///   maxal(a)     4a |S|^(1-1/a) / ((a-1) m)    0
///   maxal(inf)   2 / m                         0
///
/// where m_S/m_X are marginal floors over both distributions and m is the
/// smallest S-marginal of the first distribution. Throws MissingMargin when
/// the floor is required but absent, Unsupported for Shannon.
double lipschitz_constant(const BoundContext& ctx);

enum class MarginOver { kS, kX };

/// Empirical-side marginal floor shrunk by the deviation radius:
///   (min marginal of emp - radius(n, |S||X|, beta))_+ .
double shrunk_margin(const JointDistribution& emp, std::size_t n, double beta,
                     MarginOver over);

/// Probabilistic guarantee |M(emp, W) - M(truth, W)| <= bound holding with
/// probability at least 1 - beta simultaneously for every mechanism W.
struct RobustnessCertificate {
  MeasureSpec spec;
  Side side = Side::kPrivacy;
  std::size_t n = 0;
  double beta = 0.0;
  DeviationRadius radius;
  double constant = 0.0;
  double bound = 0.0;  // constant * radius.value, exactly
  /// The empirical-side margin the constant used, when it used one: the
  /// radius-shrunk floor for f-information and finite-order Sibson, the raw
  /// empirical minimum S-marginal for the order-infinity family.
  std::optional<double> margin_used;
};

/// Builds the certificate for the measure/side from the empirical
/// distribution alone. Throws Unsupported for Shannon and NotCertifiable
/// when the required margin vanishes (merging rare symbols raises
/// the X-margin in that case).
RobustnessCertificate discrepancy_bound(const MeasureSpec& spec, Side side,
                                        const JointDistribution& emp,
                                        std::size_t n, double beta);

struct LipschitzCheck {
  double lhs = 0.0;  // |M(Q1,W) - M(Q2,W)|
  double rhs = 0.0;  // constant * ||Q1 - Q2||_1
  bool ok = false;   // lhs <= rhs + 1e-9
};

/// Evaluates both sides of the Lipschitz inequality for one triple, with
/// the margin context computed from Q1 and Q2 as the constant requires.
LipschitzCheck certify_lipschitz(const MeasureSpec& spec, Side side,
                                 const JointDistribution& q1,
                                 const JointDistribution& q2,
                                 const Mechanism& w);

/// JSON document {measure, side, n, beta, radius, constant, bound, m_bar}.
std::string to_json(const RobustnessCertificate& cert);

}  // namespace putbound

#endif  // PUTBOUND_BOUNDS_H_
