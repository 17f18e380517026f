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

#ifndef PUTBOUND_MEASURE_H_
#define PUTBOUND_MEASURE_H_

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "putbound/fgen.h"
#include "putbound/prob.h"

namespace putbound {

inline constexpr double kAlphaInf = std::numeric_limits<double>::infinity();

enum class MeasureKind { kPc, kFInfo, kArimoto, kSibson, kMaxAlpha, kShannon };

enum class Unit { kProbability, kNats, kDivergence };

struct MeasureValue {
  double value = 0.0;
  Unit unit = Unit::kNats;
};

/// Selects one leakage/utility measure. Orders route alpha = 1 to Shannon
/// mutual information; alpha in (1, 1 + 1e-6) is rejected because
/// alpha/(alpha-1) loses all precision there. Infinity is a first-class
/// order value.
struct MeasureSpec {
  MeasureKind kind = MeasureKind::kPc;
  double alpha = 0.0;              // orders in (1, inf]; unused otherwise
  std::optional<FGenerator> fgen;  // set iff kind == kFInfo

  static MeasureSpec pc();
  static MeasureSpec f_info(FGenerator f);
  static MeasureSpec arimoto(double alpha);
  static MeasureSpec sibson(double alpha);
  static MeasureSpec max_alpha(double alpha);
  static MeasureSpec shannon();

  /// Accepts: pc | shannon | f:tv | f:chi2 | f:hellinger(a) | arimoto(a) |
  /// sibson(a) | maxal(a), with "inf" allowed for a.
  static MeasureSpec parse(std::string_view text);
  std::string str() const;
};

/// max_u p(u), the probability of correctly guessing from the prior alone.
MeasureValue pc_prior(const std::vector<double>& p);

/// sum_v max_u J(u,v), the probability of correctly guessing U given V.
MeasureValue pc_posterior(const JointDistribution& joint);

/// sum_{u,v} P_U(u) P_V(v) f(J(u,v) / (P_U(u) P_V(v))); cells with a zero
/// marginal product contribute nothing (their joint mass is zero too).
MeasureValue f_information(const JointDistribution& joint,
                           const FGenerator& fgen);

/// Arimoto mutual information of order alpha in (1, inf]:
///   (a/(a-1)) log( sum_v ||J(.,v)||_a / ||P_U||_a ),
/// with the order-infinity form log(sum_v max_u J(u,v) / max_u P_U(u)).
MeasureValue arimoto_mi(const JointDistribution& joint, double alpha);

/// Sibson mutual information of order alpha in (1, inf]:
///   (a/(a-1)) log sum_v || P_U(.)^{1/a} P_{V|U}(v|.) ||_a.
/// Rows with P_U(u) = 0 are excluded from the conditional (the continuous
/// extension assigns them zero weight; for alpha = inf they leave the inner
/// max).
MeasureValue sibson_mi(const JointDistribution& joint, double alpha);

/// Shannon mutual information in nats, with 0 log 0 = 0.
MeasureValue shannon_mi(const JointDistribution& joint);

/// Maximal alpha-leakage from S to Y through the chain S -> X -> Y:
/// the supremum over input laws supported on supp(P_S) of the Sibson
/// information of order alpha through the channel P_{Y|S}. For alpha = inf
/// this equals the Sibson information of order infinity of the S,Y joint.
/// Finite alpha runs a capacity search: golden-section over the 1-simplex
/// when the support has two symbols, multiplicative ascent otherwise
/// (objective tolerance 1e-8, iteration cap 1e5).
MeasureValue max_alpha_leakage(const JointDistribution& q, const Mechanism& w,
                               double alpha);

/// Utility counterpart of maximal alpha-leakage: sup over input laws on X
/// of the Sibson information through W itself. Depends only on W.
MeasureValue max_alpha_utility(const Mechanism& w, double alpha);

/// Privacy leakage L(Q,W): the selected measure between S and Y.
MeasureValue leakage(const MeasureSpec& spec, const JointDistribution& q,
                     const Mechanism& w);

/// Utility U(Q,W): the selected measure between X and Y.
MeasureValue utility(const MeasureSpec& spec, const JointDistribution& q,
                     const Mechanism& w);

/// Which of the two functionals a bound or a design constraint refers to.
enum class Side { kPrivacy, kUtility };

const char* side_name(Side side);

/// leakage() on the privacy side, utility() on the utility side.
MeasureValue evaluate(const MeasureSpec& spec, Side side,
                      const JointDistribution& q, const Mechanism& w);

/// Evaluates the measure on an explicit (U,V) joint: Pc means pc_posterior.
/// MaxAlpha is not a function of one joint and is rejected here.
MeasureValue measure_on_joint(const MeasureSpec& spec,
                              const JointDistribution& joint);

/// Same, on a raw row-major joint buffer of shape nu x nv. Lattice sweeps
/// call this in their inner loop to skip repeated validation.
double measure_on_buffer(const MeasureSpec& spec, const double* joint,
                         std::size_t nu, std::size_t nv);

/// Sibson capacity of a bare channel (rows: conditional pmfs), order
/// alpha in (1, inf]. Exposed for oracles and the max-alpha dispatch.
double sibson_capacity(const std::vector<std::vector<double>>& channel,
                       double alpha);

}  // namespace putbound

#endif  // PUTBOUND_MEASURE_H_
