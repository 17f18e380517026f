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

#include "putbound/bounds.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "putbound/error.h"

namespace putbound {

double f_info_constant(const FGenerator& fgen, double u) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw_error(Errc::kInvalidMargin, "marginal floor must lie in (0, 1]");
  }
  const double inv = 1.0 / u;
  return 2.0 * fgen.sup_norm(inv) + (2.0 * inv + 1.0) * fgen.lipschitz(inv);
}

namespace {

double require_margin(const BoundContext& ctx) {
  if (!ctx.margin_floor.has_value()) {
    throw_error(Errc::kMissingMargin,
                "measure '" + ctx.spec.str() + "' (" + side_name(ctx.side) +
                    ") needs a marginal floor");
  }
  const double m = *ctx.margin_floor;
  if (!(m > 0.0 && m <= 1.0)) {
    throw_error(Errc::kInvalidMargin, "marginal floor must lie in (0, 1]");
  }
  return m;
}

// k^(1-1/alpha) with the order-infinity limit k.
double size_power(std::size_t k, double alpha) {
  if (std::isinf(alpha)) return static_cast<double>(k);
  return std::pow(static_cast<double>(k), 1.0 - 1.0 / alpha);
}

double alpha_ratio(double alpha) {
  return std::isinf(alpha) ? 1.0 : alpha / (alpha - 1.0);
}

}  // namespace

double lipschitz_constant(const BoundContext& ctx) {
  const double alpha = ctx.spec.alpha;
  const std::size_t k =
      ctx.side == Side::kPrivacy ? ctx.s_size : ctx.x_size;
  switch (ctx.spec.kind) {
    case MeasureKind::kPc:
      return 1.0;
    case MeasureKind::kFInfo:
      return f_info_constant(*ctx.spec.fgen, require_margin(ctx));
    case MeasureKind::kArimoto:
      return 2.0 * alpha_ratio(alpha) * size_power(k, alpha);
    case MeasureKind::kSibson:
      if (std::isinf(alpha)) {
        if (ctx.side == Side::kUtility) return 0.0;
        return 2.0 / require_margin(ctx);
      }
      if (ctx.side == Side::kPrivacy) {
        return (2.0 * alpha + 1.0) /
               ((alpha - 1.0) *
                std::pow(require_margin(ctx), 1.0 - 1.0 / alpha));
      }
      return 1.0 /
             ((alpha - 1.0) * std::pow(require_margin(ctx), 1.0 - 1.0 / alpha));
    case MeasureKind::kMaxAlpha:
      if (ctx.side == Side::kUtility) return 0.0;
      if (std::isinf(alpha)) return 2.0 / require_margin(ctx);
      return 4.0 * alpha * size_power(ctx.s_size, alpha) /
             ((alpha - 1.0) * require_margin(ctx));
    case MeasureKind::kShannon:
      throw_error(Errc::kUnsupportedMeasure,
                  "no discrepancy constant covers Shannon mutual information");
  }
  throw_error(Errc::kInvalidParam, "unknown measure kind");
}

double shrunk_margin(const JointDistribution& emp, std::size_t n, double beta,
                     MarginOver over) {
  const std::vector<double> marg =
      over == MarginOver::kS ? marginal_s(emp) : marginal_x(emp);
  const double least = *std::min_element(marg.begin(), marg.end());
  const double r =
      deviation_radius(n, emp.s_size() * emp.x_size(), beta).value;
  return std::max(0.0, least - r);
}

RobustnessCertificate discrepancy_bound(const MeasureSpec& spec, Side side,
                                        const JointDistribution& emp,
                                        std::size_t n, double beta) {
  if (spec.kind == MeasureKind::kShannon) {
    throw_error(Errc::kUnsupportedMeasure,
                "no discrepancy bound covers Shannon mutual information");
  }
  const DeviationRadius radius =
      deviation_radius(n, emp.s_size() * emp.x_size(), beta);

  BoundContext ctx{spec, side, emp.s_size(), emp.x_size(), std::nullopt};
  std::optional<double> margin_used;

  const bool needs_mbar =
      spec.kind == MeasureKind::kFInfo ||
      (spec.kind == MeasureKind::kSibson && !std::isinf(spec.alpha));
  const bool needs_raw_margin =
      (spec.kind == MeasureKind::kSibson && std::isinf(spec.alpha) &&
       side == Side::kPrivacy) ||
      (spec.kind == MeasureKind::kMaxAlpha && side == Side::kPrivacy);

  if (needs_mbar) {
    const MarginOver over =
        side == Side::kPrivacy ? MarginOver::kS : MarginOver::kX;
    const double m = shrunk_margin(emp, n, beta, over);
    if (m <= 0.0) {
      throw_error(Errc::kNotCertifiable,
                  "radius-shrunk marginal floor is zero; merge rare symbols "
                  "(preprocess) or collect more samples");
    }
    margin_used = m;
    ctx.margin_floor = m;
  } else if (needs_raw_margin) {
    const std::vector<double> ms = marginal_s(emp);
    const double least = *std::min_element(ms.begin(), ms.end());
    if (least <= 0.0) {
      throw_error(Errc::kNotCertifiable,
                  "empirical S-marginal has a zero entry");
    }
    margin_used = least;
    ctx.margin_floor = least;
  }

  const double constant = lipschitz_constant(ctx);
  return RobustnessCertificate{spec,     side,  n,
                               beta,     radius, constant,
                               constant * radius.value, margin_used};
}

LipschitzCheck certify_lipschitz(const MeasureSpec& spec, Side side,
                                 const JointDistribution& q1,
                                 const JointDistribution& q2,
                                 const Mechanism& w) {
  const double m1 = evaluate(spec, side, q1, w).value;
  const double m2 = evaluate(spec, side, q2, w).value;
  const double lhs = std::abs(m1 - m2);

  BoundContext ctx{spec, side, q1.s_size(), q1.x_size(), std::nullopt};
  const bool pair_margin =
      spec.kind == MeasureKind::kFInfo ||
      (spec.kind == MeasureKind::kSibson && !std::isinf(spec.alpha));
  const bool q1_margin =
      (spec.kind == MeasureKind::kSibson && std::isinf(spec.alpha) &&
       side == Side::kPrivacy) ||
      (spec.kind == MeasureKind::kMaxAlpha && side == Side::kPrivacy);
  if (pair_margin) {
    auto least = [&](const JointDistribution& q) {
      const std::vector<double> m =
          side == Side::kPrivacy ? marginal_s(q) : marginal_x(q);
      return *std::min_element(m.begin(), m.end());
    };
    ctx.margin_floor = std::min(least(q1), least(q2));
  } else if (q1_margin) {
    const std::vector<double> m = marginal_s(q1);
    ctx.margin_floor = *std::min_element(m.begin(), m.end());
  }

  const double rhs = lipschitz_constant(ctx) * l1_distance(q1, q2);
  return LipschitzCheck{lhs, rhs, lhs <= rhs + 1e-9};
}

std::string to_json(const RobustnessCertificate& cert) {
  nlohmann::json j{
      {"measure", cert.spec.str()},
      {"side", side_name(cert.side)},
      {"n", cert.n},
      {"beta", cert.beta},
      {"radius", cert.radius.value},
      {"constant", cert.constant},
      {"bound", cert.bound},
  };
  if (cert.margin_used.has_value()) {
    j["m_bar"] = *cert.margin_used;
  } else {
    j["m_bar"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace putbound
