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

#include "putbound/measure.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "putbound/error.h"

namespace putbound {

namespace {

constexpr double kMinFiniteAlpha = 1.0 + 1e-6;

std::string format_alpha(double alpha) {
  if (std::isinf(alpha)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

double check_order(double alpha) {
  if (std::isnan(alpha) || alpha < 1.0) {
    throw_error(Errc::kInvalidParam, "order must lie in (1, inf]");
  }
  if (!std::isinf(alpha) && alpha > 1.0 && alpha < kMinFiniteAlpha) {
    throw_error(Errc::kInvalidParam,
                "orders in (1, 1+1e-6) are rejected: alpha/(alpha-1) "
                "is numerically unstable there");
  }
  return alpha;
}

// ||a||_alpha with the max factored out, so large orders neither overflow
// nor collapse to 0/0.
double alpha_norm(const double* a, std::size_t n, double alpha) {
  double amax = 0.0;
  for (std::size_t i = 0; i < n; ++i) amax = std::max(amax, a[i]);
  if (amax == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::pow(a[i] / amax, alpha);
  return amax * std::pow(acc, 1.0 / alpha);
}

void row_sums(const double* j, std::size_t nu, std::size_t nv, double* out) {
  for (std::size_t u = 0; u < nu; ++u) {
    double acc = 0.0;
    for (std::size_t v = 0; v < nv; ++v) acc += j[u * nv + v];
    out[u] = acc;
  }
}

void col_sums(const double* j, std::size_t nu, std::size_t nv, double* out) {
  for (std::size_t v = 0; v < nv; ++v) out[v] = 0.0;
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t v = 0; v < nv; ++v) out[v] += j[u * nv + v];
  }
}

double pc_posterior_buf(const double* j, std::size_t nu, std::size_t nv) {
  double acc = 0.0;
  for (std::size_t v = 0; v < nv; ++v) {
    double best = 0.0;
    for (std::size_t u = 0; u < nu; ++u) best = std::max(best, j[u * nv + v]);
    acc += best;
  }
  return acc;
}

double f_information_buf(const double* j, std::size_t nu, std::size_t nv,
                         const FGenerator& fgen) {
  std::vector<double> pu(nu), pv(nv);
  row_sums(j, nu, nv, pu.data());
  col_sums(j, nu, nv, pv.data());
  double acc = 0.0;
  for (std::size_t u = 0; u < nu; ++u) {
    if (pu[u] == 0.0) continue;
    for (std::size_t v = 0; v < nv; ++v) {
      if (pv[v] == 0.0) continue;
      const double prod = pu[u] * pv[v];
      acc += prod * fgen(j[u * nv + v] / prod);
    }
  }
  return acc;
}

double arimoto_buf(const double* j, std::size_t nu, std::size_t nv,
                   double alpha) {
  std::vector<double> pu(nu);
  row_sums(j, nu, nv, pu.data());
  if (std::isinf(alpha)) {
    double prior = 0.0;
    for (double p : pu) prior = std::max(prior, p);
    if (prior == 0.0) {
      throw_error(Errc::kDegenerateConditional, "joint has no mass");
    }
    return std::log(pc_posterior_buf(j, nu, nv) / prior);
  }
  double num = 0.0;
  std::vector<double> col(nu);
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t u = 0; u < nu; ++u) col[u] = j[u * nv + v];
    num += alpha_norm(col.data(), nu, alpha);
  }
  const double den = alpha_norm(pu.data(), nu, alpha);
  return alpha / (alpha - 1.0) * std::log(num / den);
}

double sibson_buf(const double* j, std::size_t nu, std::size_t nv,
                  double alpha) {
  std::vector<double> pu(nu);
  row_sums(j, nu, nv, pu.data());
  bool any_support = false;
  for (double p : pu) any_support |= (p > 0.0);
  if (!any_support) {
    throw_error(Errc::kDegenerateConditional, "joint has no mass");
  }
  if (std::isinf(alpha)) {
    double acc = 0.0;
    for (std::size_t v = 0; v < nv; ++v) {
      double best = 0.0;
      for (std::size_t u = 0; u < nu; ++u) {
        if (pu[u] > 0.0) best = std::max(best, j[u * nv + v] / pu[u]);
      }
      acc += best;
    }
    return std::log(acc);
  }
  // Term for output v: ( sum_u P_U(u) P_{V|U}(v|u)^alpha )^{1/alpha},
  // evaluated with the per-column conditional max factored out.
  double total = 0.0;
  for (std::size_t v = 0; v < nv; ++v) {
    double cmax = 0.0;
    for (std::size_t u = 0; u < nu; ++u) {
      if (pu[u] > 0.0) cmax = std::max(cmax, j[u * nv + v] / pu[u]);
    }
    if (cmax == 0.0) continue;
    double inner = 0.0;
    for (std::size_t u = 0; u < nu; ++u) {
      if (pu[u] == 0.0) continue;
      inner += pu[u] * std::pow(j[u * nv + v] / pu[u] / cmax, alpha);
    }
    total += cmax * std::pow(inner, 1.0 / alpha);
  }
  return alpha / (alpha - 1.0) * std::log(total);
}

double shannon_buf(const double* j, std::size_t nu, std::size_t nv) {
  std::vector<double> pu(nu), pv(nv);
  row_sums(j, nu, nv, pu.data());
  col_sums(j, nu, nv, pv.data());
  double acc = 0.0;
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t v = 0; v < nv; ++v) {
      const double m = j[u * nv + v];
      if (m > 0.0) acc += m * std::log(m / (pu[u] * pv[v]));
    }
  }
  return acc;
}

}  // namespace

MeasureSpec MeasureSpec::pc() { return {MeasureKind::kPc, 0.0, std::nullopt}; }

MeasureSpec MeasureSpec::f_info(FGenerator f) {
  return {MeasureKind::kFInfo, 0.0, std::move(f)};
}

MeasureSpec MeasureSpec::shannon() {
  return {MeasureKind::kShannon, 0.0, std::nullopt};
}

MeasureSpec MeasureSpec::arimoto(double alpha) {
  if (check_order(alpha) == 1.0) return shannon();
  return {MeasureKind::kArimoto, alpha, std::nullopt};
}

MeasureSpec MeasureSpec::sibson(double alpha) {
  if (check_order(alpha) == 1.0) return shannon();
  return {MeasureKind::kSibson, alpha, std::nullopt};
}

MeasureSpec MeasureSpec::max_alpha(double alpha) {
  if (check_order(alpha) == 1.0) return shannon();
  return {MeasureKind::kMaxAlpha, alpha, std::nullopt};
}

MeasureSpec MeasureSpec::parse(std::string_view text) {
  auto parse_order = [&](std::string_view inner) -> double {
    if (inner == "inf") return kAlphaInf;
    try {
      return std::stod(std::string(inner));
    } catch (const std::exception&) {
      throw_error(Errc::kParseError,
                  "bad order '" + std::string(inner) + "' in measure spec");
    }
  };
  auto order_arg = [&](std::string_view head) -> std::optional<double> {
    if (text.size() <= head.size() + 2 ||
        text.substr(0, head.size() + 1) != std::string(head) + "(" ||
        text.back() != ')') {
      return std::nullopt;
    }
    return parse_order(
        text.substr(head.size() + 1, text.size() - head.size() - 2));
  };

  if (text == "pc") return pc();
  if (text == "shannon") return shannon();
  if (text == "f:tv") return f_info(FGenerator::total_variation());
  if (text == "f:chi2") return f_info(FGenerator::chi_squared());
  if (auto a = order_arg("f:hellinger")) {
    return f_info(FGenerator::hellinger(*a));
  }
  if (auto a = order_arg("arimoto")) return arimoto(*a);
  if (auto a = order_arg("sibson")) return sibson(*a);
  if (auto a = order_arg("maxal")) return max_alpha(*a);
  throw_error(Errc::kParseError,
              "unknown measure spec '" + std::string(text) + "'");
}

std::string MeasureSpec::str() const {
  switch (kind) {
    case MeasureKind::kPc: return "pc";
    case MeasureKind::kShannon: return "shannon";
    case MeasureKind::kFInfo: return "f:" + fgen->name();
    case MeasureKind::kArimoto: return "arimoto(" + format_alpha(alpha) + ")";
    case MeasureKind::kSibson: return "sibson(" + format_alpha(alpha) + ")";
    case MeasureKind::kMaxAlpha: return "maxal(" + format_alpha(alpha) + ")";
  }
  return "?";
}

MeasureValue pc_prior(const std::vector<double>& p) {
  if (p.empty()) throw_error(Errc::kInvalidParam, "empty pmf");
  double best = 0.0;
  for (double v : p) {
    if (v < -kMassTol) throw_error(Errc::kNegativeMass, "pmf entry < 0");
    best = std::max(best, v);
  }
  return {best, Unit::kProbability};
}

MeasureValue pc_posterior(const JointDistribution& joint) {
  return {pc_posterior_buf(joint.mass().data(), joint.s_size(),
                           joint.x_size()),
          Unit::kProbability};
}

MeasureValue f_information(const JointDistribution& joint,
                           const FGenerator& fgen) {
  return {f_information_buf(joint.mass().data(), joint.s_size(),
                            joint.x_size(), fgen),
          Unit::kDivergence};
}

MeasureValue arimoto_mi(const JointDistribution& joint, double alpha) {
  check_order(alpha);
  return {arimoto_buf(joint.mass().data(), joint.s_size(), joint.x_size(),
                      alpha),
          Unit::kNats};
}

MeasureValue sibson_mi(const JointDistribution& joint, double alpha) {
  check_order(alpha);
  return {sibson_buf(joint.mass().data(), joint.s_size(), joint.x_size(),
                     alpha),
          Unit::kNats};
}

MeasureValue shannon_mi(const JointDistribution& joint) {
  return {shannon_buf(joint.mass().data(), joint.s_size(), joint.x_size()),
          Unit::kNats};
}

double measure_on_buffer(const MeasureSpec& spec, const double* joint,
                         std::size_t nu, std::size_t nv) {
  switch (spec.kind) {
    case MeasureKind::kPc: return pc_posterior_buf(joint, nu, nv);
    case MeasureKind::kFInfo:
      return f_information_buf(joint, nu, nv, *spec.fgen);
    case MeasureKind::kArimoto: return arimoto_buf(joint, nu, nv, spec.alpha);
    case MeasureKind::kSibson: return sibson_buf(joint, nu, nv, spec.alpha);
    case MeasureKind::kShannon: return shannon_buf(joint, nu, nv);
    case MeasureKind::kMaxAlpha:
      throw_error(Errc::kInvalidParam,
                  "maximal alpha-leakage is not a function of one joint");
  }
  throw_error(Errc::kInvalidParam, "unknown measure kind");
}

namespace {

// Objective sum_y ( sum_s p_s K(y|s)^alpha )^{1/alpha} with the per-column
// max of K factored out; concave in p, so the capacity search below is a
// concave maximization over the simplex.
class SibsonObjective {
 public:
  SibsonObjective(const std::vector<std::vector<double>>& channel,
                  double alpha)
      : k_(channel.size()),
        ny_(channel.empty() ? 0 : channel.front().size()),
        alpha_(alpha),
        cmax_(ny_, 0.0),
        pow_(k_ * ny_, 0.0) {
    for (std::size_t y = 0; y < ny_; ++y) {
      for (std::size_t s = 0; s < k_; ++s) {
        cmax_[y] = std::max(cmax_[y], channel[s][y]);
      }
      if (cmax_[y] == 0.0) continue;
      for (std::size_t s = 0; s < k_; ++s) {
        pow_[s * ny_ + y] = std::pow(channel[s][y] / cmax_[y], alpha_);
      }
    }
  }

  double operator()(const std::vector<double>& p) const {
    double total = 0.0;
    for (std::size_t y = 0; y < ny_; ++y) {
      if (cmax_[y] == 0.0) continue;
      double inner = 0.0;
      for (std::size_t s = 0; s < k_; ++s) {
        inner += p[s] * pow_[s * ny_ + y];
      }
      total += cmax_[y] * std::pow(inner, 1.0 / alpha_);
    }
    return total;
  }

  void gradient(const std::vector<double>& p, std::vector<double>& g) const {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t y = 0; y < ny_; ++y) {
      if (cmax_[y] == 0.0) continue;
      double inner = 0.0;
      for (std::size_t s = 0; s < k_; ++s) {
        inner += p[s] * pow_[s * ny_ + y];
      }
      if (inner <= 0.0) continue;
      const double scale =
          cmax_[y] / alpha_ * std::pow(inner, 1.0 / alpha_ - 1.0);
      for (std::size_t s = 0; s < k_; ++s) {
        g[s] += scale * pow_[s * ny_ + y];
      }
    }
  }

  double to_nats(double objective) const {
    return alpha_ / (alpha_ - 1.0) * std::log(objective);
  }

  std::size_t inputs() const { return k_; }

 private:
  std::size_t k_, ny_;
  double alpha_;
  std::vector<double> cmax_;
  std::vector<double> pow_;
};

constexpr double kCapacityTol = 1e-8;
constexpr std::size_t kCapacityMaxIter = 100000;

double golden_section_capacity(const SibsonObjective& obj) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double p) { return obj(std::vector<double>{p, 1.0 - p}); };
  double a = 0.0, b = 1.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = eval(c), fd = eval(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - phi * (b - a); fc = eval(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + phi * (b - a); fd = eval(d);
    }
  }
  double best = std::max(fc, fd);
  best = std::max(best, eval(0.0));
  best = std::max(best, eval(1.0));
  return best;
}

double ascent_capacity(const SibsonObjective& obj) {
  const std::size_t k = obj.inputs();
  std::vector<double> p(k, 1.0 / static_cast<double>(k));
  std::vector<double> g(k, 0.0);
  double value = obj(p);
  bool converged = false;
  for (std::size_t it = 0; it < kCapacityMaxIter; ++it) {
    obj.gradient(p, g);
    double mean = 0.0, gmax = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
      mean += p[s] * g[s];
      gmax = std::max(gmax, g[s]);
    }
    if (mean <= 0.0) {
      converged = true;
      break;
    }
    // Concavity bounds the remaining headroom: F(p*) - F(p) <= gmax - mean.
    // Expressed in nats that is the optimality gap of the current iterate.
    if ((gmax - mean) / value <= (1.0 - 1e-16) * kCapacityTol) {
      converged = true;
      break;
    }
    double total = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
      p[s] *= g[s] / mean;
      total += p[s];
    }
    for (std::size_t s = 0; s < k; ++s) p[s] /= total;
    value = obj(p);
  }
  if (!converged) {
    throw_error(Errc::kOptimizerNotConverged,
                "capacity ascent did not reach tolerance 1e-8 within 1e5 "
                "iterations");
  }
  // Vertex sweep catches suprema on the simplex boundary.
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<double> vertex(k, 0.0);
    vertex[s] = 1.0;
    value = std::max(value, obj(vertex));
  }
  return value;
}

// Conditional P_{Y|S} restricted to the support of P_S.
std::vector<std::vector<double>> conditional_rows(const JointDistribution& sy) {
  const std::vector<double> pu = marginal_s(sy);
  std::vector<std::vector<double>> rows;
  for (std::size_t s = 0; s < sy.s_size(); ++s) {
    if (pu[s] == 0.0) continue;
    std::vector<double> row(sy.x_size());
    for (std::size_t y = 0; y < sy.x_size(); ++y) row[y] = sy(s, y) / pu[s];
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw_error(Errc::kDegenerateConditional, "joint has no mass");
  }
  return rows;
}

}  // namespace

double sibson_capacity(const std::vector<std::vector<double>>& channel,
                       double alpha) {
  check_order(alpha);
  if (channel.empty()) {
    throw_error(Errc::kDegenerateConditional, "capacity of empty channel");
  }
  if (std::isinf(alpha)) {
    const std::size_t ny = channel.front().size();
    double acc = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double best = 0.0;
      for (const auto& row : channel) best = std::max(best, row[y]);
      acc += best;
    }
    return std::log(acc);
  }
  if (channel.size() == 1) return 0.0;
  SibsonObjective obj(channel, alpha);
  const double best = channel.size() == 2 ? golden_section_capacity(obj)
                                          : ascent_capacity(obj);
  return obj.to_nats(best);
}

MeasureValue max_alpha_leakage(const JointDistribution& q, const Mechanism& w,
                               double alpha) {
  check_order(alpha);
  const JointDistribution sy = push_forward(q, w).sy_joint;
  if (std::isinf(alpha)) return sibson_mi(sy, kAlphaInf);
  return {sibson_capacity(conditional_rows(sy), alpha), Unit::kNats};
}

MeasureValue max_alpha_utility(const Mechanism& w, double alpha) {
  check_order(alpha);
  std::vector<std::vector<double>> rows(w.x_size());
  for (std::size_t x = 0; x < w.x_size(); ++x) {
    rows[x].resize(w.n_outputs());
    for (std::size_t y = 0; y < w.n_outputs(); ++y) rows[x][y] = w(x, y);
  }
  return {sibson_capacity(rows, alpha), Unit::kNats};
}

MeasureValue measure_on_joint(const MeasureSpec& spec,
                              const JointDistribution& joint) {
  const Unit unit = spec.kind == MeasureKind::kPc ? Unit::kProbability
                    : spec.kind == MeasureKind::kFInfo ? Unit::kDivergence
                                                       : Unit::kNats;
  return {measure_on_buffer(spec, joint.mass().data(), joint.s_size(),
                            joint.x_size()),
          unit};
}

MeasureValue leakage(const MeasureSpec& spec, const JointDistribution& q,
                     const Mechanism& w) {
  if (spec.kind == MeasureKind::kMaxAlpha) {
    return max_alpha_leakage(q, w, spec.alpha);
  }
  return measure_on_joint(spec, push_forward(q, w).sy_joint);
}

MeasureValue utility(const MeasureSpec& spec, const JointDistribution& q,
                     const Mechanism& w) {
  if (spec.kind == MeasureKind::kMaxAlpha) {
    return max_alpha_utility(w, spec.alpha);
  }
  return measure_on_joint(spec, push_forward(q, w).xy_joint);
}

const char* side_name(Side side) {
  return side == Side::kPrivacy ? "privacy" : "utility";
}

MeasureValue evaluate(const MeasureSpec& spec, Side side,
                      const JointDistribution& q, const Mechanism& w) {
  return side == Side::kPrivacy ? leakage(spec, q, w) : utility(spec, q, w);
}

}  // namespace putbound
