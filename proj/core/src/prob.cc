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

#include "putbound/prob.h"

#include <cmath>
#include <numeric>
#include <string>

#include "putbound/error.h"

namespace putbound {

namespace {

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  flat.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw_error(Errc::kDimensionMismatch, "ragged row lengths");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

}  // namespace

JointDistribution::JointDistribution(Alphabet s_alphabet, Alphabet x_alphabet,
                                     std::vector<double> mass_row_major,
                                     bool normalize)
    : s_alphabet_(std::move(s_alphabet)),
      x_alphabet_(std::move(x_alphabet)),
      mass_(std::move(mass_row_major)) {
  const std::size_t want = s_alphabet_.size() * x_alphabet_.size();
  if (mass_.size() != want) {
    throw_error(Errc::kDimensionMismatch,
                "mass has " + std::to_string(mass_.size()) +
                    " entries, alphabets imply " + std::to_string(want));
  }
  for (double v : mass_) {
    if (v < 0.0 || std::isnan(v)) {
      throw_error(Errc::kNegativeMass,
                  "mass entry " + std::to_string(v) + " is negative");
    }
  }
  double total = std::accumulate(mass_.begin(), mass_.end(), 0.0);
  if (normalize) {
    if (total <= 0.0) {
      throw_error(Errc::kMassNotOne, "cannot normalize zero total mass");
    }
    for (double& v : mass_) v /= total;
  } else if (std::abs(total - 1.0) > kMassTol) {
    throw_error(Errc::kMassNotOne,
                "total mass " + std::to_string(total) + " is not 1");
  }
}

JointDistribution::JointDistribution(
    Alphabet s_alphabet, Alphabet x_alphabet,
    const std::vector<std::vector<double>>& rows, bool normalize)
    : JointDistribution(std::move(s_alphabet), std::move(x_alphabet),
                        flatten(rows), normalize) {}

Mechanism::Mechanism(Alphabet x_alphabet, std::size_t n_outputs,
                     std::vector<double> rows_row_major)
    : x_alphabet_(std::move(x_alphabet)),
      n_outputs_(n_outputs),
      rows_(std::move(rows_row_major)) {
  if (n_outputs_ == 0) {
    throw_error(Errc::kInvalidParam, "mechanism needs at least one output");
  }
  if (rows_.size() != x_alphabet_.size() * n_outputs_) {
    throw_error(Errc::kDimensionMismatch,
                "mechanism rows do not match |X| x N");
  }
  for (std::size_t x = 0; x < x_alphabet_.size(); ++x) {
    double row_sum = 0.0;
    for (std::size_t y = 0; y < n_outputs_; ++y) {
      double v = rows_[x * n_outputs_ + y];
      if (v < 0.0 || std::isnan(v)) {
        throw_error(Errc::kNegativeMass, "negative channel probability");
      }
      row_sum += v;
    }
    if (std::abs(row_sum - 1.0) > kMassTol) {
      throw_error(Errc::kMassNotOne,
                  "row " + std::to_string(x) + " sums to " +
                      std::to_string(row_sum));
    }
  }
}

Mechanism::Mechanism(Alphabet x_alphabet,
                     const std::vector<std::vector<double>>& rows)
    : Mechanism(std::move(x_alphabet),
                rows.empty() ? 0 : rows.front().size(), flatten(rows)) {}

SampleSet::SampleSet(Alphabet s, Alphabet x,
                     std::vector<std::pair<std::uint32_t, std::uint32_t>> p)
    : s_alphabet(std::move(s)), x_alphabet(std::move(x)), pairs(std::move(p)) {
  for (const auto& [si, xi] : pairs) {
    if (si >= s_alphabet.size() || xi >= x_alphabet.size()) {
      throw_error(Errc::kOutOfRange, "sample index outside alphabet bounds");
    }
  }
}

std::vector<double> marginal_s(const JointDistribution& q) {
  std::vector<double> m(q.s_size(), 0.0);
  for (std::size_t s = 0; s < q.s_size(); ++s) {
    for (std::size_t x = 0; x < q.x_size(); ++x) m[s] += q(s, x);
  }
  return m;
}

std::vector<double> marginal_x(const JointDistribution& q) {
  std::vector<double> m(q.x_size(), 0.0);
  for (std::size_t s = 0; s < q.s_size(); ++s) {
    for (std::size_t x = 0; x < q.x_size(); ++x) m[x] += q(s, x);
  }
  return m;
}

PushForward push_forward(const JointDistribution& q, const Mechanism& w) {
  if (w.x_alphabet() != q.x_alphabet()) {
    throw_error(Errc::kAlphabetMismatch,
                "mechanism input alphabet differs from Q's X alphabet");
  }
  const std::size_t ns = q.s_size(), nx = q.x_size(), ny = w.n_outputs();
  std::vector<double> sy(ns * ny, 0.0), xy(nx * ny, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t x = 0; x < nx; ++x) {
      const double qsx = q(s, x);
      if (qsx == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) {
        sy[s * ny + y] += qsx * w(x, y);
      }
    }
  }
  const std::vector<double> px = marginal_x(q);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      xy[x * ny + y] = px[x] * w(x, y);
    }
  }
  Alphabet y_alphabet = Alphabet::numbered(ny, "y");
  return PushForward{
      JointDistribution(q.s_alphabet(), y_alphabet, std::move(sy)),
      JointDistribution(q.x_alphabet(), y_alphabet, std::move(xy))};
}

double l1_distance(const JointDistribution& q1, const JointDistribution& q2) {
  if (q1.s_alphabet() != q2.s_alphabet() ||
      q1.x_alphabet() != q2.x_alphabet()) {
    throw_error(Errc::kAlphabetMismatch, "l1_distance on mismatched joints");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < q1.mass().size(); ++i) {
    d += std::abs(q1.mass()[i] - q2.mass()[i]);
  }
  return d;
}

double l1_distance(const Mechanism& w1, const Mechanism& w2) {
  if (w1.x_size() != w2.x_size() || w1.n_outputs() != w2.n_outputs()) {
    throw_error(Errc::kDimensionMismatch, "l1_distance on mismatched shapes");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < w1.rows().size(); ++i) {
    d += std::abs(w1.rows()[i] - w2.rows()[i]);
  }
  return d;
}

JointDistribution empirical(const SampleSet& samples) {
  if (samples.pairs.empty()) {
    throw_error(Errc::kEmptySampleSet, "cannot estimate from zero samples");
  }
  const std::size_t nx = samples.x_alphabet.size();
  std::vector<double> counts(samples.s_alphabet.size() * nx, 0.0);
  for (const auto& [s, x] : samples.pairs) counts[s * nx + x] += 1.0;
  const double n = static_cast<double>(samples.pairs.size());
  for (double& c : counts) c /= n;
  return JointDistribution(samples.s_alphabet, samples.x_alphabet,
                           std::move(counts));
}

}  // namespace putbound
