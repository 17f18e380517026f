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

#ifndef PUTBOUND_PROB_H_
#define PUTBOUND_PROB_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "putbound/alphabet.h"

namespace putbound {

/// Mass-validation tolerance: totals (and channel rows) must be within
/// kMassTol of 1. Inputs are never renormalized silently; pass
/// `normalize = true` to request it explicitly.
inline constexpr double kMassTol = 1e-12;

/// Joint probability mass over S x X, stored row-major (S indexes rows).
/// Immutable after construction; all operations below are pure functions.
class JointDistribution {
 public:
  /// Validates dimensions, nonnegativity and total mass. With
  /// `normalize = true` a strictly positive total is rescaled to 1 instead
  /// of being rejected.
  JointDistribution(Alphabet s_alphabet, Alphabet x_alphabet,
                    std::vector<double> mass_row_major,
                    bool normalize = false);

  /// Convenience constructor from nested rows.
  JointDistribution(Alphabet s_alphabet, Alphabet x_alphabet,
                    const std::vector<std::vector<double>>& rows,
                    bool normalize = false);

  const Alphabet& s_alphabet() const { return s_alphabet_; }
  const Alphabet& x_alphabet() const { return x_alphabet_; }
  std::size_t s_size() const { return s_alphabet_.size(); }
  std::size_t x_size() const { return x_alphabet_.size(); }

  double operator()(std::size_t s, std::size_t x) const {
    return mass_[s * x_alphabet_.size() + x];
  }
  const std::vector<double>& mass() const { return mass_; }

 private:
  Alphabet s_alphabet_;
  Alphabet x_alphabet_;
  std::vector<double> mass_;
};

/// Row-stochastic channel from X to outputs {1..N}. Rows must each sum to 1
/// within kMassTol.
class Mechanism {
 public:
  Mechanism(Alphabet x_alphabet, std::size_t n_outputs,
            std::vector<double> rows_row_major);

  Mechanism(Alphabet x_alphabet, const std::vector<std::vector<double>>& rows);

  const Alphabet& x_alphabet() const { return x_alphabet_; }
  std::size_t x_size() const { return x_alphabet_.size(); }
  std::size_t n_outputs() const { return n_outputs_; }

  double operator()(std::size_t x, std::size_t y) const {
    return rows_[x * n_outputs_ + y];
  }
  const std::vector<double>& rows() const { return rows_; }

 private:
  Alphabet x_alphabet_;
  std::size_t n_outputs_;
  std::vector<double> rows_;
};

/// Paired (s, x) observations; the raw material of empirical estimation.
struct SampleSet {
  Alphabet s_alphabet;
  Alphabet x_alphabet;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

  SampleSet(Alphabet s, Alphabet x,
            std::vector<std::pair<std::uint32_t, std::uint32_t>> p);
};

/// Row sums of Q: the marginal distribution of S.
std::vector<double> marginal_s(const JointDistribution& q);
/// Column sums of Q: the marginal distribution of X.
std::vector<double> marginal_x(const JointDistribution& q);

struct PushForward {
  JointDistribution sy_joint;  // over S x Y
  JointDistribution xy_joint;  // over X x Y
};

/// Composes Q with the channel W through the chain S -> X -> Y:
///   sy(s,y) = sum_x Q(s,x) W(x,y),  xy(x,y) = (sum_s Q(s,x)) W(x,y).
/// Throws AlphabetMismatch if W is not defined on Q's X alphabet.
PushForward push_forward(const JointDistribution& q, const Mechanism& w);

/// Entrywise l1 distance between two joints on the same alphabets.
double l1_distance(const JointDistribution& q1, const JointDistribution& q2);

/// Entrywise l1 distance between two mechanisms of identical shape.
double l1_distance(const Mechanism& w1, const Mechanism& w2);

/// Plug-in estimate: mass(s,x) = count(s,x) / n. Throws EmptySampleSet.
JointDistribution empirical(const SampleSet& samples);

}  // namespace putbound

#endif  // PUTBOUND_PROB_H_
