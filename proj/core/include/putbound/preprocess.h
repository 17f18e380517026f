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

#ifndef PUTBOUND_PREPROCESS_H_
#define PUTBOUND_PREPROCESS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "putbound/measure.h"
#include "putbound/prob.h"

namespace putbound {

/// Label of the sink symbol absorbing low-mass X symbols. Reserved: inputs
/// carrying it are rejected with ReservedLabelCollision.
inline constexpr const char* kMergedLabel = "__merged__";

/// Deterministic merge of X symbols whose empirical marginal falls below
/// gamma into the sink symbol. The merged alphabet keeps the surviving
/// labels in their original order and appends the sink last.
struct MergeMap {
  double gamma = 0.0;
  std::vector<std::string> kept;   // labels with marginal >= gamma
  std::string sink = kMergedLabel;
  /// For each input X index, the index in the merged alphabet.
  std::vector<std::size_t> mapping;
  Alphabet merged_alphabet;

  std::size_t apply(std::size_t x_index) const { return mapping[x_index]; }
};

struct MergeResult {
  JointDistribution merged;
  MergeMap map;
};

/// Applies the merge to an empirical distribution: kept columns pass
/// through, the rest accumulate into the sink column. Mass is conserved
/// exactly and every kept column keeps a marginal >= gamma.
MergeResult merge_rare_symbols(const JointDistribution& p_hat, double gamma);

/// Sample-level variant: relabels the X coordinate of every pair. The
/// empirical distribution of the result equals the merge of the empirical
/// distribution of the input.
SampleSet merge_rare_samples(const SampleSet& samples, double gamma);

struct MergeTradeOffCheck {
  double merged_value = 0.0;
  double raw_value = 0.0;
  bool ok = false;  // merged_value <= raw_value + tolerance
};

/// Compares the privacy-utility function before and after the merge, both
/// sides measured with the same f-information, using the lattice oracle
/// (complexity guard applies to both alphabets). `tolerance` absorbs the
/// lattice resolution.
MergeTradeOffCheck check_merge_tradeoff(const FGenerator& fgen,
                                        const JointDistribution& p_hat,
                       double gamma, double eps, std::size_t n_outputs,
                       double step, double tolerance = 0.02);

/// JSON document {gamma, kept, sink} for replaying the merge on test data.
std::string to_json(const MergeMap& map);

/// Rebuilds a MergeMap from its JSON document and the original alphabet.
MergeMap merge_map_from_json(const std::string& text,
                             const Alphabet& x_alphabet);

}  // namespace putbound

#endif  // PUTBOUND_PREPROCESS_H_
