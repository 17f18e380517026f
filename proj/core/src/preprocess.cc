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

#include "putbound/preprocess.h"

#include <cmath>

#include "json.hpp"
#include "putbound/error.h"
#include "putbound/mechanisms.h"

namespace putbound {

namespace {

MergeMap build_map(const Alphabet& x_alphabet,
                   const std::vector<double>& x_marginal, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw_error(Errc::kInvalidParam, "gamma must lie in [0,1]");
  }
  MergeMap map{gamma, {}, kMergedLabel, {}, Alphabet({kMergedLabel})};
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < x_alphabet.size(); ++x) {
    if (x_alphabet.label(x) == kMergedLabel) {
      throw_error(Errc::kReservedLabelCollision,
                  std::string("input alphabet already contains '") +
                      kMergedLabel + "'");
    }
    if (x_marginal[x] >= gamma) {
      map.kept.push_back(x_alphabet.label(x));
      labels.push_back(x_alphabet.label(x));
    }
  }
  labels.push_back(kMergedLabel);
  map.merged_alphabet = Alphabet(labels);
  map.mapping.resize(x_alphabet.size());
  const std::size_t sink_index = labels.size() - 1;
  std::size_t next = 0;
  for (std::size_t x = 0; x < x_alphabet.size(); ++x) {
    map.mapping[x] = x_marginal[x] >= gamma ? next++ : sink_index;
  }
  return map;
}

}  // namespace

MergeResult merge_rare_symbols(const JointDistribution& p_hat, double gamma) {
  MergeMap map = build_map(p_hat.x_alphabet(), marginal_x(p_hat), gamma);
  const std::size_t ns = p_hat.s_size();
  const std::size_t nxg = map.merged_alphabet.size();
  std::vector<double> mass(ns * nxg, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t x = 0; x < p_hat.x_size(); ++x) {
      mass[s * nxg + map.mapping[x]] += p_hat(s, x);
    }
  }
  JointDistribution merged(p_hat.s_alphabet(), map.merged_alphabet,
                           std::move(mass));
  return MergeResult{std::move(merged), std::move(map)};
}

SampleSet merge_rare_samples(const SampleSet& samples, double gamma) {
  const JointDistribution emp = empirical(samples);
  MergeMap map = build_map(samples.x_alphabet, marginal_x(emp), gamma);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(samples.pairs.size());
  for (const auto& [s, x] : samples.pairs) {
    pairs.emplace_back(s, static_cast<std::uint32_t>(map.mapping[x]));
  }
  return SampleSet(samples.s_alphabet, map.merged_alphabet, std::move(pairs));
}

MergeTradeOffCheck check_merge_tradeoff(const FGenerator& fgen,
                                        const JointDistribution& p_hat,
                       double gamma, double eps, std::size_t n_outputs,
                       double step, double tolerance) {
  const MeasureSpec spec = MeasureSpec::f_info(fgen);
  const MergeResult merged = merge_rare_symbols(p_hat, gamma);
  const double eps_floor =
      std::max(epsilon_min(spec, p_hat), epsilon_min(spec, merged.merged));
  if (eps < eps_floor) {
    throw_error(Errc::kInfeasible, "eps below the smallest achievable "
                                   "leakage of the merged instance");
  }
  const double raw_value =
      brute_force_trade_off(spec, spec, p_hat, eps, n_outputs, step)
          .max_utility;
  const double merged_value =
      brute_force_trade_off(spec, spec, merged.merged, eps, n_outputs, step)
          .max_utility;
  return MergeTradeOffCheck{merged_value, raw_value,
                            merged_value <= raw_value + tolerance};
}

std::string to_json(const MergeMap& map) {
  nlohmann::json j{
      {"gamma", map.gamma}, {"kept", map.kept}, {"sink", map.sink}};
  return j.dump(2);
}

MergeMap merge_map_from_json(const std::string& text,
                             const Alphabet& x_alphabet) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw_error(Errc::kParseError, e.what());
  }
  MergeMap map{j.at("gamma").get<double>(),
               j.at("kept").get<std::vector<std::string>>(),
               j.at("sink").get<std::string>(),
               {},
               Alphabet({kMergedLabel})};
  std::vector<std::string> labels = map.kept;
  labels.push_back(map.sink);
  map.merged_alphabet = Alphabet(labels);
  map.mapping.resize(x_alphabet.size());
  for (std::size_t x = 0; x < x_alphabet.size(); ++x) {
    const auto idx = map.merged_alphabet.index(x_alphabet.label(x));
    map.mapping[x] = idx ? *idx : labels.size() - 1;
  }
  return map;
}

}  // namespace putbound
