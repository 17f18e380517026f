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

#ifndef PUTBOUND_CSV_H_
#define PUTBOUND_CSV_H_

#include <optional>
#include <string>

#include "putbound/prob.h"

namespace putbound {

struct SampleCsvOptions {
  /// Fixed alphabets; when absent, labels are inferred in first-appearance
  /// order from the file.
  std::optional<Alphabet> s_alphabet;
  std::optional<Alphabet> x_alphabet;
};

/// Reads a two-column `s,x` sample file (header row required, UTF-8, one
/// pair per line). ParseError messages carry the offending line number.
SampleSet read_samples_csv(const std::string& path,
                           const SampleCsvOptions& options = {});

/// Writes samples in the same format read_samples_csv accepts.
void write_samples_csv(const std::string& path, const SampleSet& samples);

/// One label per line, in order.
Alphabet read_alphabet_file(const std::string& path);

/// Mechanism as a matrix: header `x,1,...,N`, one row per input symbol.
void write_mechanism_csv(const std::string& path, const Mechanism& w);
Mechanism read_mechanism_csv(const std::string& path,
                             const Alphabet& x_alphabet);

/// Shortest-width decimal form that round-trips a double ("%.17g" trimmed).
std::string csv_double(double v);

}  // namespace putbound

#endif  // PUTBOUND_CSV_H_
