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

#ifndef PUTBOUND_ALPHABET_H_
#define PUTBOUND_ALPHABET_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace putbound {

/// Ordered set of distinct symbol labels. The position of a label is its
/// index everywhere a distribution or channel refers to this alphabet.
class Alphabet {
 public:
  /// Throws InvalidParam if `labels` is empty or contains duplicates.
  explicit Alphabet(std::vector<std::string> labels);

  /// Labels "0", "1", ..., "size-1" (optionally prefixed).
  static Alphabet numbered(std::size_t size, std::string_view prefix = "");

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> index(std::string_view label) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.labels_ == b.labels_;
  }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) {
    return !(a == b);
  }

 private:
  std::vector<std::string> labels_;
};

}  // namespace putbound

#endif  // PUTBOUND_ALPHABET_H_
