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

#include "putbound/alphabet.h"

#include <unordered_set>

#include "putbound/error.h"

namespace putbound {

Alphabet::Alphabet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw_error(Errc::kInvalidParam, "alphabet must be non-empty");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw_error(Errc::kInvalidParam, "duplicate alphabet label '" + l + "'");
    }
  }
}

Alphabet Alphabet::numbered(std::size_t size, std::string_view prefix) {
  std::vector<std::string> labels;
  labels.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    labels.push_back(std::string(prefix) + std::to_string(i));
  }
  return Alphabet(std::move(labels));
}

std::optional<std::size_t> Alphabet::index(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

}  // namespace putbound
