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

#include "putbound/csv.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "putbound/error.h"

namespace putbound {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what) {
  throw_error(Errc::kParseError,
              path + ":" + std::to_string(line_no) + ": " + what);
}

// Label -> index lookup that can either consult a fixed alphabet or grow
// one in first-appearance order.
class LabelIndex {
 public:
  explicit LabelIndex(const std::optional<Alphabet>& fixed) {
    if (fixed) {
      for (std::size_t i = 0; i < fixed->size(); ++i) {
        index_[fixed->label(i)] = i;
        labels_.push_back(fixed->label(i));
      }
      fixed_ = true;
    }
  }

  std::optional<std::size_t> lookup(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    if (fixed_) return std::nullopt;
    const std::size_t i = labels_.size();
    labels_.push_back(label);
    index_[label] = i;
    return i;
  }

  Alphabet alphabet() const { return Alphabet(labels_); }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> labels_;
  bool fixed_ = false;
};

}  // namespace

SampleSet read_samples_csv(const std::string& path,
                           const SampleCsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw_error(Errc::kParseError, "cannot open '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) parse_fail(path, 1, "missing header row");
  ++line_no;
  if (split_line(strip_cr(line)).size() != 2) {
    parse_fail(path, line_no, "header must have exactly two columns");
  }

  LabelIndex s_index(options.s_alphabet);
  LabelIndex x_index(options.x_alphabet);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string clean = strip_cr(line);
    if (clean.empty()) continue;
    const std::vector<std::string> fields = split_line(clean);
    if (fields.size() != 2) {
      parse_fail(path, line_no, "expected two comma-separated fields");
    }
    const auto si = s_index.lookup(fields[0]);
    if (!si) parse_fail(path, line_no, "label '" + fields[0] +
                                           "' not in the fixed S alphabet");
    const auto xi = x_index.lookup(fields[1]);
    if (!xi) parse_fail(path, line_no, "label '" + fields[1] +
                                           "' not in the fixed X alphabet");
    pairs.emplace_back(static_cast<std::uint32_t>(*si),
                       static_cast<std::uint32_t>(*xi));
  }
  if (pairs.empty()) {
    throw_error(Errc::kEmptySampleSet, "'" + path + "' holds no samples");
  }
  return SampleSet(s_index.alphabet(), x_index.alphabet(), std::move(pairs));
}

void write_samples_csv(const std::string& path, const SampleSet& samples) {
  std::ofstream out(path);
  if (!out) throw_error(Errc::kParseError, "cannot write '" + path + "'");
  out << "s,x\n";
  for (const auto& [s, x] : samples.pairs) {
    out << samples.s_alphabet.label(s) << ',' << samples.x_alphabet.label(x)
        << '\n';
  }
}

Alphabet read_alphabet_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(Errc::kParseError, "cannot open '" + path + "'");
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    const std::string clean = strip_cr(line);
    if (!clean.empty()) labels.push_back(clean);
  }
  if (labels.empty()) {
    throw_error(Errc::kParseError, "'" + path + "' holds no labels");
  }
  return Alphabet(std::move(labels));
}

void write_mechanism_csv(const std::string& path, const Mechanism& w) {
  std::ofstream out(path);
  if (!out) throw_error(Errc::kParseError, "cannot write '" + path + "'");
  out << "x";
  for (std::size_t y = 0; y < w.n_outputs(); ++y) out << ',' << (y + 1);
  out << '\n';
  for (std::size_t x = 0; x < w.x_size(); ++x) {
    out << w.x_alphabet().label(x);
    for (std::size_t y = 0; y < w.n_outputs(); ++y) {
      out << ',' << csv_double(w(x, y));
    }
    out << '\n';
  }
}

Mechanism read_mechanism_csv(const std::string& path,
                             const Alphabet& x_alphabet) {
  std::ifstream in(path);
  if (!in) throw_error(Errc::kParseError, "cannot open '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) parse_fail(path, 1, "missing header row");
  ++line_no;
  const std::size_t ny = split_line(strip_cr(line)).size() - 1;
  if (ny == 0) parse_fail(path, line_no, "header names no output columns");

  std::vector<double> rows(x_alphabet.size() * ny, 0.0);
  std::vector<bool> seen(x_alphabet.size(), false);
  while (std::getline(in, line)) {
    ++line_no;
    const std::string clean = strip_cr(line);
    if (clean.empty()) continue;
    const std::vector<std::string> fields = split_line(clean);
    if (fields.size() != ny + 1) {
      parse_fail(path, line_no, "expected " + std::to_string(ny + 1) +
                                    " fields");
    }
    const auto xi = x_alphabet.index(fields[0]);
    if (!xi) parse_fail(path, line_no, "unknown input symbol '" + fields[0] +
                                           "'");
    seen[*xi] = true;
    for (std::size_t y = 0; y < ny; ++y) {
      try {
        rows[*xi * ny + y] = std::stod(fields[y + 1]);
      } catch (const std::exception&) {
        parse_fail(path, line_no, "bad probability '" + fields[y + 1] + "'");
      }
    }
  }
  for (std::size_t x = 0; x < seen.size(); ++x) {
    if (!seen[x]) {
      throw_error(Errc::kParseError, "'" + path + "' misses a row for '" +
                                         x_alphabet.label(x) + "'");
    }
  }
  return Mechanism(x_alphabet, ny, std::move(rows));
}

std::string csv_double(double v) {
  char buf[40];
  // Shortest representation that round-trips: try increasing precision.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

}  // namespace putbound
