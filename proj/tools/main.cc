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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "experiments.h"
#include "json.hpp"
#include "putbound/bounds.h"
#include "putbound/csv.h"
#include "putbound/error.h"
#include "putbound/mechanisms.h"
#include "putbound/preprocess.h"
#include "putbound/sampling.h"
#include "putbound/version.h"

namespace putbound::tools {
namespace {

using nlohmann::json;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw_error(Errc::kParseError, "cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw_error(Errc::kParseError, path + ": " + e.what());
  }
}

Alphabet labels_or_numbered(const json& j, const char* key,
                            std::size_t size) {
  if (j.contains(key)) {
    return Alphabet(j.at(key).get<std::vector<std::string>>());
  }
  return Alphabet::numbered(size);
}

struct Source {
  JointDistribution joint;
  std::optional<SampleSet> samples;
  std::size_t sample_count = 0;
};

Source load_distribution(const json& config) {
  if (!config.contains("distribution")) {
    throw_error(Errc::kInvalidParam, "config needs a 'distribution' object");
  }
  const json& d = config.at("distribution");
  if (d.contains("matrix")) {
    const auto rows = d.at("matrix").get<std::vector<std::vector<double>>>();
    const std::size_t ns = rows.size();
    const std::size_t nx = rows.empty() ? 0 : rows.front().size();
    JointDistribution joint(labels_or_numbered(d, "s_labels", ns),
                            labels_or_numbered(d, "x_labels", nx), rows,
                            d.value("normalize", false));
    return Source{std::move(joint), std::nullopt, 0};
  }
  if (d.contains("pq")) {
    const auto pq = d.at("pq").get<std::vector<double>>();
    if (pq.size() != 2) {
      throw_error(Errc::kInvalidParam, "'pq' takes exactly two entries");
    }
    return Source{bernoulli_bsc_joint(pq[0], pq[1]), std::nullopt, 0};
  }
  if (d.contains("csv")) {
    SampleCsvOptions opts;
    if (d.contains("s_alphabet")) {
      opts.s_alphabet = read_alphabet_file(d.at("s_alphabet"));
    }
    if (d.contains("x_alphabet")) {
      opts.x_alphabet = read_alphabet_file(d.at("x_alphabet"));
    }
    SampleSet samples = read_samples_csv(d.at("csv"), opts);
    JointDistribution joint = empirical(samples);
    const std::size_t count = samples.pairs.size();
    return Source{std::move(joint), std::move(samples), count};
  }
  throw_error(Errc::kInvalidParam,
              "'distribution' needs 'matrix', 'pq' or 'csv'");
}

Mechanism load_mechanism(const json& config, const Alphabet& x_alphabet) {
  if (!config.contains("mechanism")) {
    throw_error(Errc::kInvalidParam, "config needs a 'mechanism' object");
  }
  const json& m = config.at("mechanism");
  if (m.is_string()) {
    const std::string kind = m.get<std::string>();
    if (kind == "identity") return identity_channel(x_alphabet);
    if (kind == "constant") return constant_channel(x_alphabet);
    throw_error(Errc::kInvalidParam, "unknown mechanism '" + kind + "'");
  }
  if (m.contains("rows")) {
    return Mechanism(x_alphabet,
                     m.at("rows").get<std::vector<std::vector<double>>>());
  }
  if (m.contains("csv")) return read_mechanism_csv(m.at("csv"), x_alphabet);
  if (m.contains("rr")) {
    return randomized_response(m.at("rr").get<double>(), x_alphabet);
  }
  if (m.contains("z")) {
    const json& z = m.at("z");
    return z_channel(z.at("xbar").get<std::size_t>(),
                     z.at("zeta").get<double>(), x_alphabet);
  }
  throw_error(Errc::kInvalidParam,
              "'mechanism' needs 'rows', 'csv', 'rr', 'z', 'identity' or "
              "'constant'");
}

FamilySpec load_family(const json& config) {
  if (!config.contains("family")) return FamilySpec::rr();
  const json& f = config.at("family");
  if (f.is_string()) {
    const std::string kind = f.get<std::string>();
    if (kind == "rr") return FamilySpec::rr();
    if (kind == "z") return FamilySpec::z();
    throw_error(Errc::kInvalidParam, "unknown family '" + kind + "'");
  }
  const std::string kind = f.at("kind").get<std::string>();
  if (kind == "rr") return FamilySpec::rr();
  if (kind == "z") {
    if (f.contains("xbar")) {
      return FamilySpec::z(f.at("xbar").get<std::size_t>());
    }
    return FamilySpec::z();
  }
  if (kind == "grid") {
    return FamilySpec::grid(f.at("outputs").get<std::size_t>(),
                            f.at("step").get<double>());
  }
  throw_error(Errc::kInvalidParam, "unknown family kind '" + kind + "'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw_error(Errc::kParseError, "cannot write '" + path + "'");
  out << text;
}

// Every file-producing command drops a sidecar echoing the effective
// config, so outputs are traceable to their inputs.
void write_sidecar(const std::string& output, const std::string& command,
                   const json& config) {
  json meta{{"command", command}, {"version", kVersion}, {"config", config}};
  write_text(output + ".meta.json", meta.dump(2) + "\n");
}

void emit(const std::string& output, const std::string& command,
          const json& config, const std::string& text) {
  if (output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text(output, text);
    write_sidecar(output, command, config);
  }
}

json measure_json(const MeasureValue& v, const MeasureSpec& spec) {
  const char* unit = v.unit == Unit::kProbability ? "probability"
                     : v.unit == Unit::kNats      ? "nats"
                                                  : "divergence";
  return json{{"measure", spec.str()}, {"value", v.value}, {"unit", unit}};
}

int cmd_measure(const json& config, const std::string& output) {
  const Source src = load_distribution(config);
  const Mechanism w = load_mechanism(config, src.joint.x_alphabet());
  const MeasureSpec spec_l = MeasureSpec::parse(config.value("leakage", "pc"));
  const MeasureSpec spec_u = MeasureSpec::parse(config.value("utility", "pc"));
  json report{
      {"leakage", measure_json(leakage(spec_l, src.joint, w), spec_l)},
      {"utility", measure_json(utility(spec_u, src.joint, w), spec_u)}};
  emit(output, "measure", config, report.dump(2) + "\n");
  return 0;
}

int cmd_bound(const json& config, const std::string& output) {
  const Source src = load_distribution(config);
  std::size_t n = config.value("n", src.sample_count);
  if (n == 0) {
    throw_error(Errc::kInvalidParam,
                "sample size 'n' required when no sample file is given");
  }
  const double beta = config.value("beta", 0.1);
  std::vector<std::string> measures =
      config.value("measures", std::vector<std::string>{});
  if (measures.empty() && config.contains("leakage")) {
    measures.push_back(config.at("leakage").get<std::string>());
  }
  if (measures.empty()) {
    throw_error(Errc::kInvalidParam, "config needs a 'measures' list");
  }
  std::vector<Side> sides;
  for (const std::string& name :
       config.value("sides", std::vector<std::string>{"privacy", "utility"})) {
    if (name == "privacy") {
      sides.push_back(Side::kPrivacy);
    } else if (name == "utility") {
      sides.push_back(Side::kUtility);
    } else {
      throw_error(Errc::kInvalidParam, "unknown side '" + name + "'");
    }
  }
  std::ostringstream csv;
  csv << "measure,side,n,beta,radius,constant,bound\n";
  for (const std::string& name : measures) {
    const MeasureSpec spec = MeasureSpec::parse(name);
    for (Side side : sides) {
      const RobustnessCertificate cert =
          discrepancy_bound(spec, side, src.joint, n, beta);
      csv << spec.str() << ',' << side_name(side) << ',' << n << ','
          << csv_double(beta) << ',' << csv_double(cert.radius.value) << ','
          << csv_double(cert.constant) << ',' << csv_double(cert.bound)
          << '\n';
    }
  }
  emit(output, "bound", config, csv.str());
  return 0;
}

int cmd_design(const json& config, const std::string& output) {
  const Source src = load_distribution(config);
  const MeasureSpec spec_l = MeasureSpec::parse(config.value("leakage", "pc"));
  const MeasureSpec spec_u = MeasureSpec::parse(config.value("utility", "pc"));
  if (!config.contains("eps")) {
    throw_error(Errc::kInvalidParam, "design needs 'eps'");
  }
  const DesignResult result =
      design_in_family(load_family(config), spec_l, spec_u, src.joint,
                       config.at("eps").get<double>());
  if (config.contains("mechanism_csv")) {
    write_mechanism_csv(config.at("mechanism_csv"), result.mechanism);
  }
  emit(output, "design", config, to_json(result) + "\n");
  return 0;
}

int cmd_uniform(const json& config, const std::string& output) {
  const Source src = load_distribution(config);
  const MeasureSpec spec_l = MeasureSpec::parse(config.value("leakage", "pc"));
  const MeasureSpec spec_u = MeasureSpec::parse(config.value("utility", "pc"));
  if (!config.contains("eps") || !config.contains("r")) {
    throw_error(Errc::kInvalidParam, "uniform needs 'eps' and 'r'");
  }
  const UniformDesignResult result = uniform_design(
      spec_l, spec_u, src.joint, config.at("eps").get<double>(),
      config.at("r").get<double>(), load_family(config),
      config.value("ball_samples", std::size_t{500}),
      config.value("seed", std::uint64_t{0}));
  if (config.contains("mechanism_csv")) {
    write_mechanism_csv(config.at("mechanism_csv"), result.inner.mechanism);
  }
  emit(output, "uniform", config, to_json(result) + "\n");
  return 0;
}

int cmd_preprocess(const json& config, const std::string& output) {
  const Source src = load_distribution(config);
  if (!src.samples.has_value()) {
    throw_error(Errc::kInvalidParam,
                "preprocess needs a sample file distribution source");
  }
  const double gamma = config.value("gamma", 0.0);
  const SampleSet merged = merge_rare_samples(*src.samples, gamma);
  const MergeResult merge = merge_rare_symbols(src.joint, gamma);
  if (output.empty()) {
    throw_error(Errc::kInvalidParam, "preprocess needs an output path");
  }
  write_samples_csv(output, merged);
  const std::string map_path = config.value("map_out", output + ".map.json");
  write_text(map_path, to_json(merge.map) + "\n");
  write_sidecar(output, "preprocess", config);
  return 0;
}

ExperimentConfig experiment_config(const json& config) {
  Source src = load_distribution(config);
  ExperimentConfig ec{
      std::move(src.joint),
      MeasureSpec::parse(config.value("leakage", "pc")),
      MeasureSpec::parse(config.value("utility", "pc")),
      load_family(config),
      config.value("n", std::vector<std::size_t>{}),
      config.value("beta", 0.1),
      config.value("eps", 0.65),
      config.value("eps_grid", std::vector<double>{}),
      config.value("r", std::vector<double>{}),
      config.value("grid_outputs", std::size_t{2}),
      config.value("grid_step", 0.01),
      config.value("ball_samples", std::size_t{500}),
      config.value("trials", std::size_t{20}),
      0,
      std::move(src.samples)};
  if (!config.contains("seed")) {
    throw_error(Errc::kInvalidParam,
                "experiments require an explicit 'seed' (or --seed)");
  }
  ec.seed = config.at("seed").get<std::uint64_t>();
  return ec;
}

int cmd_experiment(const std::string& which, const json& config,
                   const std::string& output) {
  if (output.empty()) {
    throw_error(Errc::kInvalidParam, "experiments need an output path");
  }
  const ExperimentConfig ec = experiment_config(config);
  std::string csv;
  if (which == "discrepancy") {
    csv = run_discrepancy(ec);
  } else if (which == "convergence") {
    csv = run_convergence(ec);
  } else if (which == "uniform") {
    csv = run_uniform(ec);
  } else {
    throw_error(Errc::kInvalidParam, "unknown experiment '" + which + "'");
  }
  write_text(output, csv);
  write_sidecar(output, "experiment " + which, config);
  return 0;
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> eps;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> r;
  std::optional<std::size_t> trials;
  std::optional<std::string> leakage;
  std::optional<std::string> utility;
  std::optional<std::string> samples;

  void apply(json& config) const {
    if (seed) config["seed"] = *seed;
    if (eps) config["eps"] = *eps;
    if (beta) config["beta"] = *beta;
    if (gamma) config["gamma"] = *gamma;
    if (r) config["r"] = *r;
    if (trials) config["trials"] = *trials;
    if (leakage) config["leakage"] = *leakage;
    if (utility) config["utility"] = *utility;
    if (samples) config["distribution"] = json{{"csv", *samples}};
  }
};

}  // namespace
}  // namespace putbound::tools

int main(int argc, char** argv) {
  using namespace putbound;
  using namespace putbound::tools;

  CLI::App app{
      "putbound: leakage/utility measures, finite-sample robustness "
      "certificates, and privacy mechanism design on finite alphabets"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path, output;
  Overrides over;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--output", output, "output file (stdout when omitted)");
  app.add_option("--seed", over.seed, "PRNG seed (overrides config)");
  app.add_option("--eps", over.eps, "leakage budget (overrides config)");
  app.add_option("--beta", over.beta, "confidence parameter");
  app.add_option("--gamma", over.gamma, "merge threshold");
  app.add_option("--r", over.r, "ball radius");
  app.add_option("--trials", over.trials, "Monte-Carlo repetitions");
  app.add_option("--leakage", over.leakage, "leakage measure spec");
  app.add_option("--utility", over.utility, "utility measure spec");
  app.add_option("--samples", over.samples, "sample CSV distribution source");

  app.add_subcommand("measure",
                     "evaluate leakage and utility for a fixed mechanism")
      ->fallthrough();
  app.add_subcommand("bound", "emit robustness certificates as a CSV table")
      ->fallthrough();
  app.add_subcommand("design", "utility-maximal mechanism at a leakage budget")
      ->fallthrough();
  app.add_subcommand("uniform",
                     "shrunk-budget design with l1-ball verification")
      ->fallthrough();
  app.add_subcommand("preprocess",
                     "merge rare X symbols below a marginal threshold")
      ->fallthrough();
  CLI::App* exp = app.add_subcommand(
      "experiment", "seeded experiment runs emitting plot-ready CSV");
  exp->fallthrough();
  std::string which;
  exp->add_option("kind", which, "discrepancy | convergence | uniform")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json config = load_config(config_path);
    over.apply(config);
    if (app.got_subcommand("measure")) return cmd_measure(config, output);
    if (app.got_subcommand("bound")) return cmd_bound(config, output);
    if (app.got_subcommand("design")) return cmd_design(config, output);
    if (app.got_subcommand("uniform")) return cmd_uniform(config, output);
    if (app.got_subcommand("preprocess")) {
      return cmd_preprocess(config, output);
    }
    if (app.got_subcommand("experiment")) {
      return cmd_experiment(which, config, output);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return errc_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
