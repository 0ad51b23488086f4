// Copyright 2026 The vfsynth Authors
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

// Command-line front end: synthesize, evaluate and sweep.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "vfsynth/harness/experiment.h"
#include "vfsynth/harness/io.h"

namespace vfsynth {
namespace {

constexpr int kExitError = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitOverspend = 3;

int ExitCode(const absl::Status& status) {
  std::cerr << "vfsynth: " << status << "\n";
  switch (status.code()) {
    case absl::StatusCode::kResourceExhausted:
      return kExitOverspend;
    case absl::StatusCode::kInvalidArgument:
      return kExitBadConfig;
    default:
      return kExitError;
  }
}

int DefaultThreads() {
  const char* env = std::getenv("VFSYNTH_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

// "0,2,4;1,3,5" -> {{0, 2, 4}, {1, 3, 5}}.
absl::StatusOr<std::vector<std::vector<int>>> ParseAssignment(
    const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream parties(text);
  std::string part;
  while (std::getline(parties, part, ';')) {
    std::vector<int> ids;
    std::stringstream items(part);
    std::string item;
    while (std::getline(items, item, ',')) {
      try {
        size_t used = 0;
        ids.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        return absl::InvalidArgumentError("bad attribute id '" + item +
                                          "' in assignment");
      }
    }
    out.push_back(std::move(ids));
  }
  return out;
}

// Options that overlay the config file. Only flags given on the command line
// are applied, so the file supplies everything else.
class RunFlags {
 public:
  void Register(CLI::App* app) {
    Add<std::string>(app, "--input", "CSV table; omit for the planted table",
                     [](RunConfig& c, const std::string& v) {
                       c.input_csv = v;
                     });
    Add<std::string>(app, "--domain", "JSON domain file for --input",
                     [](RunConfig& c, const std::string& v) {
                       c.domain_file = v;
                     });
    Add<int>(app, "--parties,-m", "number of parties",
             [](RunConfig& c, int v) { c.parties = v; });
    Add<std::string>(app, "--assignment",
                     "explicit split, e.g. \"0,2,4;1,3,5\"",
                     [this](RunConfig& c, const std::string& v) {
                       auto a = ParseAssignment(v);
                       if (!a.ok()) {
                         error_ = a.status();
                       } else {
                         c.assignment = *a;
                       }
                     });
    Add<std::string>(app, "--encoder", "fm (sketches) or fo (randomized "
                     "response)",
                     [this](RunConfig& c, const std::string& v) {
                       if (v == "fm") {
                         c.encoder = EncoderKind::kSketch;
                       } else if (v == "fo") {
                         c.encoder = EncoderKind::kFo;
                       } else {
                         error_ = absl::InvalidArgumentError(
                             "encoder must be fm or fo");
                       }
                     });
    Add<double>(app, "--epsilon", "total privacy budget",
                [](RunConfig& c, double v) { c.epsilon = v; });
    Add<double>(app, "--delta", "total failure probability (0 means 1/n)",
                [](RunConfig& c, double v) { c.delta = v; });
    Add<std::string>(app, "--plan", "budget plan: percentage or half",
                     [](RunConfig& c, const std::string& v) {
                       c.plan_name = v;
                       c.plan.reset();
                     });
    Add<int>(app, "--t", "sketch repeats",
             [](RunConfig& c, int v) { c.t = v; });
    Add<double>(app, "--gamma", "sketch geometric parameter",
                [](RunConfig& c, double v) { c.gamma = v; });
    Add<int>(app, "--bins", "bins per attribute, 0 disables",
             [](RunConfig& c, int v) { c.bins = v; });
    Add<double>(app, "--tau", "largest clique domain",
                [](RunConfig& c, double v) { c.tau = v; });
    Add<double>(app, "--d-c", "minimum mean cell count of cross marginals",
                [](RunConfig& c, double v) { c.d_c = v; });
    Add<int>(app, "--opt-rounds", "refinement rounds",
             [](RunConfig& c, int v) { c.opt_rounds = v; });
    Add<int>(app, "--opt-batch", "marginals sampled per round",
             [](RunConfig& c, int v) { c.opt_batch = v; });
    Add<uint64_t>(app, "--seed", "run seed",
                  [](RunConfig& c, uint64_t v) { c.seed = v; });
    Add<uint64_t>(app, "--data-seed", "planted table seed",
                  [](RunConfig& c, uint64_t v) { c.planted.seed = v; });
    Add<int64_t>(app, "--rows", "planted table rows",
                 [](RunConfig& c, int64_t v) { c.planted.n = v; });
    Add<std::vector<int>>(app, "--lways", "marginal widths to evaluate",
                          [](RunConfig& c, const std::vector<int>& v) {
                            c.lways = v;
                          });
    Add<int64_t>(app, "--samples", "marginals sampled per width",
                 [](RunConfig& c, int64_t v) { c.marginal_samples = v; });
    Add<int>(app, "--threads", "worker threads (default $VFSYNTH_THREADS)",
             [](RunConfig& c, int v) { c.threads = v; });
    Add<double>(app, "--ledger-cap",
                "global ledger epsilon cap (defaults to --epsilon)",
                [](RunConfig& c, double v) { c.ledger_cap_epsilon = v; });
    Add<std::string>(app, "--out", "output directory",
                     [](RunConfig& c, const std::string& v) {
                       c.output_dir = v;
                     });
    baseline_ = app->add_flag("--baseline",
                              "also evaluate the independent-parties table");
    config_ = app->add_option("--config", config_path_, "JSON config file");
  }

  absl::StatusOr<RunConfig> Resolve() {
    RunConfig c;
    c.threads = DefaultThreads();
    if (config_->count() > 0) {
      absl::StatusOr<std::string> text = ReadFile(config_path_);
      if (!text.ok()) return text.status();
      nlohmann::json json = nlohmann::json::parse(*text, nullptr, false);
      if (json.is_discarded()) {
        return absl::InvalidArgumentError(config_path_ + " is not valid JSON");
      }
      absl::StatusOr<RunConfig> loaded = RunConfigFromJson(json, c);
      if (!loaded.ok()) return loaded.status();
      c = *std::move(loaded);
    }
    for (auto& [opt, apply] : overlays_) {
      if (opt->count() > 0) apply(c);
    }
    if (baseline_->count() > 0) c.baseline = true;
    if (!error_.ok()) return error_;
    absl::Status valid = Validate(c);
    if (!valid.ok()) return valid;
    return c;
  }

 private:
  template <typename T, typename Setter>
  void Add(CLI::App* app, const std::string& name, const std::string& help,
           Setter set) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    overlays_.emplace_back(opt, [value, set](RunConfig& c) { set(c, *value); });
  }

  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>>
      overlays_;
  CLI::Option* baseline_ = nullptr;
  CLI::Option* config_ = nullptr;
  std::string config_path_;
  absl::Status error_;
};

int Synthesize(RunFlags& flags) {
  absl::StatusOr<RunConfig> config = flags.Resolve();
  if (!config.ok()) return ExitCode(config.status());
  absl::StatusOr<ExperimentResult> result = RunExperiment(*config);
  if (!result.ok()) return ExitCode(result.status());
  absl::Status written = WriteOutputs(*result, config->output_dir);
  if (!written.ok()) return ExitCode(written);
  std::cout << result->metrics.ToJson().dump(2) << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string real;
  std::string synth;
  std::string domain;
  std::vector<int> lways = {3, 4, 5};
  int64_t samples = 300;
  uint64_t seed = 1;
};

int Evaluate(const EvaluateArgs& args) {
  absl::StatusOr<Dataset> real = LoadCsv(args.real, args.domain);
  if (!real.ok()) return ExitCode(real.status());
  absl::StatusOr<Dataset> synth = LoadCsv(args.synth, args.domain);
  if (!synth.ok()) return ExitCode(synth.status());
  absl::StatusOr<std::vector<TvdSummary>> tvd =
      EvaluateTables(*real, *synth, args.lways, args.samples, args.seed);
  if (!tvd.ok()) return ExitCode(tvd.status());
  nlohmann::json out = nlohmann::json::array();
  for (const TvdSummary& s : *tvd) out.push_back(ToJson(s));
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct SweepArgs {
  std::vector<double> epsilons = {0.4, 0.8, 1.6, 3.2};
  std::vector<int> parties;
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  int jobs = 1;
};

int Sweep(RunFlags& flags, const SweepArgs& args) {
  absl::StatusOr<RunConfig> config = flags.Resolve();
  if (!config.ok()) return ExitCode(config.status());
  const std::vector<int> parties =
      args.parties.empty() ? std::vector<int>{config->parties} : args.parties;
  absl::StatusOr<std::vector<SweepPoint>> points =
      RunSweep(*config, args.epsilons, parties, args.seeds, args.jobs);
  if (!points.ok()) return ExitCode(points.status());
  const std::string tsv = FormatSweepTsv(*points);
  std::error_code ec;
  std::filesystem::create_directories(config->output_dir, ec);
  absl::Status written = WriteFile(
      (std::filesystem::path(config->output_dir) / "sweep.tsv").string(), tsv);
  if (!written.ok()) return ExitCode(written);
  std::cout << tsv;
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Differentially private synthesis over vertically split "
               "tables"};
  app.require_subcommand(1);

  CLI::App* synth = app.add_subcommand(
      "synthesize", "run every party and the server, write the outputs");
  RunFlags synth_flags;
  synth_flags.Register(synth);

  CLI::App* eval = app.add_subcommand(
      "evaluate", "l-way TVD between two CSV tables");
  EvaluateArgs eval_args;
  eval->add_option("--real", eval_args.real, "reference CSV")->required();
  eval->add_option("--synth", eval_args.synth, "synthetic CSV")->required();
  eval->add_option("--domain", eval_args.domain, "JSON domain file")
      ->required();
  eval->add_option("--lways", eval_args.lways, "marginal widths");
  eval->add_option("--samples", eval_args.samples, "marginals per width");
  eval->add_option("--seed", eval_args.seed, "sampling seed");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "repeat runs over epsilons, party counts and seeds");
  RunFlags sweep_flags;
  sweep_flags.Register(sweep);
  SweepArgs sweep_args;
  sweep->add_option("--epsilons", sweep_args.epsilons, "budgets to run");
  sweep->add_option("--party-counts", sweep_args.parties,
                    "party counts to run (default --parties)");
  sweep->add_option("--seeds", sweep_args.seeds, "run seeds");
  sweep->add_option("--jobs", sweep_args.jobs, "runs executed at once");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (*synth) return Synthesize(synth_flags);
  if (*eval) return Evaluate(eval_args);
  return Sweep(sweep_flags, sweep_args);
}

}  // namespace
}  // namespace vfsynth

int main(int argc, char** argv) { return vfsynth::Main(argc, argv); }
