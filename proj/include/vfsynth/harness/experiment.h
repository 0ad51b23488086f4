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

#ifndef VFSYNTH_HARNESS_EXPERIMENT_H_
#define VFSYNTH_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "vfsynth/core/dataset.h"
#include "vfsynth/harness/metrics.h"
#include "vfsynth/harness/planted.h"
#include "vfsynth/message/party_message.h"
#include "vfsynth/privacy/budget.h"

namespace vfsynth {

struct RunConfig {
  // Input table. When `input_csv` is empty the planted generator is used.
  std::string input_csv;
  std::string domain_file;
  PlantedConfig planted;

  int parties = 2;
  // Explicit attribute ids per party; empty means a round-robin split.
  std::vector<std::vector<int>> assignment;
  EncoderKind encoder = EncoderKind::kSketch;

  double epsilon = 2.0;
  // Zero means 1/n.
  double delta = 0;
  // "percentage" or "half"; `plan` overrides it when set.
  std::string plan_name = "percentage";
  std::optional<BudgetPlan> plan;

  int t = 2000;
  double gamma = 0.1;
  // Bins per attribute for the encoding; 0 disables binning.
  int bins = 0;
  double tau = 1e5;
  double d_c = 50;
  int opt_rounds = 10;
  int opt_batch = 8;

  uint64_t seed = 1;
  std::vector<int> lways = {3, 4, 5};
  int64_t marginal_samples = 300;
  // Also synthesize from the local models alone and evaluate that table.
  bool baseline = false;
  int threads = 1;
  // Cap of the run's global ledger; defaults to (epsilon, delta). A lower
  // cap makes the run fail when the party ledgers are absorbed.
  std::optional<double> ledger_cap_epsilon;

  // Where WriteOutputs puts its files.
  std::string output_dir = ".";
};

absl::Status Validate(const RunConfig& config);
nlohmann::json ToJson(const RunConfig& config);
// Overlays the keys present in `json` on `base`. Unknown keys are errors.
absl::StatusOr<RunConfig> RunConfigFromJson(const nlohmann::json& json,
                                            RunConfig base);

struct PartySize {
  int party_id = 0;
  int64_t envelope_bytes = 0;
  int64_t encoding_bytes = 0;
  // Sketch entries (t * sum of binned domain sizes) or FO rows.
  int64_t encoding_entries = 0;
  // Graph, marginal list and parameter sections.
  int64_t model_bytes = 0;
};

struct MetricsReport {
  std::vector<TvdSummary> tvd;
  // Filled when the baseline was requested.
  std::vector<TvdSummary> baseline_tvd;
  nlohmann::json ledger;
  double ledger_epsilon = 0;
  double ledger_delta = 0;
  // Wall-clock seconds per phase.
  std::map<std::string, double> timing;
  std::vector<PartySize> sizes;
  int64_t records = 0;
  double n_hat = 0;
  int64_t synthetic_records = 0;

  nlohmann::json ToJson() const;
};

struct ExperimentResult {
  MetricsReport metrics;
  Dataset real;
  Dataset synthetic;
  // Independent-parties table, empty unless requested.
  Dataset baseline;
  std::vector<std::vector<uint8_t>> envelopes;
  SpendLedger ledger{PrivacyBudget{}};
  // Server report plus the configuration.
  nlohmann::json report;
};

// Loads or generates the table, runs every party, the server and the
// evaluation. Any party or global ledger overspend is an error with code
// kResourceExhausted.
absl::StatusOr<ExperimentResult> RunExperiment(const RunConfig& config);

// synthetic.csv, report.json, metrics.json and ledger.json in `dir`, which
// is created if missing.
absl::Status WriteOutputs(const ExperimentResult& result,
                          const std::string& dir);

// Each party samples its own local model and the columns are joined, so no
// dependency across parties survives.
absl::StatusOr<Dataset> IndependentBaseline(
    const std::vector<PartyMessage>& messages, const Schema& schema,
    int64_t count, uint64_t seed);

// TVD summaries of `synth` against `real` for each width in `lways`. Widths
// above the attribute count are skipped.
absl::StatusOr<std::vector<TvdSummary>> EvaluateTables(
    const Dataset& real, const Dataset& synth, const std::vector<int>& lways,
    int64_t samples, uint64_t seed);

struct SweepPoint {
  double epsilon = 0;
  int parties = 0;
  uint64_t seed = 0;
  std::vector<TvdSummary> tvd;
  std::vector<TvdSummary> baseline_tvd;
};

// One run per (epsilon, parties, seed). Runs share nothing, so up to
// `concurrency` of them execute at once; the order of the result follows the
// loops epsilon, parties, seed regardless.
absl::StatusOr<std::vector<SweepPoint>> RunSweep(
    const RunConfig& base, const std::vector<double>& epsilons,
    const std::vector<int>& parties, const std::vector<uint64_t>& seeds,
    int concurrency);

// Plot-ready rows: epsilon, parties, seed, l, tvd, tvd_std, baseline.
std::string FormatSweepTsv(const std::vector<SweepPoint>& points);

}  // namespace vfsynth

#endif  // VFSYNTH_HARNESS_EXPERIMENT_H_
