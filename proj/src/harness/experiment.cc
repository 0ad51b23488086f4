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

#include "vfsynth/harness/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "vfsynth/core/binning.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/harness/io.h"
#include "vfsynth/harness/split.h"
#include "vfsynth/party/party.h"
#include "vfsynth/privacy/random.h"
#include "vfsynth/server/server.h"
#include "vfsynth/sketch/key_ring.h"

namespace vfsynth {
namespace {

// Labels of the independent streams derived from RunConfig::seed.
constexpr uint64_t kKeyRingStream = 1;
constexpr uint64_t kPartyStream = 2;
constexpr uint64_t kPhantomStream = 3;
constexpr uint64_t kServerStream = 4;
constexpr uint64_t kBaselineStream = 5;
constexpr uint64_t kEvalStream = 6;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string EncoderName(EncoderKind kind) {
  return kind == EncoderKind::kSketch ? "fm" : "fo";
}

absl::StatusOr<EncoderKind> ParseEncoder(const std::string& name) {
  if (name == "fm") return EncoderKind::kSketch;
  if (name == "fo") return EncoderKind::kFo;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown encoder '", name, "'; expected 'fm' or 'fo'"));
}

absl::StatusOr<BudgetPlan> ResolvePlan(const RunConfig& config) {
  BudgetPlan plan;
  if (config.plan.has_value()) {
    plan = *config.plan;
    plan.party_count = config.parties;
  } else {
    VFS_ASSIGN_OR_RETURN(plan,
                         BudgetPlan::ByName(config.plan_name, config.parties));
  }
  VFS_RETURN_IF_ERROR(plan.Validate());
  return plan;
}

absl::StatusOr<Dataset> LoadInput(const RunConfig& config) {
  if (config.input_csv.empty()) return GeneratePlanted(config.planted);
  if (config.domain_file.empty()) {
    return absl::InvalidArgumentError("an input CSV needs a domain file");
  }
  return LoadCsv(config.input_csv, config.domain_file);
}

int64_t SectionBytes(const std::vector<SectionInfo>& sections,
                     std::initializer_list<Section> wanted) {
  int64_t total = 0;
  for (const SectionInfo& s : sections) {
    for (Section w : wanted) {
      if (s.section == w) total += static_cast<int64_t>(s.payload_bytes);
    }
  }
  return total;
}

}  // namespace

absl::Status Validate(const RunConfig& config) {
  if (!(config.epsilon > 0) || !std::isfinite(config.epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive and finite");
  }
  if (!(config.delta >= 0 && config.delta < 1)) {
    return absl::InvalidArgumentError("delta must lie in [0, 1)");
  }
  if (config.parties < 1) {
    return absl::InvalidArgumentError("need at least one party");
  }
  if (!config.assignment.empty() &&
      static_cast<int>(config.assignment.size()) != config.parties) {
    return absl::InvalidArgumentError(absl::StrCat(
        "assignment lists ", config.assignment.size(), " parties but ",
        config.parties, " were configured"));
  }
  if (config.t < 1) return absl::InvalidArgumentError("t must be >= 1");
  if (!(config.gamma > 0 && config.gamma < 1)) {
    return absl::InvalidArgumentError("gamma must lie in (0, 1)");
  }
  if (config.bins < 0 || config.bins == 1) {
    return absl::InvalidArgumentError("bins must be 0 (off) or >= 2");
  }
  if (!(config.tau > 0)) return absl::InvalidArgumentError("tau must be > 0");
  if (!(config.d_c >= 0)) return absl::InvalidArgumentError("d_c must be >= 0");
  if (config.opt_rounds < 0 || config.opt_batch < 1) {
    return absl::InvalidArgumentError(
        "opt_rounds must be >= 0 and opt_batch >= 1");
  }
  if (config.marginal_samples < 1) {
    return absl::InvalidArgumentError("marginal_samples must be >= 1");
  }
  for (int l : config.lways) {
    if (l < 1) return absl::InvalidArgumentError("marginal widths must be >= 1");
  }
  if (config.threads < 1) return absl::InvalidArgumentError("threads >= 1");
  if (config.ledger_cap_epsilon.has_value() &&
      !(*config.ledger_cap_epsilon >= 0)) {
    return absl::InvalidArgumentError("ledger cap must be >= 0");
  }
  return ResolvePlan(config).status();
}

nlohmann::json ToJson(const RunConfig& c) {
  nlohmann::json j = {{"input", c.input_csv},
                      {"domain", c.domain_file},
                      {"planted", ToJson(c.planted)},
                      {"parties", c.parties},
                      {"assignment", c.assignment},
                      {"encoder", EncoderName(c.encoder)},
                      {"epsilon", c.epsilon},
                      {"delta", c.delta},
                      {"t", c.t},
                      {"gamma", c.gamma},
                      {"bins", c.bins},
                      {"tau", c.tau},
                      {"d_c", c.d_c},
                      {"opt_rounds", c.opt_rounds},
                      {"opt_batch", c.opt_batch},
                      {"seed", c.seed},
                      {"lways", c.lways},
                      {"marginal_samples", c.marginal_samples},
                      {"baseline", c.baseline},
                      {"threads", c.threads},
                      {"output_dir", c.output_dir}};
  if (c.plan.has_value()) {
    j["plan"] = {{"loc_mrf", c.plan->loc_mrf},
                 {"loc_enc", c.plan->loc_enc},
                 {"binning", c.plan->binning},
                 {"noisy_count_share", c.plan->noisy_count_share}};
  } else {
    j["plan"] = c.plan_name;
  }
  if (c.ledger_cap_epsilon.has_value()) {
    j["ledger_cap_epsilon"] = *c.ledger_cap_epsilon;
  }
  return j;
}

absl::StatusOr<RunConfig> RunConfigFromJson(const nlohmann::json& json,
                                            RunConfig c) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("config must be a JSON object");
  }
  static const std::set<std::string> kKeys = {
      "input", "domain", "planted", "parties", "assignment", "encoder",
      "epsilon", "delta", "plan", "t", "gamma", "bins", "tau", "d_c",
      "opt_rounds", "opt_batch", "seed", "lways", "marginal_samples",
      "baseline", "threads", "output_dir", "ledger_cap_epsilon"};
  for (const auto& [key, value] : json.items()) {
    if (!kKeys.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown config key '", key, "'"));
    }
  }
  try {
    c.input_csv = json.value("input", c.input_csv);
    c.domain_file = json.value("domain", c.domain_file);
    if (json.contains("planted")) {
      VFS_ASSIGN_OR_RETURN(c.planted, PlantedFromJson(json["planted"]));
    }
    c.parties = json.value("parties", c.parties);
    if (json.contains("assignment")) {
      c.assignment = json["assignment"].get<std::vector<std::vector<int>>>();
    }
    if (json.contains("encoder")) {
      VFS_ASSIGN_OR_RETURN(c.encoder,
                           ParseEncoder(json["encoder"].get<std::string>()));
    }
    c.epsilon = json.value("epsilon", c.epsilon);
    c.delta = json.value("delta", c.delta);
    if (json.contains("plan")) {
      const nlohmann::json& p = json["plan"];
      if (p.is_string()) {
        c.plan_name = p.get<std::string>();
        c.plan.reset();
      } else {
        BudgetPlan plan;
        plan.name = "custom";
        plan.loc_mrf = p.at("loc_mrf").get<double>();
        plan.loc_enc = p.at("loc_enc").get<double>();
        plan.binning = p.value("binning", 0.0);
        plan.noisy_count_share = p.value("noisy_count_share", 0.0);
        c.plan = plan;
      }
    }
    c.t = json.value("t", c.t);
    c.gamma = json.value("gamma", c.gamma);
    c.bins = json.value("bins", c.bins);
    c.tau = json.value("tau", c.tau);
    c.d_c = json.value("d_c", c.d_c);
    c.opt_rounds = json.value("opt_rounds", c.opt_rounds);
    c.opt_batch = json.value("opt_batch", c.opt_batch);
    c.seed = json.value("seed", c.seed);
    c.lways = json.value("lways", c.lways);
    c.marginal_samples = json.value("marginal_samples", c.marginal_samples);
    c.baseline = json.value("baseline", c.baseline);
    c.threads = json.value("threads", c.threads);
    c.output_dir = json.value("output_dir", c.output_dir);
    if (json.contains("ledger_cap_epsilon")) {
      c.ledger_cap_epsilon = json["ledger_cap_epsilon"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad config: ", std::string(e.what())));
  }
  return c;
}

nlohmann::json MetricsReport::ToJson() const {
  nlohmann::json j;
  auto summaries = [](const std::vector<TvdSummary>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const TvdSummary& s : v) out.push_back(vfsynth::ToJson(s));
    return out;
  };
  j["tvd"] = summaries(tvd);
  if (!baseline_tvd.empty()) j["baseline_tvd"] = summaries(baseline_tvd);
  j["ledger"] = ledger;
  j["ledger_epsilon"] = ledger_epsilon;
  j["ledger_delta"] = ledger_delta;
  j["timing_seconds"] = timing;
  nlohmann::json parts = nlohmann::json::array();
  for (const PartySize& s : sizes) {
    parts.push_back({{"party", s.party_id},
                     {"envelope_bytes", s.envelope_bytes},
                     {"encoding_bytes", s.encoding_bytes},
                     {"encoding_entries", s.encoding_entries},
                     {"model_bytes", s.model_bytes}});
  }
  j["message_sizes"] = parts;
  j["records"] = records;
  j["n_hat"] = n_hat;
  j["synthetic_records"] = synthetic_records;
  return j;
}

absl::StatusOr<Dataset> IndependentBaseline(
    const std::vector<PartyMessage>& messages, const Schema& schema,
    int64_t count, uint64_t seed) {
  VFS_ASSIGN_OR_RETURN(std::vector<MrfModel> models,
                       LocalModels(messages, schema));
  std::vector<Dataset> parts;
  for (size_t i = 0; i < models.size(); ++i) {
    Rng rng = MakeRng(seed, {kBaselineStream, i});
    VFS_ASSIGN_OR_RETURN(Dataset part, models[i].Sample(count, rng));
    parts.push_back(std::move(part));
  }
  return Dataset::JoinColumns(parts);
}

absl::StatusOr<std::vector<TvdSummary>> EvaluateTables(
    const Dataset& real, const Dataset& synth, const std::vector<int>& lways,
    int64_t samples, uint64_t seed) {
  std::vector<TvdSummary> out;
  for (int l : lways) {
    if (l > real.schema().size()) continue;
    Rng rng = MakeRng(seed, {kEvalStream, static_cast<uint64_t>(l)});
    VFS_ASSIGN_OR_RETURN(TvdSummary s,
                         EvalLwayTvd(real, synth, l, samples, rng));
    out.push_back(s);
  }
  return out;
}

absl::StatusOr<ExperimentResult> RunExperiment(const RunConfig& config) {
  VFS_RETURN_IF_ERROR(Validate(config));
  VFS_ASSIGN_OR_RETURN(const BudgetPlan plan, ResolvePlan(config));
  ExperimentResult out;
  const Clock::time_point start = Clock::now();

  VFS_ASSIGN_OR_RETURN(out.real, LoadInput(config));
  const Schema& schema = out.real.schema();
  const int d = schema.size();
  const int64_t n = out.real.num_rows();
  out.metrics.records = n;
  out.metrics.timing["load"] = Seconds(start);

  std::vector<std::vector<int>> split;
  if (config.assignment.empty()) {
    VFS_ASSIGN_OR_RETURN(split, SplitUniform(d, config.parties));
  } else {
    VFS_ASSIGN_OR_RETURN(split, ValidatePartition(config.assignment, d));
  }

  double delta = config.delta;
  if (delta == 0) {
    if (n == 0) {
      return absl::InvalidArgumentError(
          "delta defaults to 1/n and the table is empty; set delta");
    }
    delta = 1.0 / static_cast<double>(n);
  }
  VFS_ASSIGN_OR_RETURN(const PrivacyBudget total,
                       PrivacyBudget::Create(config.epsilon, delta));
  const bool binning_active =
      config.bins > 0 && BinningChangesAny(schema, config.bins);
  VFS_ASSIGN_OR_RETURN(const StageBudgets stages,
                       Allocate(plan, total, binning_active));

  // The key ring stands in for the parties' shared secret; the server only
  // ever sees the published key ids inside the messages.
  const KeyRing ring = KeyRing::FromMasterSeed(
      DeriveStream(config.seed, {kKeyRingStream}), config.t);

  std::vector<PartyConfig> party_configs(config.parties);
  std::vector<Dataset> party_data(config.parties);
  for (int i = 0; i < config.parties; ++i) {
    PartyConfig& pc = party_configs[i];
    pc.party_id = i;
    pc.party_count = config.parties;
    pc.encoder = config.encoder;
    pc.stages = stages;
    pc.bin_count = binning_active ? config.bins : 0;
    pc.tau = config.tau;
    pc.emit_count = i == 0;
    pc.sketch.gamma = config.gamma;
    pc.sketch.t = config.t;
    pc.sketch.seed = DeriveStream(config.seed, {kPhantomStream});
    pc.sketch.threads = config.threads;
    pc.seed = DeriveStream(config.seed, {kPartyStream});
    VFS_ASSIGN_OR_RETURN(party_data[i], out.real.Project(split[i]));
  }

  Clock::time_point phase = Clock::now();
  std::vector<std::future<absl::StatusOr<PartyOutput>>> futures;
  for (int i = 0; i < config.parties; ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      return RunParty(party_data[i], party_configs[i],
                      config.encoder == EncoderKind::kSketch ? &ring : nullptr);
    }));
  }
  std::vector<PartyOutput> outputs;
  absl::Status party_status;
  for (auto& f : futures) {
    absl::StatusOr<PartyOutput> r = f.get();
    if (!r.ok()) {
      if (party_status.ok()) party_status = r.status();
      continue;
    }
    outputs.push_back(*std::move(r));
  }
  VFS_RETURN_IF_ERROR(party_status);
  out.metrics.timing["parties"] = Seconds(phase);

  PrivacyBudget cap = total;
  if (config.ledger_cap_epsilon.has_value()) {
    cap.epsilon = *config.ledger_cap_epsilon;
  }
  out.ledger = SpendLedger(cap);
  for (const PartyOutput& po : outputs) {
    absl::Status s = out.ledger.Absorb(po.ledger);
    if (!s.ok()) {
      return absl::ResourceExhaustedError(
          absl::StrCat("privacy ledger overspent: ", s.message()));
    }
  }
  out.metrics.ledger = out.ledger.ToJson();
  out.metrics.ledger_epsilon = out.ledger.TotalEpsilon();
  out.metrics.ledger_delta = out.ledger.TotalDelta();

  std::vector<PartyMessage> messages;
  for (PartyOutput& po : outputs) {
    std::vector<uint8_t> bytes = Serialize(po.message);
    VFS_ASSIGN_OR_RETURN(std::vector<SectionInfo> sections,
                         ListSections(bytes));
    PartySize size;
    size.party_id = po.message.header.value().party_id;
    size.envelope_bytes = static_cast<int64_t>(bytes.size());
    size.encoding_bytes = SectionBytes(sections, {Section::kEncoding});
    size.encoding_entries = EncodingEntryCount(po.message);
    size.model_bytes = SectionBytes(
        sections, {Section::kGraph, Section::kMarginals, Section::kTheta});
    out.metrics.sizes.push_back(size);
    out.envelopes.push_back(std::move(bytes));
    messages.push_back(std::move(po.message));
  }

  ServerConfig sc;
  sc.tau = config.tau;
  sc.d_c = config.d_c;
  sc.opt.rounds = config.opt_rounds;
  sc.opt.batch = config.opt_batch;
  sc.opt.threads = config.threads;
  sc.threads = config.threads;
  sc.seed = DeriveStream(config.seed, {kServerStream});
  phase = Clock::now();
  VFS_ASSIGN_OR_RETURN(ServerResult server, RunServer(out.envelopes, sc));
  out.metrics.timing["server"] = Seconds(phase);
  out.metrics.n_hat = server.n_hat;
  out.synthetic = std::move(server.synthetic);
  out.metrics.synthetic_records = out.synthetic.num_rows();

  phase = Clock::now();
  VFS_ASSIGN_OR_RETURN(out.metrics.tvd,
                       EvaluateTables(out.real, out.synthetic, config.lways,
                                      config.marginal_samples, config.seed));
  if (config.baseline) {
    VFS_ASSIGN_OR_RETURN(
        out.baseline,
        IndependentBaseline(messages, schema, out.synthetic.num_rows(),
                            config.seed));
    VFS_ASSIGN_OR_RETURN(
        out.metrics.baseline_tvd,
        EvaluateTables(out.real, out.baseline, config.lways,
                       config.marginal_samples, config.seed));
  }
  out.metrics.timing["evaluation"] = Seconds(phase);
  out.metrics.timing["total"] = Seconds(start);

  out.report = std::move(server.report);
  out.report["config"] = ToJson(config);
  out.report["budget"] = {
      {"plan", plan.name},
      {"epsilon", total.epsilon},
      {"delta", total.delta},
      {"binning_active", binning_active},
      {"loc_mrf_per_party_epsilon", stages.loc_mrf_per_party.epsilon},
      {"encoding_epsilon", stages.encoding.epsilon},
      {"noisy_count_epsilon", stages.noisy_count_epsilon},
      {"binning_epsilon", stages.binning_epsilon}};
  out.report["ledger"] = out.metrics.ledger;
  return out;
}

absl::Status WriteOutputs(const ExperimentResult& result,
                          const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrCat("cannot create ", dir, ": ", ec.message()));
  }
  const std::filesystem::path base(dir);
  VFS_RETURN_IF_ERROR(WriteFile((base / "synthetic.csv").string(),
                                FormatCsv(result.synthetic)));
  VFS_RETURN_IF_ERROR(
      WriteFile((base / "report.json").string(), result.report.dump(2)));
  VFS_RETURN_IF_ERROR(WriteFile((base / "metrics.json").string(),
                                result.metrics.ToJson().dump(2)));
  return WriteFile((base / "ledger.json").string(),
                   result.ledger.ToJson().dump(2));
}

absl::StatusOr<std::vector<SweepPoint>> RunSweep(
    const RunConfig& base, const std::vector<double>& epsilons,
    const std::vector<int>& parties, const std::vector<uint64_t>& seeds,
    int concurrency) {
  std::vector<SweepPoint> points;
  for (double eps : epsilons) {
    for (int m : parties) {
      for (uint64_t seed : seeds) points.push_back({eps, m, seed, {}, {}});
    }
  }
  std::vector<absl::Status> status(points.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < points.size(); i = next++) {
      RunConfig c = base;
      c.epsilon = points[i].epsilon;
      c.parties = points[i].parties;
      c.seed = points[i].seed;
      absl::StatusOr<ExperimentResult> r = RunExperiment(c);
      if (!r.ok()) {
        status[i] = r.status();
        continue;
      }
      points[i].tvd = r->metrics.tvd;
      points[i].baseline_tvd = r->metrics.baseline_tvd;
    }
  };
  const int workers =
      std::max(1, std::min<int>(concurrency, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  for (size_t i = 0; i < points.size(); ++i) {
    if (!status[i].ok()) {
      return absl::Status(
          status[i].code(),
          absl::StrCat("run epsilon=", points[i].epsilon, " parties=",
                       points[i].parties, " seed=", points[i].seed, ": ",
                       status[i].message()));
    }
  }
  return points;
}

std::string FormatSweepTsv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "epsilon\tparties\tseed\tl\ttvd\ttvd_std\tbaseline\n";
  for (const SweepPoint& p : points) {
    for (size_t k = 0; k < p.tvd.size(); ++k) {
      out << p.epsilon << '\t' << p.parties << '\t' << p.seed << '\t'
          << p.tvd[k].l << '\t' << p.tvd[k].mean << '\t' << p.tvd[k].std
          << '\t';
      if (k < p.baseline_tvd.size()) {
        out << p.baseline_tvd[k].mean;
      } else {
        out << "NA";
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace vfsynth
