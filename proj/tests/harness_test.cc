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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "gtest/gtest.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/harness/experiment.h"
#include "vfsynth/harness/io.h"
#include "vfsynth/harness/metrics.h"
#include "vfsynth/harness/planted.h"
#include "vfsynth/harness/split.h"

namespace vfsynth {
namespace {

DomainInfo ExampleDomain() {
  const nlohmann::json json = nlohmann::json::parse(R"({"attributes": [
      {"name": "Gender", "categories": ["male", "female"]},
      {"name": "Age", "categories": ["10-20", "20-30"]},
      {"name": "Hobby", "categories": ["cook", "basketball"]}]})");
  return *ParseDomain(json);
}

TEST(IoTest, CategoryDictionaryCodesTable) {
  const std::string csv =
      "Index,Gender,Age,Hobby\n"
      "1,male,20-30,cook\n"
      "2,female,20-30,basketball\n"
      "3,female,10-20,cook\n";
  absl::StatusOr<Dataset> data = ParseCsv(csv, ExampleDomain());
  ASSERT_TRUE(data.ok()) << data.status();
  ASSERT_EQ(data->num_rows(), 3);
  ASSERT_EQ(data->num_columns(), 3);
  const std::vector<std::vector<uint32_t>> want = {
      {0, 1, 0}, {1, 1, 1}, {1, 0, 0}};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) EXPECT_EQ(data->at(r, c), want[r][c]);
  }
}

TEST(IoTest, HeaderOnlyGivesEmptyTable) {
  absl::StatusOr<Dataset> data = ParseCsv("Gender,Age,Hobby\n", ExampleDomain());
  ASSERT_TRUE(data.ok()) << data.status();
  EXPECT_EQ(data->num_rows(), 0);
}

TEST(IoTest, OutOfDomainNamesRowAndAttribute) {
  absl::StatusOr<Dataset> data =
      ParseCsv("Gender,Age,Hobby\n0,1,0\n1,2,0\n", ExampleDomain());
  ASSERT_FALSE(data.ok());
  EXPECT_NE(data.status().message().find("row 1"), std::string::npos);
  EXPECT_NE(data.status().message().find("'Age'"), std::string::npos);
}

TEST(IoTest, UnknownCategoryAndMissingColumnRejected) {
  EXPECT_FALSE(ParseCsv("Gender,Age,Hobby\nx,1,0\n", ExampleDomain()).ok());
  EXPECT_FALSE(ParseCsv("Gender,Age\n0,1\n", ExampleDomain()).ok());
  EXPECT_FALSE(ParseCsv("Gender,Age,Hobby\n0,1\n", ExampleDomain()).ok());
}

TEST(IoTest, QuotedFieldsAndFormatRoundTrip) {
  const nlohmann::json json = nlohmann::json::parse(R"({"attributes": [
      {"name": "city", "categories": ["a,b", "c\"d"]},
      {"name": "n", "domain_size": 3}]})");
  absl::StatusOr<DomainInfo> domain = ParseDomain(json);
  ASSERT_TRUE(domain.ok()) << domain.status();
  absl::StatusOr<Dataset> data =
      ParseCsv("n,city\n2,\"a,b\"\n0,\"c\"\"d\"\n", *domain);
  ASSERT_TRUE(data.ok()) << data.status();
  EXPECT_EQ(data->at(0, 0), 0u);
  EXPECT_EQ(data->at(0, 1), 2u);
  EXPECT_EQ(data->at(1, 0), 1u);
  EXPECT_EQ(FormatCsv(*data), "city,n\n0,2\n1,0\n");
  absl::StatusOr<Dataset> again = ParseCsv(FormatCsv(*data), *domain);
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(again->values(), data->values());
}

TEST(IoTest, DomainRejectsConflicts) {
  EXPECT_FALSE(ParseDomain(nlohmann::json::parse(
                   R"({"attributes": [{"name": "x", "domain_size": 1}]})"))
                   .ok());
  EXPECT_FALSE(ParseDomain(nlohmann::json::parse(
                   R"({"attributes": [{"name": "x", "domain_size": 3,
                       "categories": ["p", "q"]}]})"))
                   .ok());
  EXPECT_FALSE(ParseDomain(nlohmann::json::parse(R"({"attrs": []})")).ok());
}

TEST(SplitTest, RoundRobinSizes) {
  absl::StatusOr<std::vector<std::vector<int>>> s = SplitUniform(15, 2);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ((*s)[0].size(), 8u);
  EXPECT_EQ((*s)[1].size(), 7u);
  EXPECT_EQ((*s)[0][1], 2);
  EXPECT_EQ((*s)[1][0], 1);
}

TEST(SplitTest, OnePartyPerAttribute) {
  absl::StatusOr<std::vector<std::vector<int>>> s = SplitUniform(6, 6);
  ASSERT_TRUE(s.ok());
  for (int i = 0; i < 6; ++i) EXPECT_EQ((*s)[i], std::vector<int>{i});
  EXPECT_FALSE(SplitUniform(6, 7).ok());
  EXPECT_FALSE(SplitUniform(6, 0).ok());
}

TEST(SplitTest, ExplicitListsMustPartition) {
  EXPECT_TRUE(ValidatePartition({{2, 0}, {1}}, 3).ok());
  EXPECT_EQ((*ValidatePartition({{2, 0}, {1}}, 3))[0],
            (std::vector<int>{0, 2}));
  EXPECT_FALSE(ValidatePartition({{0, 1}, {1, 2}}, 3).ok());
  EXPECT_FALSE(ValidatePartition({{0}, {1}}, 3).ok());
  EXPECT_FALSE(ValidatePartition({{0, 1, 2}, {}}, 3).ok());
  EXPECT_FALSE(ValidatePartition({{0, 3}, {1, 2}}, 3).ok());
}

TEST(MetricsTest, ChooseValues) {
  EXPECT_EQ(Choose(6, 3), 20);
  EXPECT_EQ(Choose(15, 5), 3003);
  EXPECT_EQ(Choose(4, 5), 0);
  EXPECT_EQ(Choose(60, 30), 118264581564861424);
}

TEST(MetricsTest, SamplesCappedAtAllMarginals) {
  Rng rng(1);
  absl::StatusOr<std::vector<Marginal>> all = SampleMarginals(5, 3, 300, rng);
  ASSERT_TRUE(all.ok());
  ASSERT_EQ(all->size(), 10u);
  std::set<Marginal> distinct(all->begin(), all->end());
  EXPECT_EQ(distinct.size(), 10u);
}

TEST(MetricsTest, SampledMarginalsDistinct) {
  Rng rng(2);
  absl::StatusOr<std::vector<Marginal>> some =
      SampleMarginals(15, 3, 300, rng);
  ASSERT_TRUE(some.ok());
  ASSERT_EQ(some->size(), 300u);
  std::set<Marginal> distinct(some->begin(), some->end());
  EXPECT_EQ(distinct.size(), 300u);
  for (const Marginal& m : *some) EXPECT_EQ(m.arity(), 3);
}

TEST(MetricsTest, IdenticalTablesHaveZeroTvd) {
  PlantedConfig pc;
  pc.n = 3000;
  const Dataset data = *GeneratePlanted(pc);
  Rng rng(3);
  absl::StatusOr<TvdSummary> s = EvalLwayTvd(data, data, 3, 300, rng);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->count, 20);
  EXPECT_DOUBLE_EQ(s->mean, 0.0);
  EXPECT_DOUBLE_EQ(s->std, 0.0);
}

TEST(MetricsTest, HandComputedOneWayTvd) {
  const Schema schema = *Schema::Create({{"x", 2}});
  const Dataset real = *Dataset::FromRows(schema, {{0}, {0}, {0}, {1}});
  const Dataset synth = *Dataset::FromRows(schema, {{0}, {1}, {1}, {1}});
  Rng rng(4);
  absl::StatusOr<TvdSummary> s = EvalLwayTvd(real, synth, 1, 10, rng);
  ASSERT_TRUE(s.ok());
  // (|0.75 - 0.25| + |0.25 - 0.75|) / 2.
  EXPECT_DOUBLE_EQ(s->mean, 0.5);
}

TEST(MetricsTest, UniformNoiseFarFromSkewedPlanted) {
  PlantedConfig pc;
  pc.n = 20000;
  pc.skew = 0.8;
  const Dataset real = *GeneratePlanted(pc);
  PlantedConfig noise;
  noise.n = 20000;
  noise.skew = 0.5;
  noise.couplings.clear();
  noise.seed = 99;
  const Dataset synth = *GeneratePlanted(noise);
  Rng rng(5);
  absl::StatusOr<TvdSummary> s = EvalLwayTvd(real, synth, 3, 300, rng);
  ASSERT_TRUE(s.ok());
  // Exact value for the marginal {4, 5}: two independent attributes with
  // P(0) = 0.8 against a uniform 2x2 table.
  const double independent_pair =
      0.5 * (std::abs(0.64 - 0.25) + 2 * std::abs(0.16 - 0.25) +
             std::abs(0.04 - 0.25));
  const ContingencyHistogram a = *ComputeHistogram(real, Marginal{4, 5});
  const ContingencyHistogram b = *ComputeHistogram(synth, Marginal{4, 5});
  EXPECT_NEAR(*Tvd(a, b), independent_pair, 0.02);
  EXPECT_GT(s->mean, 0.2);
}

TEST(PlantedTest, CouplingAgreementRate) {
  PlantedConfig pc;
  pc.n = 20000;
  const Dataset data = *GeneratePlanted(pc);
  int64_t agree01 = 0, agree24 = 0;
  for (int64_t r = 0; r < data.num_rows(); ++r) {
    agree01 += data.at(r, 0) == data.at(r, 1);
    agree24 += data.at(r, 2) == data.at(r, 4);
  }
  // Copy with probability 0.9, else a fair coin agrees half the time.
  EXPECT_NEAR(agree01 / 20000.0, 0.95, 0.01);
  EXPECT_NEAR(agree24 / 20000.0, 0.5, 0.02);
}

TEST(PlantedTest, SeededAndValidated) {
  PlantedConfig pc;
  pc.n = 100;
  EXPECT_EQ(GeneratePlanted(pc)->values(), GeneratePlanted(pc)->values());
  pc.couplings = {{3, 1, 0.5}};
  EXPECT_FALSE(GeneratePlanted(pc).ok());
  pc.couplings = {{0, 1, 0.5}, {2, 1, 0.5}};
  EXPECT_FALSE(GeneratePlanted(pc).ok());
  absl::StatusOr<PlantedConfig> back = PlantedFromJson(ToJson(PlantedConfig{}));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->couplings.size(), 2u);
}

RunConfig SmallRun() {
  RunConfig c;
  c.planted.n = 2000;
  c.t = 200;
  c.epsilon = 2.0;
  c.lways = {3};
  c.marginal_samples = 20;
  c.opt_rounds = 2;
  c.seed = 7;
  return c;
}

TEST(ConfigTest, JsonRoundTripAndErrors) {
  RunConfig c = SmallRun();
  c.encoder = EncoderKind::kFo;
  c.assignment = {{0, 2, 4}, {1, 3, 5}};
  absl::StatusOr<RunConfig> back = RunConfigFromJson(ToJson(c), RunConfig{});
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(ToJson(*back), ToJson(c));
  EXPECT_FALSE(
      RunConfigFromJson(nlohmann::json{{"epsilom", 1.0}}, RunConfig{}).ok());
  EXPECT_FALSE(
      RunConfigFromJson(nlohmann::json{{"encoder", "xyz"}}, RunConfig{}).ok());
  RunConfig bad = SmallRun();
  bad.plan_name = "everything";
  EXPECT_FALSE(Validate(bad).ok());
  bad = SmallRun();
  bad.epsilon = 0;
  EXPECT_FALSE(Validate(bad).ok());
}

TEST(ExperimentTest, LedgerMatchesConfiguredBudget) {
  absl::StatusOr<ExperimentResult> r = RunExperiment(SmallRun());
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_TRUE(r->ledger.Exhausted());
  EXPECT_NEAR(r->metrics.ledger_epsilon, 2.0, 1e-9);
  EXPECT_NEAR(r->metrics.ledger_delta, 1.0 / 2000, 1e-15);
  ASSERT_EQ(r->metrics.tvd.size(), 1u);
  EXPECT_GE(r->metrics.tvd[0].mean, 0.0);
  EXPECT_LE(r->metrics.tvd[0].mean, 1.0);
  EXPECT_EQ(r->synthetic.schema(), r->real.schema());
  ASSERT_EQ(r->metrics.sizes.size(), 2u);
  // Three binary attributes per party, t sketches each.
  EXPECT_EQ(r->metrics.sizes[0].encoding_entries, 200 * 6);
}

TEST(ExperimentTest, FixedSeedGivesIdenticalCsv) {
  RunConfig c = SmallRun();
  c.threads = 1;
  absl::StatusOr<ExperimentResult> a = RunExperiment(c);
  c.threads = 3;
  absl::StatusOr<ExperimentResult> b = RunExperiment(c);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(FormatCsv(a->synthetic), FormatCsv(b->synthetic));
  c.seed = 8;
  absl::StatusOr<ExperimentResult> other = RunExperiment(c);
  ASSERT_TRUE(other.ok());
  EXPECT_NE(FormatCsv(a->synthetic), FormatCsv(other->synthetic));
}

TEST(ExperimentTest, OverspendAborts) {
  RunConfig c = SmallRun();
  c.ledger_cap_epsilon = 1.5;
  absl::StatusOr<ExperimentResult> r = RunExperiment(c);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
}

TEST(ExperimentTest, FoEncoderReleasesOneRowPerRecord) {
  RunConfig c = SmallRun();
  c.encoder = EncoderKind::kFo;
  c.parties = 3;
  absl::StatusOr<ExperimentResult> r = RunExperiment(c);
  ASSERT_TRUE(r.ok()) << r.status();
  for (const PartySize& s : r->metrics.sizes) {
    EXPECT_EQ(s.encoding_entries, 2000);
  }
  EXPECT_TRUE(r->ledger.Exhausted());
}

TEST(ExperimentTest, BaselineIgnoresCrossPartyCoupling) {
  RunConfig c = SmallRun();
  c.planted.n = 20000;
  c.baseline = true;
  absl::StatusOr<ExperimentResult> r = RunExperiment(c);
  ASSERT_TRUE(r.ok()) << r.status();
  ASSERT_EQ(r->baseline.num_rows(), r->synthetic.num_rows());
  // Attributes 0 and 1 sit on different parties, so the baseline draws them
  // independently: agreement is P(0)^2 + P(1)^2, about 0.5 for fair coins.
  int64_t agree = 0;
  for (int64_t i = 0; i < r->baseline.num_rows(); ++i) {
    agree += r->baseline.at(i, 0) == r->baseline.at(i, 1);
  }
  EXPECT_NEAR(static_cast<double>(agree) / r->baseline.num_rows(), 0.5, 0.03);
  ASSERT_EQ(r->metrics.baseline_tvd.size(), 1u);
}

TEST(ExperimentTest, WritesOutputFiles) {
  absl::StatusOr<ExperimentResult> r = RunExperiment(SmallRun());
  ASSERT_TRUE(r.ok());
  const std::string dir =
      (std::filesystem::temp_directory_path() / "vfsynth_harness_test")
          .string();
  ASSERT_TRUE(WriteOutputs(*r, dir).ok());
  for (const char* name :
       {"synthetic.csv", "report.json", "metrics.json", "ledger.json"}) {
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / name))
        << name;
  }
  absl::StatusOr<std::string> csv =
      ReadFile((std::filesystem::path(dir) / "synthetic.csv").string());
  ASSERT_TRUE(csv.ok());
  EXPECT_EQ(*csv, FormatCsv(r->synthetic));
  std::filesystem::remove_all(dir);
}

TEST(SweepTest, TsvHasOneRowPerPointAndWidth) {
  RunConfig c = SmallRun();
  c.lways = {2, 3};
  absl::StatusOr<std::vector<SweepPoint>> points =
      RunSweep(c, {1.0, 4.0}, {2}, {1, 2}, 2);
  ASSERT_TRUE(points.ok()) << points.status();
  ASSERT_EQ(points->size(), 4u);
  EXPECT_EQ((*points)[2].epsilon, 4.0);
  EXPECT_EQ((*points)[1].seed, 2u);
  const std::string tsv = FormatSweepTsv(*points);
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 1 + 4 * 2);
}

}  // namespace
}  // namespace vfsynth
