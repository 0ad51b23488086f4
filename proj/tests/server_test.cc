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

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/party/local_mrf.h"
#include "vfsynth/privacy/random.h"
#include "vfsynth/server/global_mrf.h"
#include "vfsynth/server/recovery.h"
#include "vfsynth/server/server.h"
#include "vfsynth/sketch/encoder.h"
#include "vfsynth/sketch/key_ring.h"

namespace vfsynth {
namespace {

Schema BinarySchema(int d) {
  std::vector<Attribute> attrs;
  for (int j = 0; j < d; ++j) attrs.push_back({"a" + std::to_string(j), 2});
  return *Schema::Create(attrs);
}

// Attribute `copy` equals attribute `source` with probability `agree`; all
// other attributes are fair coins.
Dataset Planted(int d, int64_t n, int source, int copy, double agree,
                uint64_t seed) {
  Rng rng(seed);
  std::vector<uint32_t> values(n * d);
  for (int64_t r = 0; r < n; ++r) {
    for (int j = 0; j < d; ++j) values[r * d + j] = UniformOpen01(rng) < 0.5;
    const uint32_t s = values[r * d + source];
    values[r * d + copy] = UniformOpen01(rng) < agree ? s : 1 - s;
  }
  std::vector<int> cols(d);
  std::iota(cols.begin(), cols.end(), 0);
  return *Dataset::Create(BinarySchema(d), cols, values);
}

MarginalEstimator ExactEstimator(const Dataset& data) {
  return [&data](const Marginal& m) { return ComputeHistogram(data, m); };
}

TEST(HisRecTest, HandExample) {
  const Schema raw = *Schema::Create({{"x", 4}, {"y", 4}});
  BinningSpec spec;
  spec.bin_count = 2;
  for (int a = 0; a < 2; ++a) {
    spec.attributes.push_back(
        {a, BinMap::Make(4, 2), {{0.5, 0.5}, {0.5, 0.5}}});
  }
  ContingencyHistogram low(Marginal{0, 1}, {2, 2});
  low[0] = 100;
  auto high = HisRec(low, spec, raw);
  ASSERT_TRUE(high.ok()) << high.status();
  // Cells (x, y) with x, y in {0, 1} come from the first low cell.
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      EXPECT_DOUBLE_EQ((*high)[x * 4 + y], (x < 2 && y < 2) ? 25.0 : 0.0);
    }
  }
}

TEST(HisRecTest, IdentityWithoutBinning) {
  const Schema raw = *Schema::Create({{"x", 3}, {"y", 2}});
  ContingencyHistogram low(Marginal{0, 1}, {3, 2});
  for (int i = 0; i < 6; ++i) low[i] = i * 1.5 - 2;
  auto high = HisRec(low, BinningSpec{}, raw);
  ASSERT_TRUE(high.ok());
  EXPECT_EQ(high->cells(), low.cells());
}

TEST(HisRecTest, ConservesMassAndNeedsDistributions) {
  const Schema raw = *Schema::Create({{"x", 7}, {"y", 3}, {"z", 5}});
  Rng rng(3);
  BinningSpec spec;
  spec.bin_count = 2;
  for (int a : {0, 2}) {
    BinnedAttribute ba{a, BinMap::Make(raw.domain_size(a), 2), {}};
    for (int l = 0; l < 2; ++l) {
      std::vector<double> dist(ba.map.Width(l));
      double total = 0;
      for (double& p : dist) total += (p = UniformOpen01(rng));
      for (double& p : dist) p /= total;
      ba.distributions.push_back(dist);
    }
    spec.attributes.push_back(ba);
  }
  ContingencyHistogram low(Marginal{0, 1, 2}, {2, 3, 2});
  for (int i = 0; i < 12; ++i) low[i] = 1000 * UniformOpen01(rng);
  auto high = HisRec(low, spec, raw);
  ASSERT_TRUE(high.ok());
  EXPECT_NEAR(high->Total(), low.Total(), 1e-9);
  EXPECT_EQ(high->sizes(), (std::vector<int>{7, 3, 5}));
  EXPECT_FALSE(HisRec(low, BinningSpec{}, raw).ok());
}

ContingencyHistogram Dist(Marginal m, std::vector<int> sizes,
                          std::vector<double> cells) {
  return *ContingencyHistogram::Create(std::move(m), std::move(sizes),
                                       std::move(cells), HistogramKind::kCounts);
}

TEST(EnforceConsistencyTest, HandStepOnFirstAttribute) {
  const ContingencyHistogram h =
      Dist(Marginal{0, 1}, {2, 2}, {0.5, 0.1, 0.1, 0.3});
  std::map<int, ContingencyHistogram> refs;
  refs.emplace(0, Dist(Marginal{0}, {2}, {0.5, 0.5}));
  auto res = EnforceConsistency(h, refs, 1.0, {1, 0.0});
  ASSERT_TRUE(res.ok()) << res.status();
  const auto& c = res->histogram;
  EXPECT_NEAR(c[0] + c[1], 0.55, 1e-12);
  EXPECT_NEAR(c[2] + c[3], 0.45, 1e-12);
  // The other attribute's marginal is untouched by the even spread.
  EXPECT_NEAR(c[0] + c[2], 0.6, 1e-12);
  EXPECT_NEAR(res->references.at(0)[0], 0.55, 1e-12);
}

TEST(EnforceConsistencyTest, ConsistentInputIsFixedPoint) {
  const ContingencyHistogram h =
      Dist(Marginal{0, 1}, {2, 3}, {0.1, 0.2, 0.1, 0.3, 0.2, 0.1});
  std::map<int, ContingencyHistogram> refs;
  refs.emplace(0, Dist(Marginal{0}, {2}, {0.4, 0.6}));
  refs.emplace(1, Dist(Marginal{1}, {3}, {0.4, 0.4, 0.2}));
  auto res = EnforceConsistency(h, refs, 1000.0);
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(res->iterations, 0);
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(res->histogram[i], h[i] * 1000.0, 1e-9);
  }
}

TEST(EnforceConsistencyTest, MonotoneAndConvergentOnRandomInstances) {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int ua = 2 + static_cast<int>(rng() % 4);
    const int ub = 2 + static_cast<int>(rng() % 4);
    std::vector<double> cells(ua * ub);
    for (double& c : cells) c = UniformOpen01(rng) - 0.2;
    cells[0] = std::abs(cells[0]) + 0.1;
    std::map<int, ContingencyHistogram> refs;
    for (auto [a, u] : {std::pair{0, ua}, std::pair{1, ub}}) {
      std::vector<double> r(u);
      for (double& x : r) x = UniformOpen01(rng);
      refs.emplace(a, Dist(Marginal{a}, {u}, r));
    }
    auto res = EnforceConsistency(Dist(Marginal{0, 1}, {ua, ub}, cells), refs,
                                  1.0);
    ASSERT_TRUE(res.ok()) << res.status();
    for (size_t i = 1; i < res->gaps.size(); ++i) {
      EXPECT_LE(res->gaps[i], res->gaps[i - 1] + 1e-12) << trial;
    }
    EXPECT_LT(res->gaps.back(), 1e-3) << trial;
    double total = 0;
    for (double c : res->histogram.cells()) {
      EXPECT_GE(c, 0);
      total += c;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
    auto gap = ConsistencyGap(res->histogram, res->references);
    EXPECT_NEAR(*gap, res->gaps.back(), 1e-12);
  }
}

TEST(EnforceConsistencyTest, RejectsZeroMass) {
  std::map<int, ContingencyHistogram> refs;
  EXPECT_FALSE(EnforceConsistency(Dist(Marginal{0}, {2}, {-1, 0}), refs, 1.0)
                   .ok());
}

TEST(SelectCrossMarginalsTest, AverageCountFilter) {
  JunctionTree tree;
  tree.cliques = {Marginal{0, 1, 2}};
  const std::vector<int> party_of = {0, 1, 1};
  auto picked = SelectCrossMarginals(tree, party_of, {2, 2, 2}, 20000, 100);
  // (0,1), (0,2) and the three-way; (1,2) is intra-party.
  EXPECT_EQ(picked, (std::vector<Marginal>{Marginal{0, 1}, Marginal{0, 2},
                                           Marginal{0, 1, 2}}));
  auto wide = SelectCrossMarginals(tree, party_of, {32, 32, 2}, 20000, 100);
  EXPECT_EQ(wide, (std::vector<Marginal>{Marginal{0, 2}}));
  JunctionTree intra;
  intra.cliques = {Marginal{1, 2}};
  EXPECT_TRUE(SelectCrossMarginals(intra, party_of, {2, 2, 2}, 1e6, 1).empty());
}

TEST(GraphComTest, SingleCrossEdgeAndTauBinding) {
  const Dataset data = Planted(2, 1000, 0, 1, 0.9, 1);
  const std::vector<AttributeGraph> locals = {AttributeGraph(2, {0}),
                                              AttributeGraph(2, {1})};
  auto big = GraphCom(locals, {0, 1}, data.schema(), ExactEstimator(data),
                      1000, 1e9);
  ASSERT_TRUE(big.ok()) << big.status();
  EXPECT_EQ(big->added.size(), 1u);
  EXPECT_TRUE(big->graph.HasEdge(0, 1));
  auto tight = GraphCom(locals, {0, 1}, data.schema(), ExactEstimator(data),
                        1000, 3);
  ASSERT_TRUE(tight.ok());
  EXPECT_TRUE(tight->added.empty());
  EXPECT_EQ(tight->graph.EdgeCount(), 0);
}

TEST(GraphComTest, KeepsCliqueDomainWithinTau) {
  const Dataset data = Planted(6, 2000, 0, 4, 0.8, 2);
  std::vector<AttributeGraph> locals = {AttributeGraph(6, {0, 1, 2}),
                                        AttributeGraph(6, {3, 4, 5})};
  locals[0].AddEdge(0, 1);
  locals[1].AddEdge(3, 4);
  for (double tau : {4.0, 8.0, 16.0, 64.0}) {
    auto res = GraphCom(locals, {0, 0, 0, 1, 1, 1}, data.schema(),
                        ExactEstimator(data), 2000, tau);
    ASSERT_TRUE(res.ok());
    EXPECT_LE(MaxCliqueDomain(Triangulate(res->graph).tree, data.schema()),
              tau);
    EXPECT_TRUE(res->graph.HasEdge(0, 1));
  }
}

TEST(GraphComTest, PlantedPairRankedFirstFromSketches) {
  const int t = 2000;
  const KeyRing ring = KeyRing::FromMasterSeed(5, t);
  int first = 0;
  for (int run = 0; run < 100; ++run) {
    // Attribute 1 (party 0) drives attribute 2 (party 1).
    const Dataset data = Planted(4, 2000, 1, 2, 0.95, 100 + run);
    const std::vector<int> party_of = {0, 0, 1, 1};
    // Oracle: exact scores put the planted pair first.
    auto oracle = GraphCom({AttributeGraph(4, {0, 1}), AttributeGraph(4, {2, 3})},
                           party_of, data.schema(), ExactEstimator(data), 2000,
                           1e9);
    ASSERT_TRUE(oracle.ok());
    ASSERT_EQ(oracle->ranked[0].a, 1);
    ASSERT_EQ(oracle->ranked[0].b, 2);

    std::vector<SketchSet> sets;
    for (const std::vector<int>& cols : {std::vector<int>{0, 1},
                                         std::vector<int>{2, 3}}) {
      SketchEncodeOptions opts;
      opts.t = t;
      opts.global_d = 4;
      opts.seed = 1000 + run;
      auto set = LocEncSketch(*data.Project(cols), {20.0, 1e-6}, opts, ring,
                              nullptr);
      ASSERT_TRUE(set.ok()) << set.status();
      sets.push_back(*set);
    }
    const SketchSet merged = *MergeSketchSets(sets);
    MarginalEstimator est = [&merged](const Marginal& m) {
      return CarEstSketch(m, merged, 2000);
    };
    auto res = GraphCom({AttributeGraph(4, {0, 1}), AttributeGraph(4, {2, 3})},
                        party_of, data.schema(), est, 2000, 1e9);
    ASSERT_TRUE(res.ok());
    first += res->added[0].a == 1 && res->added[0].b == 2;
  }
  EXPECT_GE(first, 90);
}

std::vector<MrfModel> LocalsFor(const Dataset& data,
                                const std::vector<std::vector<int>>& split,
                                uint64_t seed) {
  std::vector<MrfModel> out;
  for (size_t p = 0; p < split.size(); ++p) {
    Rng rng(seed + p);
    auto res = LocMrf(*data.Project(split[p]), 1 << 20, {50.0, 1e-6}, {}, rng,
                      nullptr);
    EXPECT_TRUE(res.ok()) << res.status();
    out.push_back(res->model);
  }
  return out;
}

TEST(InitMrfTest, SinglePartyReproducesLocalModel) {
  const Dataset data = Planted(4, 5000, 0, 1, 0.8, 7);
  const std::vector<MrfModel> locals = LocalsFor(data, {{0, 1, 2, 3}}, 1);
  auto init = InitMrf(locals, locals[0].graph(), data.schema(), 5000);
  ASSERT_TRUE(init.ok()) << init.status();
  for (const Marginal& m : locals[0].marginals()) {
    auto a = *init->model.InferMarginal(m);
    auto b = *locals[0].InferMarginal(m);
    EXPECT_LT(*L1Distance(*a.Normalized(), *b.Normalized()), 1e-3);
  }
}

TEST(InitMrfTest, IndependentPartiesKeepLocalMarginals) {
  const Dataset data = Planted(6, 5000, 0, 1, 0.85, 8);
  const std::vector<MrfModel> locals =
      LocalsFor(data, {{0, 1, 2}, {3, 4, 5}}, 2);
  AttributeGraph graph(6, {});
  for (const MrfModel& l : locals) graph.Merge(l.graph());
  auto init = InitMrf(locals, graph, data.schema(), 5000);
  ASSERT_TRUE(init.ok()) << init.status();
  std::vector<bool> covered(6, false);
  for (const MrfModel& local : locals) {
    const std::vector<int>& vars = local.variables();
    for (size_t i = 0; i < vars.size(); ++i) {
      covered[vars[i]] = true;
      for (size_t j = i + 1; j < vars.size(); ++j) {
        const Marginal m{vars[i], vars[j]};
        auto a = *init->model.InferMarginal(m);
        auto b = *local.InferMarginal(m);
        EXPECT_LT(*L1Distance(*a.Normalized(), *b.Normalized()), 1e-3);
      }
    }
  }
  for (bool c : covered) EXPECT_TRUE(c);
}

struct OptFixture {
  Dataset data;
  std::vector<MrfModel> locals;
  InitResult init;
  std::map<int, ContingencyHistogram> refs;
  std::vector<Marginal> cross;
};

OptFixture MakeOptFixture() {
  OptFixture f;
  f.data = Planted(4, 20000, 1, 2, 0.9, 9);
  f.locals = LocalsFor(f.data, {{0, 1}, {2, 3}}, 3);
  AttributeGraph graph(4, {});
  for (const MrfModel& l : f.locals) graph.Merge(l.graph());
  for (int a : {0, 1}) {
    for (int b : {2, 3}) graph.AddEdge(a, b);
  }
  f.init = *InitMrf(f.locals, graph, f.data.schema(), 20000);
  for (int a = 0; a < 4; ++a) {
    f.refs.emplace(a, *f.locals[a / 2].InferMarginal(Marginal{a})->Normalized());
  }
  f.cross = SelectCrossMarginals(Triangulate(graph).tree, {0, 0, 1, 1},
                                 {2, 2, 2, 2}, 20000, 50, 2);
  return f;
}

TEST(OptMrfTest, ZeroRoundsIsIdentity) {
  OptFixture f = MakeOptFixture();
  const auto theta = f.init.model.theta();
  OptOptions opts;
  opts.rounds = 0;
  Rng rng(1);
  auto rounds = OptMrf(f.init.model, f.init.targets, f.cross,
                       ExactEstimator(f.data), f.refs, 20000, opts, rng);
  ASSERT_TRUE(rounds.ok());
  EXPECT_TRUE(rounds->empty());
  EXPECT_EQ(f.init.model.theta(), theta);
}

TEST(OptMrfTest, MatchingModelAddsNothing) {
  OptFixture f = MakeOptFixture();
  const MrfModel& model = f.init.model;
  MarginalEstimator own = [&model](const Marginal& m) {
    return model.InferMarginal(m);
  };
  // References taken from the model itself make consistency a no-op.
  std::map<int, ContingencyHistogram> refs;
  for (int a = 0; a < 4; ++a) {
    refs.emplace(a, *model.InferMarginal(Marginal{a})->Normalized());
  }
  Rng rng(2);
  MrfModel copy = model;
  auto rounds = OptMrf(copy, f.init.targets, f.cross, own, refs, 20000, {},
                       rng);
  ASSERT_TRUE(rounds.ok());
  for (const OptRound& r : *rounds) EXPECT_TRUE(r.added.empty());
  EXPECT_EQ(copy.marginals().size(), model.marginals().size());
}

TEST(OptMrfTest, LearnsPlantedCrossCorrelation) {
  OptFixture f = MakeOptFixture();
  const Marginal planted{1, 2};
  const auto truth = *ComputeHistogram(f.data, planted);
  const double before = *Tvd(*f.init.model.InferMarginal(planted), truth);
  Rng rng(3);
  auto rounds = OptMrf(f.init.model, f.init.targets, f.cross,
                       ExactEstimator(f.data), f.refs, 20000, {}, rng);
  ASSERT_TRUE(rounds.ok()) << rounds.status();
  const double after = *Tvd(*f.init.model.InferMarginal(planted), truth);
  EXPECT_LT(after, 0.1);
  EXPECT_LT(after, before);
  for (const OptRound& r : *rounds) {
    EXPECT_LE(r.batch_l1_after, r.batch_l1_before + 1e-12);
  }
}

TEST(SynthesizeTest, CountsAndSchema) {
  OptFixture f = MakeOptFixture();
  Rng rng(4);
  auto none = Synthesize(f.init.model, -3.0, rng);
  ASSERT_TRUE(none.ok());
  EXPECT_EQ(none->num_rows(), 0);
  EXPECT_EQ(none->schema(), f.data.schema());
  auto some = Synthesize(f.init.model, 99.6, rng);
  ASSERT_TRUE(some.ok());
  EXPECT_EQ(some->num_rows(), 100);
  EXPECT_EQ(some->schema(), f.data.schema());
  EXPECT_EQ(some->columns(), f.data.columns());
}

TEST(SynthesizeTest, SamplesMatchModel) {
  OptFixture f = MakeOptFixture();
  Rng rng(5);
  auto synth = Synthesize(f.init.model, 1e5, rng);
  ASSERT_TRUE(synth.ok());
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      const Marginal m{a, b};
      EXPECT_LT(*Tvd(*ComputeHistogram(*synth, m),
                     *f.init.model.InferMarginal(m)),
                0.01);
    }
  }
}

}  // namespace
}  // namespace vfsynth
