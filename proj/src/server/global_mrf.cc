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

#include "vfsynth/server/global_mrf.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/core/parallel.h"
#include "vfsynth/core/status_macros.h"

namespace vfsynth {
namespace {

ContingencyHistogram Clamped(ContingencyHistogram h) {
  for (double& c : h.mutable_cells()) c = std::max(c, 0.0);
  return h;
}

absl::StatusOr<double> NormalizedL1(const ContingencyHistogram& a,
                                    const ContingencyHistogram& b) {
  VFS_ASSIGN_OR_RETURN(ContingencyHistogram na, a.Normalized());
  VFS_ASSIGN_OR_RETURN(ContingencyHistogram nb, b.Normalized());
  return L1Distance(na, nb);
}

bool SpansParties(const Marginal& m, const std::vector<int>& party_of) {
  for (int a : m.attributes()) {
    if (party_of[a] != party_of[m[0]]) return true;
  }
  return false;
}

absl::StatusOr<double> SummedL1(const MrfModel& model,
                                const std::vector<Marginal>& batch,
                                const std::vector<ContingencyHistogram>& est) {
  double sum = 0;
  for (size_t i = 0; i < batch.size(); ++i) {
    VFS_ASSIGN_OR_RETURN(ContingencyHistogram inferred,
                         model.InferMarginal(batch[i]));
    VFS_ASSIGN_OR_RETURN(double l1, NormalizedL1(inferred, est[i]));
    sum += l1;
  }
  return sum;
}

}  // namespace

absl::StatusOr<double> EstimatedRScore(const ContingencyHistogram& pair,
                                       double n_hat) {
  if (pair.marginal().arity() != 2) {
    return absl::InvalidArgumentError("score needs a two-way histogram");
  }
  ContingencyHistogram h = Clamped(pair);
  if (!(h.Total() > 0)) return 0.0;
  VFS_ASSIGN_OR_RETURN(ContingencyHistogram p, h.Normalized());
  const int ua = p.sizes()[0];
  const int ub = p.sizes()[1];
  std::vector<double> pa(ua, 0.0), pb(ub, 0.0);
  for (int i = 0; i < ua; ++i) {
    for (int j = 0; j < ub; ++j) {
      pa[i] += p[i * ub + j];
      pb[j] += p[i * ub + j];
    }
  }
  double l1 = 0;
  for (int i = 0; i < ua; ++i) {
    for (int j = 0; j < ub; ++j) l1 += std::abs(p[i * ub + j] - pa[i] * pb[j]);
  }
  return 0.5 * n_hat * l1;
}

absl::StatusOr<GraphComResult> GraphCom(
    const std::vector<AttributeGraph>& local_graphs,
    const std::vector<int>& party_of, const Schema& schema,
    const MarginalEstimator& estimate, double n_hat, double tau,
    int threads) {
  const int d = schema.size();
  if (static_cast<int>(party_of.size()) != d) {
    return absl::InvalidArgumentError("party_of must cover every attribute");
  }
  AttributeGraph graph(d, {});
  for (const AttributeGraph& g : local_graphs) {
    if (g.universe() != d) {
      return absl::InvalidArgumentError("local graph over a different schema");
    }
    graph.Merge(g);
  }
  for (int a = 0; a < d; ++a) {
    if (!graph.HasNode(a)) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", a, " is held by no party"));
    }
  }

  std::vector<ScoredEdge> pairs;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      if (party_of[a] != party_of[b]) pairs.push_back({a, b, 0});
    }
  }
  std::vector<absl::Status> errors(pairs.size());
  ParallelFor(static_cast<int64_t>(pairs.size()), threads, [&](int64_t i) {
    auto h = estimate(Marginal{pairs[i].a, pairs[i].b});
    if (!h.ok()) {
      errors[i] = h.status();
      return;
    }
    auto r = EstimatedRScore(*h, n_hat);
    if (!r.ok()) {
      errors[i] = r.status();
      return;
    }
    pairs[i].score = *r;
  });
  for (const absl::Status& s : errors) VFS_RETURN_IF_ERROR(s);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const ScoredEdge& x, const ScoredEdge& y) {
                     return x.score > y.score;
                   });

  GraphComResult out;
  out.ranked = pairs;
  for (const ScoredEdge& e : pairs) {
    AttributeGraph trial = graph;
    trial.AddEdge(e.a, e.b);
    if (MaxCliqueDomain(Triangulate(trial).tree, schema) <= tau) {
      graph = std::move(trial);
      out.added.push_back(e);
    }
  }
  out.graph = std::move(graph);
  return out;
}

std::vector<Marginal> SelectCrossMarginals(const JunctionTree& tree,
                                           const std::vector<int>& party_of,
                                           const std::vector<int>& sizes,
                                           double n_hat, double d_c,
                                           int max_arity) {
  std::vector<Marginal> out;
  std::set<Marginal> seen;
  auto consider = [&](const Marginal& m) {
    if (seen.count(m) || !SpansParties(m, party_of)) return;
    double cells = 1;
    for (int a : m.attributes()) cells *= sizes[a];
    if (n_hat / cells >= d_c) {
      seen.insert(m);
      out.push_back(m);
    }
  };
  for (int arity = 2; arity <= max_arity; ++arity) {
    for (const Marginal& clique : tree.cliques) {
      const int k = clique.arity();
      if (k < arity) continue;
      std::vector<int> idx(arity);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::vector<int> ids;
        for (int i : idx) ids.push_back(clique[i]);
        consider(Marginal(std::move(ids)));
        int i = arity - 1;
        while (i >= 0 && idx[i] == k - arity + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < arity; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  return out;
}

absl::StatusOr<InitResult> InitMrf(const std::vector<MrfModel>& locals,
                                   const AttributeGraph& graph,
                                   const Schema& schema, double n_hat,
                                   const FitOptions& fit) {
  if (!(n_hat > 0)) {
    return absl::InvalidArgumentError("the record count must be positive");
  }
  std::vector<Marginal> marginals;
  std::vector<std::vector<double>> theta;
  InitResult out;
  for (const MrfModel& local : locals) {
    for (size_t i = 0; i < local.marginals().size(); ++i) {
      const Marginal& m = local.marginals()[i];
      VFS_ASSIGN_OR_RETURN(ContingencyHistogram h, local.InferMarginal(m));
      VFS_ASSIGN_OR_RETURN(ContingencyHistogram p, h.Normalized());
      marginals.push_back(m);
      theta.push_back(local.theta()[i]);
      out.targets.push_back(p.Scaled(n_hat));
    }
  }
  VFS_ASSIGN_OR_RETURN(out.model,
                       MrfModel::Create(schema, graph, marginals, n_hat));
  VFS_RETURN_IF_ERROR(out.model.SetTheta(std::move(theta)));
  VFS_ASSIGN_OR_RETURN(out.fit, FitTheta(out.model, out.targets, fit));
  return out;
}

absl::StatusOr<std::vector<OptRound>> OptMrf(
    MrfModel& model, std::vector<ContingencyHistogram>& targets,
    const std::vector<Marginal>& cross, const MarginalEstimator& estimate,
    std::map<int, ContingencyHistogram>& references, double n_hat,
    const OptOptions& options, Rng& rng) {
  std::vector<OptRound> rounds;
  for (int round = 0; round < options.rounds; ++round) {
    std::vector<Marginal> pool;
    for (const Marginal& m : cross) {
      if (model.IndexOf(m) < 0) pool.push_back(m);
    }
    if (pool.empty()) break;
    const size_t take = std::min<size_t>(pool.size(), options.batch);
    for (size_t i = 0; i < take; ++i) {
      const size_t j = i + static_cast<size_t>(rng() % (pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    OptRound r;
    r.batch.assign(pool.begin(), pool.begin() + take);

    std::vector<absl::StatusOr<ContingencyHistogram>> raw(take);
    ParallelFor(static_cast<int64_t>(take), options.threads,
                [&](int64_t i) { raw[i] = estimate(r.batch[i]); });
    std::vector<ContingencyHistogram> est;
    for (size_t i = 0; i < take; ++i) {
      VFS_RETURN_IF_ERROR(raw[i].status());
      std::map<int, ContingencyHistogram> refs;
      for (int a : r.batch[i].attributes()) {
        auto it = references.find(a);
        if (it != references.end()) refs.emplace(a, it->second);
      }
      ContingencyHistogram h = *raw[i];
      if (Clamped(h).Total() > 0) {
        VFS_ASSIGN_OR_RETURN(
            ConsistencyResult c,
            EnforceConsistency(h, refs, n_hat, options.consistency));
        for (auto& [a, ref] : c.references) references[a] = std::move(ref);
        h = std::move(c.histogram);
      } else {
        // Nothing usable was estimated; treat it as uniform.
        for (double& x : h.mutable_cells()) x = n_hat / h.size();
      }
      est.push_back(std::move(h));
    }

    std::vector<size_t> order(take);
    std::iota(order.begin(), order.end(), 0);
    for (size_t i = 0; i < take; ++i) {
      VFS_ASSIGN_OR_RETURN(ContingencyHistogram inferred,
                           model.InferMarginal(r.batch[i]));
      VFS_ASSIGN_OR_RETURN(double l1, NormalizedL1(inferred, est[i]));
      r.l1_before.push_back(l1);
      r.batch_l1_before += l1;
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      return r.l1_before[x] > r.l1_before[y];
    });
    const size_t worst = (take + 1) / 2;
    MrfModel saved_model = model;
    const size_t saved_targets = targets.size();
    for (size_t k = 0; k < worst; ++k) {
      const size_t i = order[k];
      if (r.l1_before[i] <= options.l1_threshold) break;
      VFS_RETURN_IF_ERROR(model.AddMarginal(r.batch[i]).status());
      targets.push_back(est[i].Scaled(n_hat / est[i].Total()));
      r.added.push_back(r.batch[i]);
    }
    r.batch_l1_after = r.batch_l1_before;
    if (!r.added.empty()) {
      VFS_RETURN_IF_ERROR(FitTheta(model, targets, options.fit).status());
      VFS_ASSIGN_OR_RETURN(r.batch_l1_after, SummedL1(model, r.batch, est));
      if (r.batch_l1_after > r.batch_l1_before) {
        model = std::move(saved_model);
        targets.resize(saved_targets);
        r.reverted = true;
        r.added.clear();
        r.batch_l1_after = r.batch_l1_before;
      }
    }
    rounds.push_back(std::move(r));
  }
  return rounds;
}

absl::StatusOr<Dataset> Synthesize(const MrfModel& model, double n_hat,
                                   Rng& rng) {
  const int64_t count =
      n_hat > 0 ? static_cast<int64_t>(std::llround(n_hat)) : 0;
  if (count == 0) return Dataset::Empty(model.schema());
  return model.Sample(count, rng);
}

}  // namespace vfsynth
