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

#include "vfsynth/party/local_mrf.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/mrf/scores.h"
#include "vfsynth/privacy/accounting.h"
#include "vfsynth/privacy/mechanisms.h"

namespace vfsynth {
namespace {

// L2 sensitivities under both add/remove and substitution neighbors.
constexpr double kScoreSensitivity = 3.0;
constexpr double kHistogramSensitivity = std::numbers::sqrt2;
constexpr double kCountSensitivity = 1.0;

absl::StatusOr<double> SigmaFor(double rho, double sensitivity,
                                const char* what) {
  const double sigma = GaussianSigmaForRho(rho, sensitivity);
  if (!(rho > 0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "local model budget too small to calibrate noise for ", what));
  }
  return sigma;
}

absl::StatusOr<ContingencyHistogram> Measure(const Dataset& data,
                                             const Marginal& m, double sigma,
                                             Rng& rng) {
  VFS_ASSIGN_OR_RETURN(ContingencyHistogram h, ComputeHistogram(data, m));
  if (sigma > 0) {
    for (double& c : h.mutable_cells()) {
      VFS_ASSIGN_OR_RETURN(double z, SampleGaussian(sigma, rng));
      c += z;
    }
  }
  return h;
}

// Clamps negative cells; an all-zero result becomes uniform.
ContingencyHistogram AsTarget(ContingencyHistogram h) {
  double total = 0;
  for (double& c : h.mutable_cells()) {
    c = std::max(c, 0.0);
    total += c;
  }
  if (!(total > 0)) {
    for (double& c : h.mutable_cells()) c = 1.0;
  }
  return h;
}

absl::StatusOr<double> NormalizedL1(const ContingencyHistogram& a,
                                    const ContingencyHistogram& b) {
  VFS_ASSIGN_OR_RETURN(ContingencyHistogram na, a.Normalized());
  VFS_ASSIGN_OR_RETURN(ContingencyHistogram nb, b.Normalized());
  return L1Distance(na, nb);
}

void SubsetsOf(const Marginal& clique, int max_arity,
               std::set<Marginal>& out) {
  const int k = clique.arity();
  const std::span<const int> ids = clique.attributes();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      out.insert(Marginal{ids[i], ids[j]});
      if (max_arity < 3) continue;
      for (int l = j + 1; l < k; ++l) out.insert(Marginal{ids[i], ids[j], ids[l]});
    }
  }
}

}  // namespace

absl::StatusOr<int64_t> LocalCliqueBound(double tau, int party_count,
                                         const Schema& schema) {
  if (!(tau > 0) || party_count < 1 || schema.size() == 0) {
    return absl::InvalidArgumentError("tau, m and the schema must be non-empty");
  }
  const double u = schema.MeanDomainSize();
  const double bound = std::floor(tau / (party_count * u * u));
  if (bound < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "tau ", tau, " leaves no local clique budget for ", party_count,
        " parties"));
  }
  return static_cast<int64_t>(bound);
}

absl::StatusOr<LocMrfResult> LocMrf(const Dataset& data, int64_t tau_prime,
                                    const PrivacyBudget& budget,
                                    const LocMrfOptions& options, Rng& rng,
                                    SpendLedger* ledger) {
  if (!(budget.epsilon > 0)) {
    return absl::InvalidArgumentError("local model budget must be positive");
  }
  if (data.num_columns() == 0) {
    return absl::InvalidArgumentError("party holds no attributes");
  }
  const Schema& schema = data.schema();
  const std::vector<int>& attrs = data.columns();
  const int d = data.num_columns();
  const int64_t n = data.num_rows();

  VFS_ASSIGN_OR_RETURN(double rho, ZcdpRhoFromEpsDelta(budget.epsilon,
                                                       budget.delta));
  const int rounds = std::max(options.refine_rounds, 0);
  const double measure_share =
      1.0 - options.rscore_share - options.count_share;
  if (!(measure_share > 0) || options.rscore_share < 0 ||
      options.count_share <= 0) {
    return absl::InvalidArgumentError("bad local model budget shares");
  }
  const double rho_round = rho * measure_share / (rounds + 1);

  LocMrfResult out;
  VFS_ASSIGN_OR_RETURN(
      double sigma_count,
      SigmaFor(rho * options.count_share, kCountSensitivity, "the count"));
  VFS_ASSIGN_OR_RETURN(double count_noise, SampleGaussian(sigma_count, rng));
  out.noisy_total = std::max(static_cast<double>(n) + count_noise, 1.0);

  // Phase 1: noisy pair scores and a greedy graph under tau_prime.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(attrs[i], attrs[j]);
  }
  if (!pairs.empty()) {
    VFS_ASSIGN_OR_RETURN(
        double sigma_r,
        SigmaFor(rho * options.rscore_share / pairs.size(), kScoreSensitivity,
                 "pair scores"));
    for (auto [a, b] : pairs) {
      VFS_ASSIGN_OR_RETURN(ContingencyHistogram h,
                           ComputeHistogram(data, Marginal{a, b}));
      VFS_ASSIGN_OR_RETURN(double r,
                           RScore(h, static_cast<double>(n), sigma_r, rng));
      out.scores.push_back({a, b, r});
    }
  }
  std::stable_sort(out.scores.begin(), out.scores.end(),
                   [](const ScoredPair& x, const ScoredPair& y) {
                     return x.score > y.score;
                   });

  AttributeGraph graph(schema.size(), attrs);
  for (const ScoredPair& p : out.scores) {
    if (static_cast<int64_t>(schema.domain_size(p.a)) *
            schema.domain_size(p.b) > tau_prime) {
      continue;
    }
    AttributeGraph trial = graph;
    trial.AddEdge(p.a, p.b);
    if (MaxCliqueDomain(Triangulate(trial).tree, schema) <= tau_prime) {
      graph = std::move(trial);
    }
  }
  out.graph = graph;

  // Phase 2: useful candidates from the triangulated graph's cliques.
  const int batch = options.batch > 0 ? options.batch : d;
  VFS_ASSIGN_OR_RETURN(
      double sigma_init,
      SigmaFor(rho_round / d, kHistogramSensitivity, "measurements"));
  out.sigma = sigma_init;
  const double g = sigma_init * std::sqrt(2.0 / std::numbers::pi);
  std::set<Marginal> raw_candidates;
  for (const Marginal& c : Triangulate(graph).tree.cliques) {
    SubsetsOf(c, options.max_candidate_arity, raw_candidates);
  }
  std::vector<std::pair<double, Marginal>> candidates;
  for (const Marginal& m : raw_candidates) {
    const int64_t cells = CellCount(DomainSizes(m, schema));
    if (cells > tau_prime) continue;
    if (!ThetaUseful(cells, out.noisy_total, options.theta, g)) continue;
    double score = 0;
    for (const ScoredPair& p : out.scores) {
      if (m.Contains(p.a) && m.Contains(p.b)) score += p.score;
    }
    candidates.emplace_back(score, m);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) {
                     return x.first > y.first;
                   });
  if (static_cast<int>(candidates.size()) > options.max_candidates) {
    candidates.resize(options.max_candidates);
  }

  // Phase 3: the best-scoring useful candidate for every attribute.
  std::vector<Marginal> selected;
  for (int a : attrs) {
    Marginal pick{a};
    for (const auto& [score, m] : candidates) {
      if (m.Contains(a)) {
        pick = m;
        break;
      }
    }
    if (std::find(selected.begin(), selected.end(), pick) == selected.end()) {
      selected.push_back(pick);
    }
  }
  VFS_ASSIGN_OR_RETURN(
      double sigma_sel,
      SigmaFor(rho_round / selected.size(), kHistogramSensitivity,
               "measurements"));
  std::vector<ContingencyHistogram> targets;
  for (const Marginal& m : selected) {
    VFS_ASSIGN_OR_RETURN(ContingencyHistogram h,
                         Measure(data, m, sigma_sel, rng));
    targets.push_back(AsTarget(std::move(h)));
  }
  VFS_ASSIGN_OR_RETURN(MrfModel model, MrfModel::Create(schema, graph, selected,
                                                        out.noisy_total));
  VFS_RETURN_IF_ERROR(FitTheta(model, targets, options.fit).status());

  // Phase 4: measure unselected candidates and keep those the model misses
  // by more than the expected noise.
  std::vector<Marginal> pending;
  for (const auto& [score, m] : candidates) {
    if (model.IndexOf(m) < 0) pending.push_back(m);
  }
  size_t next = 0;
  for (int round = 0; round < rounds && next < pending.size(); ++round) {
    const size_t end = std::min(pending.size(), next + batch);
    const int count = static_cast<int>(end - next);
    VFS_ASSIGN_OR_RETURN(
        double sigma_r,
        SigmaFor(rho_round / count, kHistogramSensitivity, "measurements"));
    const double g_r = sigma_r * std::sqrt(2.0 / std::numbers::pi);
    bool added = false;
    for (; next < end; ++next) {
      const Marginal& m = pending[next];
      VFS_ASSIGN_OR_RETURN(ContingencyHistogram noisy,
                           Measure(data, m, sigma_r, rng));
      ContingencyHistogram target = AsTarget(std::move(noisy));
      VFS_ASSIGN_OR_RETURN(ContingencyHistogram inferred,
                           model.InferMarginal(m));
      VFS_ASSIGN_OR_RETURN(double err, NormalizedL1(inferred, target));
      const double noise_l1 =
          static_cast<double>(target.size()) * g_r / out.noisy_total;
      if (err > noise_l1) {
        VFS_RETURN_IF_ERROR(model.AddMarginal(m).status());
        targets.push_back(std::move(target));
        added = true;
      }
    }
    if (added) VFS_RETURN_IF_ERROR(FitTheta(model, targets, options.fit).status());
  }

  // Unused refinement budget is forfeited, so the stage is charged its whole
  // allotment.
  if (ledger != nullptr) {
    VFS_RETURN_IF_ERROR(ledger->Record("loc_mrf", budget.epsilon, budget.delta,
                                       "zcdp-gaussian"));
  }
  out.marginals = model.marginals();
  out.model = std::move(model);
  return out;
}

}  // namespace vfsynth
