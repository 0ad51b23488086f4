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

#ifndef VFSYNTH_SERVER_GLOBAL_MRF_H_
#define VFSYNTH_SERVER_GLOBAL_MRF_H_

#include <cstdint>
#include <map>
#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/core/marginal.h"
#include "vfsynth/core/schema.h"
#include "vfsynth/mrf/graph.h"
#include "vfsynth/mrf/model.h"
#include "vfsynth/privacy/random.h"
#include "vfsynth/server/estimator.h"
#include "vfsynth/server/recovery.h"

namespace vfsynth {

struct ScoredEdge {
  int a = -1;
  int b = -1;
  double score = 0;
};

struct GraphComResult {
  AttributeGraph graph;
  // Every cross-party pair, best score first.
  std::vector<ScoredEdge> ranked;
  // Pairs linked, in the order they were added.
  std::vector<ScoredEdge> added;
};

// (n_hat / 2) * || P[A, B] - P[A] P[B] ||_1 of an estimated two-way
// histogram, negative cells clamped first.
absl::StatusOr<double> EstimatedRScore(const ContingencyHistogram& pair,
                                       double n_hat);

// Joins the local graphs, scores every pair of attributes held by different
// parties from `estimate`, and links pairs best first whenever the
// triangulated graph's largest clique domain stays within `tau`.
// `party_of[a]` names the party holding attribute a.
absl::StatusOr<GraphComResult> GraphCom(
    const std::vector<AttributeGraph>& local_graphs,
    const std::vector<int>& party_of, const Schema& schema,
    const MarginalEstimator& estimate, double n_hat, double tau,
    int threads = 1);

// Cross-party subsets (two-way first, then up to `max_arity`) of the tree's
// cliques whose average cell count n_hat / prod(sizes) reaches d_c. `sizes`
// are the domain sizes the estimates are made over.
std::vector<Marginal> SelectCrossMarginals(const JunctionTree& tree,
                                           const std::vector<int>& party_of,
                                           const std::vector<int>& sizes,
                                           double n_hat, double d_c,
                                           int max_arity = 3);

struct InitResult {
  MrfModel model;
  // One per marginal of the model, in model order, as counts at n_hat.
  std::vector<ContingencyHistogram> targets;
  FitResult fit;
};

// Global model over `graph` whose marginal set is the union of the local
// ones, fitted to the local models' inferences. Theta starts from the local
// parameters.
absl::StatusOr<InitResult> InitMrf(const std::vector<MrfModel>& locals,
                                   const AttributeGraph& graph,
                                   const Schema& schema, double n_hat,
                                   const FitOptions& fit = {});

struct OptOptions {
  int rounds = 10;
  int batch = 8;
  // Marginals whose normalized L1 error is at most this are left out.
  double l1_threshold = 0.01;
  ConsistencyOptions consistency;
  FitOptions fit;
  int threads = 1;
};

struct OptRound {
  std::vector<Marginal> batch;
  std::vector<double> l1_before;
  std::vector<Marginal> added;
  double batch_l1_before = 0;
  double batch_l1_after = 0;
  // The refit made the batch worse and was undone.
  bool reverted = false;
};

// Rounds of: sample a batch of cross marginals not yet in the model,
// estimate each and reconcile it with `references` (updated in place), rank
// by normalized L1 against the model, add the worse half of those above the
// threshold and refit. A refit that raises the batch's summed error is
// undone.
absl::StatusOr<std::vector<OptRound>> OptMrf(
    MrfModel& model, std::vector<ContingencyHistogram>& targets,
    const std::vector<Marginal>& cross, const MarginalEstimator& estimate,
    std::map<int, ContingencyHistogram>& references, double n_hat,
    const OptOptions& options, Rng& rng);

// round(max(n_hat, 0)) records sampled from the model.
absl::StatusOr<Dataset> Synthesize(const MrfModel& model, double n_hat,
                                   Rng& rng);

}  // namespace vfsynth

#endif  // VFSYNTH_SERVER_GLOBAL_MRF_H_
