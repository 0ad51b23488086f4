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

#ifndef VFSYNTH_PARTY_LOCAL_MRF_H_
#define VFSYNTH_PARTY_LOCAL_MRF_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/core/marginal.h"
#include "vfsynth/core/schema.h"
#include "vfsynth/mrf/graph.h"
#include "vfsynth/mrf/model.h"
#include "vfsynth/privacy/budget.h"
#include "vfsynth/privacy/random.h"

namespace vfsynth {

// Largest clique domain allowed for one party's model: floor(tau / (m u^2))
// with u the mean domain size of the global schema.
absl::StatusOr<int64_t> LocalCliqueBound(double tau, int party_count,
                                         const Schema& schema);

struct LocMrfOptions {
  // Shares of the party's zCDP budget. The rest pays for marginal
  // measurements, split evenly between the initial selection and each
  // refinement round.
  double rscore_share = 0.10;
  double count_share = 0.05;
  // A candidate is kept when its average cell count reaches theta * g, g
  // being the expected absolute noise per cell.
  double theta = 6.0;
  int refine_rounds = 3;
  // Candidates measured per refinement round; 0 means the attribute count.
  int batch = 0;
  int max_candidate_arity = 3;
  int max_candidates = 2000;
  FitOptions fit;
};

struct ScoredPair {
  int a = -1;
  int b = -1;
  double score = 0;
};

struct LocMrfResult {
  MrfModel model;
  // Greedy graph before triangulation.
  AttributeGraph graph;
  std::vector<Marginal> marginals;
  // Gaussian-noised record count the model is scaled to.
  double noisy_total = 0;
  std::vector<ScoredPair> scores;
  // Measurement noise scale of the initial selection.
  double sigma = 0;
};

// Builds a private model of one party's attributes: noisy pair scores, a
// greedy graph under `tau_prime`, useful candidate marginals from its
// triangulation, one measured marginal per attribute, a fitted theta, and
// `refine_rounds` rounds that add measured marginals the model misses. The
// whole run is (budget.epsilon, budget.delta)-DP through zCDP and is
// recorded in `ledger` as one "loc_mrf" entry.
absl::StatusOr<LocMrfResult> LocMrf(const Dataset& data, int64_t tau_prime,
                                    const PrivacyBudget& budget,
                                    const LocMrfOptions& options, Rng& rng,
                                    SpendLedger* ledger);

}  // namespace vfsynth

#endif  // VFSYNTH_PARTY_LOCAL_MRF_H_
