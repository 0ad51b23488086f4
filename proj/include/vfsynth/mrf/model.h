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

#ifndef VFSYNTH_MRF_MODEL_H_
#define VFSYNTH_MRF_MODEL_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/core/marginal.h"
#include "vfsynth/core/schema.h"
#include "vfsynth/mrf/factor.h"
#include "vfsynth/mrf/graph.h"
#include "vfsynth/privacy/random.h"

namespace vfsynth {

// Log-linear model Pr[x] proportional to exp(sum_M theta_M[x_M]) over a set
// of marginals S, with inference on a junction tree of the graph that joins
// the base graph with every marginal of S. Calibration happens eagerly on
// every mutation, so const methods are safe to call concurrently.
class MrfModel {
 public:
  MrfModel() = default;

  // All variables must be nodes of `base_graph`; every marginal must lie
  // inside `variables`. Theta starts at zero.
  static absl::StatusOr<MrfModel> Create(Schema schema,
                                         const AttributeGraph& base_graph,
                                         std::vector<Marginal> marginals,
                                         double total);

  const Schema& schema() const { return schema_; }
  const std::vector<int>& variables() const { return graph_.nodes(); }
  const std::vector<Marginal>& marginals() const { return marginals_; }
  const std::vector<std::vector<double>>& theta() const { return theta_; }
  int64_t ThetaSize() const;
  double total() const { return total_; }
  void set_total(double total) { total_ = total; }
  // Base graph plus the cliques of S (before triangulation).
  const AttributeGraph& graph() const { return graph_; }
  const Triangulation& triangulation() const { return triangulation_; }
  double log_partition() const { return log_z_; }

  absl::Status SetTheta(std::vector<std::vector<double>> theta);
  absl::Status SetTheta(int index, std::vector<double> values);

  // Appends `m` to S with zero parameters; extends the graph if needed.
  // Returns the index of `m` in S (existing index if already present).
  absl::StatusOr<int> AddMarginal(const Marginal& m);
  int IndexOf(const Marginal& m) const;

  // Model marginal scaled to total().
  absl::StatusOr<ContingencyHistogram> InferMarginal(const Marginal& m) const;
  // Same, as a probability vector, for marginals inside one clique only.
  absl::StatusOr<std::vector<double>> CliqueMarginal(const Marginal& m) const;

  // Forward sampling along the junction tree.
  absl::StatusOr<Dataset> Sample(int64_t count, Rng& rng) const;

 private:
  absl::Status Rebuild();
  absl::Status Calibrate();

  Schema schema_;
  AttributeGraph graph_;
  std::vector<Marginal> marginals_;
  std::vector<std::vector<double>> theta_;
  double total_ = 1.0;

  Triangulation triangulation_;
  std::vector<int> assignment_;  // marginal -> clique
  std::vector<int> parent_;      // clique tree rooted at 0
  std::vector<int> order_;       // pre-order
  std::vector<Factor> beliefs_;  // normalized log probabilities per clique
  double log_z_ = 0;
};

struct FitOptions {
  int max_iterations = 3000;
  // Stop once 0.5 * sum ||mu - y||^2 (probability units) drops below this.
  double tolerance = 1e-10;
  double initial_step = 1.0;
};

struct FitResult {
  bool converged = false;
  int iterations = 0;
  double loss = 0;
};

// Fits theta so the model's marginals match `targets` (each normalized
// before use; each target's marginal must be in S) by mirror descent:
// theta_M -= step * (mu_M - y_M). A step is kept only if the loss strictly
// drops; the step doubles after a success and halves after a failure.
// Returns the best model reached; `converged` is false when the iteration
// cap or step underflow stopped it first.
absl::StatusOr<FitResult> FitTheta(MrfModel& model,
                                   const std::vector<ContingencyHistogram>& targets,
                                   const FitOptions& options = {});

}  // namespace vfsynth

#endif  // VFSYNTH_MRF_MODEL_H_
