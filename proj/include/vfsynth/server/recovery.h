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

#ifndef VFSYNTH_SERVER_RECOVERY_H_
#define VFSYNTH_SERVER_RECOVERY_H_

#include <map>
#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/binning.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/core/schema.h"

namespace vfsynth {

// Spreads each cell of a histogram over binned attributes across the raw
// cells it covers, in proportion to the product of the per-bin value
// distributions. Attributes that are not binned pass through. Mass is kept.
absl::StatusOr<ContingencyHistogram> HisRec(const ContingencyHistogram& low,
                                            const BinningSpec& binning,
                                            const Schema& raw_schema);

struct ConsistencyOptions {
  int max_iterations = 100;
  // Stop once every attribute's L1 gap is below this.
  double tolerance = 1e-4;
};

struct ConsistencyResult {
  // Counts: the consistent distribution times n_hat.
  ContingencyHistogram histogram;
  // Updated one-way references, as distributions.
  std::map<int, ContingencyHistogram> references;
  int iterations = 0;
  // Largest one-way L1 gap before the first and after every iteration.
  std::vector<double> gaps;
};

// Reconciles an estimated histogram with one-way reference marginals of its
// attributes. Everything is first turned into a distribution (negative cells
// of the estimate clamped). Each iteration, per attribute: the reference and
// the estimate's marginal are both set to their mean, the estimate moving by
// spreading each value's difference evenly over its co-cells; negative
// cells are then clamped and the estimate renormalized.
absl::StatusOr<ConsistencyResult> EnforceConsistency(
    const ContingencyHistogram& estimate,
    const std::map<int, ContingencyHistogram>& references, double n_hat,
    const ConsistencyOptions& options = {});

// Largest L1 gap between a distribution's one-way marginals and the
// references.
absl::StatusOr<double> ConsistencyGap(
    const ContingencyHistogram& distribution,
    const std::map<int, ContingencyHistogram>& references);

}  // namespace vfsynth

#endif  // VFSYNTH_SERVER_RECOVERY_H_
