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

#ifndef VFSYNTH_SERVER_ESTIMATOR_H_
#define VFSYNTH_SERVER_ESTIMATOR_H_

#include <functional>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/binning.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/core/marginal.h"
#include "vfsynth/core/schema.h"
#include "vfsynth/fo/fo.h"
#include "vfsynth/message/party_message.h"
#include "vfsynth/sketch/sketch.h"

namespace vfsynth {

// Count histogram of a marginal over raw attributes.
using MarginalEstimator =
    std::function<absl::StatusOr<ContingencyHistogram>(const Marginal&)>;

// Merged encodings of all parties plus what is needed to bring estimates
// back to raw domains.
class EncodedView {
 public:
  // All messages must use the same encoder and bin count.
  static absl::StatusOr<EncodedView> Create(
      const std::vector<PartyMessage>& messages, const Schema& raw_schema,
      double n_hat);

  const Schema& raw_schema() const { return raw_schema_; }
  const Schema& binned_schema() const { return binned_schema_; }
  const BinningSpec& binning() const { return binning_; }
  double n_hat() const { return n_hat_; }

  // Estimate over binned attributes.
  absl::StatusOr<ContingencyHistogram> EstimateBinned(const Marginal& m) const;
  // Estimate over raw attributes (recovered when any attribute is binned).
  absl::StatusOr<ContingencyHistogram> Estimate(const Marginal& m) const;

  MarginalEstimator AsEstimator() const;

 private:
  Schema raw_schema_;
  Schema binned_schema_;
  BinningSpec binning_;
  double n_hat_ = 0;
  std::optional<SketchSet> sketches_;
  std::optional<FoEncodedData> fo_;
};

}  // namespace vfsynth

#endif  // VFSYNTH_SERVER_ESTIMATOR_H_
