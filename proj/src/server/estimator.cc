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

#include "vfsynth/server/estimator.h"

#include <utility>

#include "absl/status/status.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/server/recovery.h"

namespace vfsynth {

absl::StatusOr<EncodedView> EncodedView::Create(
    const std::vector<PartyMessage>& messages, const Schema& raw_schema,
    double n_hat) {
  if (messages.empty()) return absl::InvalidArgumentError("no messages");
  EncodedView view;
  view.raw_schema_ = raw_schema;
  view.n_hat_ = n_hat;
  const int bin_count = messages[0].binning.value().bin_count;
  std::vector<SketchSet> sets;
  std::vector<FoEncodedData> fos;
  for (const PartyMessage& msg : messages) {
    if (msg.binning.value().bin_count != bin_count) {
      return absl::InvalidArgumentError("parties disagree on the bin count");
    }
    for (const BinnedAttribute& a : msg.binning.value().attributes) {
      view.binning_.attributes.push_back(a);
    }
    if (msg.sketches) sets.push_back(msg.sketches->value());
    if (msg.fo) fos.push_back(msg.fo->value());
  }
  view.binning_.bin_count = bin_count;
  VFS_ASSIGN_OR_RETURN(view.binned_schema_,
                       BinnedSchema(raw_schema, bin_count));
  if (!sets.empty() && !fos.empty()) {
    return absl::InvalidArgumentError("parties used different encoders");
  }
  if (!sets.empty()) {
    VFS_ASSIGN_OR_RETURN(SketchSet merged, MergeSketchSets(sets));
    view.sketches_ = std::move(merged);
  } else {
    VFS_ASSIGN_OR_RETURN(FoEncodedData merged, MergeFo(fos));
    view.fo_ = std::move(merged);
  }
  return view;
}

absl::StatusOr<ContingencyHistogram> EncodedView::EstimateBinned(
    const Marginal& m) const {
  if (sketches_) return CarEstSketch(m, *sketches_, n_hat_);
  return CarEstFo(m, *fo_);
}

absl::StatusOr<ContingencyHistogram> EncodedView::Estimate(
    const Marginal& m) const {
  VFS_ASSIGN_OR_RETURN(ContingencyHistogram low, EstimateBinned(m));
  bool binned = false;
  for (int a : m.attributes()) binned |= binning_.Find(a) != nullptr;
  if (!binned) return low;
  return HisRec(low, binning_, raw_schema_);
}

MarginalEstimator EncodedView::AsEstimator() const {
  return [this](const Marginal& m) { return Estimate(m); };
}

}  // namespace vfsynth
