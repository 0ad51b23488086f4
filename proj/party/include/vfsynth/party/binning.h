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

#ifndef VFSYNTH_PARTY_BINNING_H_
#define VFSYNTH_PARTY_BINNING_H_

#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/binning.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/privacy/budget.h"
#include "vfsynth/privacy/random.h"

namespace vfsynth {

struct BinnedData {
  // Same columns and rows, over the binned schema.
  Dataset data;
  // One map per column of the input, in column order.
  std::vector<BinMap> maps;
};

// Equal-width binning of every column into min(b, u) bins. b == 0 leaves the
// data unchanged.
absl::StatusOr<BinnedData> BinAttributes(const Dataset& data, int b);

// Noisy per-bin value distributions for every column whose map is not the
// identity: in-bin counts plus Laplace(1 / eps_per_attribute) noise, clamped
// at zero and renormalized (uniform when nothing is left). Records
// eps_per_attribute per binned column in `ledger`.
absl::StatusOr<BinningSpec> ValueDistributions(
    const Dataset& data, const std::vector<BinMap>& maps, int bin_count,
    double eps_per_attribute, Rng& rng, SpendLedger* ledger);

}  // namespace vfsynth

#endif  // VFSYNTH_PARTY_BINNING_H_
