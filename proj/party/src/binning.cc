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

#include "vfsynth/party/binning.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "absl/status/status.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/privacy/mechanisms.h"

namespace vfsynth {

absl::StatusOr<BinnedData> BinAttributes(const Dataset& data, int b) {
  VFS_ASSIGN_OR_RETURN(Schema binned, BinnedSchema(data.schema(), b));
  BinnedData out;
  const int k = data.num_columns();
  for (int p = 0; p < k; ++p) {
    out.maps.push_back(
        BinMap::Make(data.schema().domain_size(data.columns()[p]), b));
  }
  std::vector<uint32_t> values(data.values().size());
  for (int64_t r = 0; r < data.num_rows(); ++r) {
    for (int p = 0; p < k; ++p) {
      values[r * k + p] = out.maps[p].BinOf(static_cast<int>(data.at(r, p)));
    }
  }
  VFS_ASSIGN_OR_RETURN(out.data, Dataset::Create(std::move(binned),
                                                 data.columns(),
                                                 std::move(values)));
  return out;
}

absl::StatusOr<BinningSpec> ValueDistributions(
    const Dataset& data, const std::vector<BinMap>& maps, int bin_count,
    double eps_per_attribute, Rng& rng, SpendLedger* ledger) {
  if (maps.size() != static_cast<size_t>(data.num_columns())) {
    return absl::InvalidArgumentError("one bin map per column is required");
  }
  BinningSpec spec;
  spec.bin_count = bin_count;
  int binned = 0;
  for (const BinMap& m : maps) binned += m.identity() ? 0 : 1;
  if (binned == 0) return spec;
  if (!(eps_per_attribute > 0)) {
    return absl::InvalidArgumentError(
        "value distributions need a positive epsilon");
  }
  const bool exact = std::isinf(eps_per_attribute);
  for (int p = 0; p < data.num_columns(); ++p) {
    const BinMap& map = maps[p];
    if (map.identity()) continue;
    std::vector<double> counts(map.domain_size, 0.0);
    for (int64_t r = 0; r < data.num_rows(); ++r) counts[data.at(r, p)] += 1;
    BinnedAttribute attr;
    attr.attribute = data.columns()[p];
    attr.map = map;
    for (int l = 0; l < map.bins; ++l) {
      std::vector<double> dist;
      double total = 0;
      for (int v = map.First(l); v < map.Last(l); ++v) {
        double c = counts[v];
        if (!exact) {
          VFS_ASSIGN_OR_RETURN(double z,
                               SampleLaplace(1.0 / eps_per_attribute, rng));
          c += z;
        }
        c = std::max(c, 0.0);
        dist.push_back(c);
        total += c;
      }
      for (double& x : dist) x = total > 0 ? x / total : 1.0 / dist.size();
      attr.distributions.push_back(std::move(dist));
    }
    spec.attributes.push_back(std::move(attr));
  }
  if (ledger != nullptr) {
    VFS_RETURN_IF_ERROR(ledger->Record("binning",
                                       eps_per_attribute * binned, 0.0,
                                       "sequential"));
  }
  return spec;
}

}  // namespace vfsynth
