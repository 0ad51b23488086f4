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

#include "vfsynth/fo/encoder.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/privacy/accounting.h"

namespace vfsynth {

absl::StatusOr<int> GrrPerturb(int value, int domain_size, double eps_prime,
                               Rng& rng) {
  if (value < 0 || value >= domain_size) {
    return absl::OutOfRangeError(absl::StrCat(
        "value ", value, " outside [0, ", domain_size, ")"));
  }
  if (!(eps_prime >= 0)) {
    return absl::InvalidArgumentError("epsilon must be non-negative");
  }
  const double r = UniformOpen01(rng);
  const GrrProbabilities pr = GrrProbabilitiesFor(eps_prime, domain_size);
  if (r < pr.keep) return value;
  // Reuse the rest of the draw to pick one of the u - 1 other values.
  int other = static_cast<int>((r - pr.keep) / (1.0 - pr.keep) *
                               (domain_size - 1));
  if (other >= domain_size - 1) other = domain_size - 2;
  return other >= value ? other + 1 : other;
}

absl::StatusOr<FoEncodedData> LocEncFo(const Dataset& data,
                                       const PrivacyBudget& budget,
                                       int global_d, Rng& rng,
                                       SpendLedger* ledger) {
  if (global_d < data.num_columns() || global_d < 1) {
    return absl::InvalidArgumentError(
        "global attribute count must cover this party's attributes");
  }
  VFS_ASSIGN_OR_RETURN(double eps_prime,
                       FoPerAttributeEpsilon(budget.epsilon, global_d,
                                             budget.delta));
  if (ledger != nullptr) {
    const double share = static_cast<double>(data.num_columns()) / global_d;
    VFS_RETURN_IF_ERROR(ledger->Record("loc_enc_fo", budget.epsilon * share,
                                       budget.delta * share, "fo-min-bound"));
  }
  FoEncodedData out;
  out.attributes = data.columns();
  out.num_rows = data.num_rows();
  for (int a : data.columns()) {
    out.domain_sizes.push_back(data.schema().domain_size(a));
    out.eps_prime.push_back(eps_prime);
  }
  out.values.reserve(data.values().size());
  for (int64_t r = 0; r < data.num_rows(); ++r) {
    for (int p = 0; p < data.num_columns(); ++p) {
      VFS_ASSIGN_OR_RETURN(int v, GrrPerturb(static_cast<int>(data.at(r, p)),
                                             out.domain_sizes[p], eps_prime,
                                             rng));
      out.values.push_back(static_cast<uint32_t>(v));
    }
  }
  return out;
}

}  // namespace vfsynth
