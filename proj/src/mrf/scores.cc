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

#include "vfsynth/mrf/scores.h"

#include <cmath>

#include "absl/status/status.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/privacy/mechanisms.h"

namespace vfsynth {

absl::StatusOr<double> RScore(const ContingencyHistogram& pair_hist, double n,
                              double sigma, Rng& rng) {
  if (pair_hist.marginal().arity() != 2) {
    return absl::InvalidArgumentError("R-score needs a two-way histogram");
  }
  VFS_ASSIGN_OR_RETURN(ContingencyHistogram p, pair_hist.Normalized());
  const int ua = p.sizes()[0];
  const int ub = p.sizes()[1];
  std::vector<double> pa(ua, 0.0), pb(ub, 0.0);
  for (int a = 0; a < ua; ++a) {
    for (int b = 0; b < ub; ++b) {
      pa[a] += p[a * ub + b];
      pb[b] += p[a * ub + b];
    }
  }
  double l1 = 0;
  for (int a = 0; a < ua; ++a) {
    for (int b = 0; b < ub; ++b) l1 += std::abs(p[a * ub + b] - pa[a] * pb[b]);
  }
  double score = 0.5 * n * l1;
  if (sigma > 0) {
    VFS_ASSIGN_OR_RETURN(double noise, SampleGaussian(sigma, rng));
    score += noise;
  }
  return score;
}

bool ThetaUseful(int64_t cells, double n_hat, double theta, double g) {
  return n_hat / static_cast<double>(cells) >= theta * g;
}

}  // namespace vfsynth
