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

#ifndef VFSYNTH_MRF_SCORES_H_
#define VFSYNTH_MRF_SCORES_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/privacy/random.h"

namespace vfsynth {

// (n / 2) * || Pr[A, B] - Pr[A] Pr[B] ||_1 + N(0, sigma^2) for a two-way
// histogram. No noise is drawn when sigma is 0.
absl::StatusOr<double> RScore(const ContingencyHistogram& pair_hist, double n,
                              double sigma, Rng& rng);

// True iff the average count per cell, n_hat / cells, is at least theta * g.
bool ThetaUseful(int64_t cells, double n_hat, double theta, double g);

}  // namespace vfsynth

#endif  // VFSYNTH_MRF_SCORES_H_
