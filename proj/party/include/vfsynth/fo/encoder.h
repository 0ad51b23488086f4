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

#ifndef VFSYNTH_FO_ENCODER_H_
#define VFSYNTH_FO_ENCODER_H_

#include "absl/status/statusor.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/fo/fo.h"
#include "vfsynth/privacy/budget.h"
#include "vfsynth/privacy/random.h"

namespace vfsynth {

// Keeps `value` with probability e^eps / (e^eps + u - 1), otherwise reports a
// uniformly chosen other value. Consumes exactly one draw from `rng`.
absl::StatusOr<int> GrrPerturb(int value, int domain_size, double eps_prime,
                               Rng& rng);

// Perturbs every cell of `data`. The per-attribute epsilon is the largest one
// whose whole-record guarantee over `global_d` attributes equals `budget`;
// this party records its d_i / global_d share in `ledger`.
absl::StatusOr<FoEncodedData> LocEncFo(const Dataset& data,
                                       const PrivacyBudget& budget,
                                       int global_d, Rng& rng,
                                       SpendLedger* ledger);

}  // namespace vfsynth

#endif  // VFSYNTH_FO_ENCODER_H_
