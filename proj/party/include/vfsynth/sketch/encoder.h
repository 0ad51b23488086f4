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

#ifndef VFSYNTH_SKETCH_ENCODER_H_
#define VFSYNTH_SKETCH_ENCODER_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/privacy/budget.h"
#include "vfsynth/privacy/random.h"
#include "vfsynth/sketch/key_ring.h"
#include "vfsynth/sketch/sketch.h"

namespace vfsynth {

// Private sketch of a set of record ids under one key: the max of the ids'
// geometric hashes, k_p phantom geometrics and alpha_min. Duplicate ids hash
// identically, so a multiset sketches as its distinct elements.
absl::StatusOr<uint32_t> Dpfm(std::span<const uint64_t> ids,
                              const SketchParams& params, const KeyRing& ring,
                              uint64_t key_id, Rng& rng);

struct SketchEncodeOptions {
  double gamma = 0.1;
  int t = 2000;
  // Attribute count of the whole federation; fixes the per-repeat epsilon.
  int global_d = 0;
  uint64_t seed = 0;
  int threads = 1;
};

// Sketches every (attribute, value) id set of `data` for all repeats. Row
// index is the record id. The joint guarantee of all parties' encodings is
// `budget`; this party records its share d_i / global_d in `ledger`.
// Phantom draws come from per-(attribute, value, repeat) streams, so output
// does not depend on `threads`.
absl::StatusOr<SketchSet> LocEncSketch(const Dataset& data,
                                       const PrivacyBudget& budget,
                                       const SketchEncodeOptions& options,
                                       const KeyRing& ring,
                                       SpendLedger* ledger);

}  // namespace vfsynth

#endif  // VFSYNTH_SKETCH_ENCODER_H_
