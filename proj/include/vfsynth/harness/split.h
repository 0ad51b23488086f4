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

#ifndef VFSYNTH_HARNESS_SPLIT_H_
#define VFSYNTH_HARNESS_SPLIT_H_

#include <vector>

#include "absl/status/statusor.h"

namespace vfsynth {

// Deals attribute ids 0..d-1 round-robin over m parties, so party i holds
// i, i+m, i+2m, ... With m == d every party holds one attribute.
absl::StatusOr<std::vector<std::vector<int>>> SplitUniform(int d, int m);

// Checks that `lists` partitions 0..d-1 with no empty part, and returns the
// lists with each part sorted.
absl::StatusOr<std::vector<std::vector<int>>> ValidatePartition(
    std::vector<std::vector<int>> lists, int d);

}  // namespace vfsynth

#endif  // VFSYNTH_HARNESS_SPLIT_H_
