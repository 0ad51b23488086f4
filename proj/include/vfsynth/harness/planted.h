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

#ifndef VFSYNTH_HARNESS_PLANTED_H_
#define VFSYNTH_HARNESS_PLANTED_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "vfsynth/core/dataset.h"

namespace vfsynth {

// With probability `strength` the target copies the source's value (mod the
// target's domain size); otherwise it is drawn like an uncoupled attribute.
struct Coupling {
  int source = 0;
  int target = 1;
  double strength = 0.9;
};

// Synthetic table with known pairwise dependencies. Attributes are named
// a0, a1, ... and generated in index order, so each coupling's source must
// precede its target. Uncoupled draws put probability `skew` on value 0 and
// spread the rest evenly. The default couplings join attributes that a
// round-robin split places on different parties for 2, 3 and 6 parties.
struct PlantedConfig {
  int d = 6;
  int domain_size = 2;
  int64_t n = 20000;
  double skew = 0.5;
  std::vector<Coupling> couplings = {{0, 1, 0.9}, {2, 3, 0.9}};
  uint64_t seed = 0;
};

absl::StatusOr<Dataset> GeneratePlanted(const PlantedConfig& config);

nlohmann::json ToJson(const PlantedConfig& config);
absl::StatusOr<PlantedConfig> PlantedFromJson(const nlohmann::json& json);

}  // namespace vfsynth

#endif  // VFSYNTH_HARNESS_PLANTED_H_
