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

#ifndef VFSYNTH_FO_FO_H_
#define VFSYNTH_FO_FO_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/core/marginal.h"

namespace vfsynth {

// Randomized-response output of one or more parties: one perturbed row per
// record over `attributes` (ascending global ids).
struct FoEncodedData {
  std::vector<int> attributes;
  std::vector<int> domain_sizes;
  std::vector<double> eps_prime;
  int64_t num_rows = 0;
  // num_rows x attributes.size(), row-major.
  std::vector<uint32_t> values;

  int PositionOf(int attribute) const;
};

struct GrrProbabilities {
  double keep = 1;   // e^eps / (e^eps + u - 1)
  double other = 0;  // 1 / (e^eps + u - 1), per other value
};

GrrProbabilities GrrProbabilitiesFor(double eps_prime, int domain_size);

// Joins per-party encodings column-wise. Row counts must agree.
absl::StatusOr<FoEncodedData> MergeFo(const std::vector<FoEncodedData>& parts);

// Unbiased count histogram of `marginal`: the histogram of the perturbed rows
// with the per-attribute transition inverted axis by axis. Cells may be
// negative.
absl::StatusOr<ContingencyHistogram> CarEstFo(const Marginal& marginal,
                                              const FoEncodedData& encoded);

}  // namespace vfsynth

#endif  // VFSYNTH_FO_FO_H_
