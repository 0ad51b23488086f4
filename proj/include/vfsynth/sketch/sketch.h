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

#ifndef VFSYNTH_SKETCH_SKETCH_H_
#define VFSYNTH_SKETCH_SKETCH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/core/marginal.h"

namespace vfsynth {

// Public parameters of a family of private distinct-count sketches. Key ids
// are opaque fingerprints; the keys themselves never leave the parties.
struct SketchParams {
  double gamma = 0.1;
  int t = 0;
  double eps_prime = 0;
  // Number of phantom elements added to every sketch.
  int64_t k_p = 0;
  // Floor applied to every sketch value.
  int alpha_min = 0;
  std::vector<uint64_t> key_ids;

  // Derives k_p = ceil(1 / (e^eps' - 1)) and
  // alpha_min = ceil(log_{1+gamma}(1 / (1 - e^-eps'))).
  static absl::StatusOr<SketchParams> Create(double gamma, int t,
                                             double eps_prime,
                                             std::vector<uint64_t> key_ids);

  bool operator==(const SketchParams&) const = default;
};

// Sketches of one attribute: alphas[v * t + h] for value v and repeat h.
struct AttributeSketch {
  int attribute = -1;
  int domain_size = 0;
  std::vector<uint32_t> alphas;

  uint32_t at(int value, int repeat, int t) const {
    return alphas[static_cast<size_t>(value) * t + repeat];
  }
};

struct SketchSet {
  SketchParams params;
  // Ascending by attribute id.
  std::vector<AttributeSketch> attributes;

  const AttributeSketch* Find(int attribute) const;
  // t * sum of domain sizes.
  int64_t EntryCount() const;
};

// Maximum of a non-empty list.
absl::StatusOr<uint32_t> MergeMax(std::span<const uint32_t> alphas);

// Combines per-party sketch sets sharing parameters. A shared attribute is
// merged element-wise by max.
absl::StatusOr<SketchSet> MergeSketchSets(const std::vector<SketchSet>& sets);

// k / sum(1 / x_i).
absl::StatusOr<double> HarmonicMean(std::span<const double> values);

// Distinct-count estimate from t per-repeat maxima of a union of
// `sketch_count` sketches, with their phantoms removed:
// (gamma / ln(1+gamma)) * HM_h((1+gamma)^alpha_h) - sketch_count * k_p.
absl::StatusOr<double> EstimateUnionCardinality(
    std::span<const uint32_t> per_repeat_max, const SketchParams& params,
    int64_t sketch_count);

// Estimates the count histogram of `marginal`. Each cell is n_hat minus the
// estimated number of records that disagree with the cell on at least one
// attribute, clamped at zero.
absl::StatusOr<ContingencyHistogram> CarEstSketch(const Marginal& marginal,
                                                  const SketchSet& set,
                                                  double n_hat);

}  // namespace vfsynth

#endif  // VFSYNTH_SKETCH_SKETCH_H_
