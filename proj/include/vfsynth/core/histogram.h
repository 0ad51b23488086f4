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

#ifndef VFSYNTH_CORE_HISTOGRAM_H_
#define VFSYNTH_CORE_HISTOGRAM_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/marginal.h"
#include "vfsynth/core/schema.h"

namespace vfsynth {

enum class HistogramKind { kCounts, kDistribution };

// Dense vector over the mixed-radix cell space of a marginal.
class ContingencyHistogram {
 public:
  ContingencyHistogram() = default;

  // All-zero counts histogram.
  ContingencyHistogram(Marginal marginal, std::vector<int> sizes);

  // Validates the cell count and, for kDistribution, non-negativity and unit
  // mass within 1e-9.
  static absl::StatusOr<ContingencyHistogram> Create(
      Marginal marginal, std::vector<int> sizes, std::vector<double> cells,
      HistogramKind kind);

  // Zero histogram shaped for `marginal` under `schema`.
  static ContingencyHistogram Zeros(const Marginal& marginal,
                                    const Schema& schema);

  const Marginal& marginal() const { return marginal_; }
  const std::vector<int>& sizes() const { return sizes_; }
  const std::vector<double>& cells() const { return cells_; }
  std::vector<double>& mutable_cells() { return cells_; }
  HistogramKind kind() const { return kind_; }
  void set_kind(HistogramKind kind) { kind_ = kind; }
  int64_t size() const { return static_cast<int64_t>(cells_.size()); }
  double operator[](int64_t i) const { return cells_[i]; }
  double& operator[](int64_t i) { return cells_[i]; }

  double Total() const;

  // Divides by the total. Errors if the total is not positive.
  absl::StatusOr<ContingencyHistogram> Normalized() const;

  // Copy with every cell multiplied by `factor`; the kind becomes kCounts.
  ContingencyHistogram Scaled(double factor) const;

  // Sums out every attribute not in `sub`. `sub` must be a subset.
  absl::StatusOr<ContingencyHistogram> Project(const Marginal& sub) const;

 private:
  Marginal marginal_;
  std::vector<int> sizes_;
  std::vector<double> cells_;
  HistogramKind kind_ = HistogramKind::kCounts;
};

// Total variation distance of the two normalized histograms.
absl::StatusOr<double> Tvd(const ContingencyHistogram& a,
                           const ContingencyHistogram& b);

// Plain L1 distance of the raw cells (no normalization).
absl::StatusOr<double> L1Distance(const ContingencyHistogram& a,
                                  const ContingencyHistogram& b);

}  // namespace vfsynth

#endif  // VFSYNTH_CORE_HISTOGRAM_H_
