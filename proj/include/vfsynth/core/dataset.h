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

#ifndef VFSYNTH_CORE_DATASET_H_
#define VFSYNTH_CORE_DATASET_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/histogram.h"
#include "vfsynth/core/marginal.h"
#include "vfsynth/core/schema.h"

namespace vfsynth {

// An n x k table of integer codes. `columns` lists which global attribute ids
// (indices into `schema`) the table holds, ascending. A party's slice of the
// virtual global table is a Dataset over a subset of columns.
class Dataset {
 public:
  Dataset() = default;

  // Validates that every value is inside its attribute's domain.
  static absl::StatusOr<Dataset> Create(Schema schema, std::vector<int> columns,
                                        std::vector<uint32_t> values);

  // All schema attributes as columns.
  static absl::StatusOr<Dataset> FromRows(
      Schema schema, const std::vector<std::vector<int>>& rows);

  // Empty table over all schema attributes.
  static Dataset Empty(Schema schema);

  const Schema& schema() const { return schema_; }
  const std::vector<int>& columns() const { return columns_; }
  int num_columns() const { return static_cast<int>(columns_.size()); }
  int64_t num_rows() const { return num_rows_; }
  // Value of row `row` at column position `pos` (not attribute id).
  uint32_t at(int64_t row, int pos) const {
    return values_[row * columns_.size() + pos];
  }
  std::span<const uint32_t> row(int64_t r) const {
    return {values_.data() + r * columns_.size(), columns_.size()};
  }
  const std::vector<uint32_t>& values() const { return values_; }

  // Position of attribute id in `columns`, or -1.
  int ColumnPosition(int attribute) const;

  // Keeps only the given attribute ids (must all be present).
  absl::StatusOr<Dataset> Project(const std::vector<int>& attributes) const;

  // Column-wise concatenation of tables over the same schema and row count.
  // Column sets must be disjoint.
  static absl::StatusOr<Dataset> JoinColumns(const std::vector<Dataset>& parts);

 private:
  Schema schema_;
  std::vector<int> columns_;
  std::vector<uint32_t> values_;
  int64_t num_rows_ = 0;
};

// Exact count histogram of `marginal` over `data`.
absl::StatusOr<ContingencyHistogram> ComputeHistogram(const Dataset& data,
                                                      const Marginal& marginal);

}  // namespace vfsynth

#endif  // VFSYNTH_CORE_DATASET_H_
