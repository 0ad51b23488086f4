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

#include "vfsynth/core/dataset.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace vfsynth {

absl::StatusOr<Dataset> Dataset::Create(Schema schema, std::vector<int> columns,
                                        std::vector<uint32_t> values) {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] < 0 || columns[i] >= schema.size()) {
      return absl::OutOfRangeError(
          absl::StrCat("column attribute id ", columns[i], " out of range"));
    }
    if (i > 0 && columns[i] <= columns[i - 1]) {
      return absl::InvalidArgumentError(
          "column ids must be strictly ascending");
    }
  }
  const size_t k = columns.size();
  if (k == 0 ? !values.empty() : values.size() % k != 0) {
    return absl::InvalidArgumentError("value count is not a multiple of width");
  }
  const int64_t n = k == 0 ? 0 : static_cast<int64_t>(values.size() / k);
  for (int64_t r = 0; r < n; ++r) {
    for (size_t p = 0; p < k; ++p) {
      const uint32_t v = values[r * k + p];
      const int u = schema.domain_size(columns[p]);
      if (v >= static_cast<uint32_t>(u)) {
        return absl::OutOfRangeError(absl::StrCat(
            "row ", r, ", attribute '", schema.attribute(columns[p]).name,
            "': value ", v, " outside [0, ", u, ")"));
      }
    }
  }
  Dataset d;
  d.schema_ = std::move(schema);
  d.columns_ = std::move(columns);
  d.values_ = std::move(values);
  d.num_rows_ = n;
  return d;
}

absl::StatusOr<Dataset> Dataset::FromRows(
    Schema schema, const std::vector<std::vector<int>>& rows) {
  const int d = schema.size();
  std::vector<uint32_t> values;
  values.reserve(rows.size() * d);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != d) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r, " has ", rows[r].size(), " values, expected ",
                       d));
    }
    for (int v : rows[r]) {
      if (v < 0) {
        return absl::OutOfRangeError(
            absl::StrCat("row ", r, " has a negative value"));
      }
      values.push_back(static_cast<uint32_t>(v));
    }
  }
  std::vector<int> columns(d);
  for (int j = 0; j < d; ++j) columns[j] = j;
  return Create(std::move(schema), std::move(columns), std::move(values));
}

Dataset Dataset::Empty(Schema schema) {
  Dataset d;
  d.columns_.resize(schema.size());
  for (int j = 0; j < schema.size(); ++j) d.columns_[j] = j;
  d.schema_ = std::move(schema);
  return d;
}

int Dataset::ColumnPosition(int attribute) const {
  auto it = std::lower_bound(columns_.begin(), columns_.end(), attribute);
  if (it == columns_.end() || *it != attribute) return -1;
  return static_cast<int>(it - columns_.begin());
}

absl::StatusOr<Dataset> Dataset::Project(
    const std::vector<int>& attributes) const {
  std::vector<int> cols = attributes;
  std::sort(cols.begin(), cols.end());
  std::vector<int> pos;
  for (int a : cols) {
    const int p = ColumnPosition(a);
    if (p < 0) {
      return absl::NotFoundError(
          absl::StrCat("attribute ", a, " not held by this dataset"));
    }
    pos.push_back(p);
  }
  Dataset out;
  out.schema_ = schema_;
  out.columns_ = cols;
  out.num_rows_ = num_rows_;
  out.values_.reserve(num_rows_ * cols.size());
  const size_t k = columns_.size();
  for (int64_t r = 0; r < num_rows_; ++r) {
    for (int p : pos) out.values_.push_back(values_[r * k + p]);
  }
  return out;
}

absl::StatusOr<Dataset> Dataset::JoinColumns(const std::vector<Dataset>& parts) {
  if (parts.empty()) return absl::InvalidArgumentError("nothing to join");
  const Schema& schema = parts[0].schema();
  const int64_t n = parts[0].num_rows();
  std::vector<std::pair<int, std::pair<size_t, int>>> order;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (!(parts[i].schema() == schema)) {
      return absl::InvalidArgumentError("joined parts have different schemas");
    }
    if (parts[i].num_rows() != n) {
      return absl::InvalidArgumentError(
          absl::StrCat("joined parts have different row counts: ", n, " vs ",
                       parts[i].num_rows()));
    }
    for (int p = 0; p < parts[i].num_columns(); ++p) {
      order.push_back({parts[i].columns()[p], {i, p}});
    }
  }
  std::sort(order.begin(), order.end());
  for (size_t i = 1; i < order.size(); ++i) {
    if (order[i].first == order[i - 1].first) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", order[i].first, " held by two parts"));
    }
  }
  Dataset out;
  out.schema_ = schema;
  out.num_rows_ = n;
  for (const auto& o : order) out.columns_.push_back(o.first);
  out.values_.reserve(n * order.size());
  for (int64_t r = 0; r < n; ++r) {
    for (const auto& o : order) {
      out.values_.push_back(parts[o.second.first].at(r, o.second.second));
    }
  }
  return out;
}

absl::StatusOr<ContingencyHistogram> ComputeHistogram(
    const Dataset& data, const Marginal& marginal) {
  std::vector<int> pos;
  for (int a : marginal.attributes()) {
    const int p = data.ColumnPosition(a);
    if (p < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", a, " not held by dataset"));
    }
    pos.push_back(p);
  }
  std::vector<int> sizes = DomainSizes(marginal, data.schema());
  ContingencyHistogram h(marginal, sizes);
  const std::vector<int64_t> strides = Strides(sizes);
  std::vector<double>& cells = h.mutable_cells();
  for (int64_t r = 0; r < data.num_rows(); ++r) {
    int64_t idx = 0;
    for (size_t k = 0; k < pos.size(); ++k) {
      idx += static_cast<int64_t>(data.at(r, pos[k])) * strides[k];
    }
    cells[idx] += 1.0;
  }
  return h;
}

}  // namespace vfsynth
