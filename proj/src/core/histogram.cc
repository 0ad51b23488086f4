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

#include "vfsynth/core/histogram.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace vfsynth {

ContingencyHistogram::ContingencyHistogram(Marginal marginal,
                                           std::vector<int> sizes)
    : marginal_(std::move(marginal)),
      sizes_(std::move(sizes)),
      cells_(CellCount(sizes_), 0.0) {}

absl::StatusOr<ContingencyHistogram> ContingencyHistogram::Create(
    Marginal marginal, std::vector<int> sizes, std::vector<double> cells,
    HistogramKind kind) {
  if (static_cast<int>(sizes.size()) != marginal.arity()) {
    return absl::InvalidArgumentError("sizes do not match marginal arity");
  }
  if (static_cast<int64_t>(cells.size()) != CellCount(sizes)) {
    return absl::InvalidArgumentError(
        absl::StrCat("histogram has ", cells.size(), " cells, expected ",
                     CellCount(sizes)));
  }
  if (kind == HistogramKind::kDistribution) {
    double sum = 0;
    for (double c : cells) {
      if (!(c >= 0)) {
        return absl::InvalidArgumentError(
            "distribution has a negative or NaN cell");
      }
      sum += c;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      return absl::InvalidArgumentError(
          absl::StrCat("distribution sums to ", sum));
    }
  }
  ContingencyHistogram h;
  h.marginal_ = std::move(marginal);
  h.sizes_ = std::move(sizes);
  h.cells_ = std::move(cells);
  h.kind_ = kind;
  return h;
}

ContingencyHistogram ContingencyHistogram::Zeros(const Marginal& marginal,
                                                 const Schema& schema) {
  return ContingencyHistogram(marginal, DomainSizes(marginal, schema));
}

double ContingencyHistogram::Total() const {
  double sum = 0;
  for (double c : cells_) sum += c;
  return sum;
}

absl::StatusOr<ContingencyHistogram> ContingencyHistogram::Normalized() const {
  const double total = Total();
  if (!(total > 0) || !std::isfinite(total)) {
    return absl::FailedPreconditionError(
        absl::StrCat("cannot normalize histogram ", marginal_.DebugString(),
                     " with total ", total));
  }
  ContingencyHistogram out = *this;
  for (double& c : out.cells_) c /= total;
  out.kind_ = HistogramKind::kDistribution;
  return out;
}

ContingencyHistogram ContingencyHistogram::Scaled(double factor) const {
  ContingencyHistogram out = *this;
  for (double& c : out.cells_) c *= factor;
  out.kind_ = HistogramKind::kCounts;
  return out;
}

absl::StatusOr<ContingencyHistogram> ContingencyHistogram::Project(
    const Marginal& sub) const {
  if (!sub.IsSubsetOf(marginal_)) {
    return absl::InvalidArgumentError(
        absl::StrCat(sub.DebugString(), " is not a subset of ",
                     marginal_.DebugString()));
  }
  std::vector<int> sub_sizes;
  std::vector<int> keep;
  for (int a : sub.attributes()) {
    const int pos = marginal_.PositionOf(a);
    keep.push_back(pos);
    sub_sizes.push_back(sizes_[pos]);
  }
  ContingencyHistogram out(sub, sub_sizes);
  out.kind_ = kind_;
  const std::vector<int64_t> sub_strides = Strides(sub_sizes);
  // Walk the cells with an odometer so no division is needed per cell.
  std::vector<int> tuple(sizes_.size(), 0);
  for (int64_t i = 0; i < size(); ++i) {
    int64_t j = 0;
    for (size_t k = 0; k < keep.size(); ++k) {
      j += tuple[keep[k]] * sub_strides[k];
    }
    out.cells_[j] += cells_[i];
    for (size_t p = sizes_.size(); p-- > 0;) {
      if (++tuple[p] < sizes_[p]) break;
      tuple[p] = 0;
    }
  }
  return out;
}

namespace {

absl::Status CheckSameShape(const ContingencyHistogram& a,
                            const ContingencyHistogram& b) {
  if (a.marginal() != b.marginal() || a.sizes() != b.sizes()) {
    return absl::InvalidArgumentError(
        absl::StrCat("histogram shapes differ: ", a.marginal().DebugString(),
                     " vs ", b.marginal().DebugString()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> Tvd(const ContingencyHistogram& a,
                           const ContingencyHistogram& b) {
  if (absl::Status s = CheckSameShape(a, b); !s.ok()) return s;
  const double ta = a.Total();
  const double tb = b.Total();
  if (!(ta > 0) || !(tb > 0)) {
    return absl::FailedPreconditionError("TVD of a zero-mass histogram");
  }
  double sum = 0;
  for (int64_t i = 0; i < a.size(); ++i) {
    sum += std::abs(a[i] / ta - b[i] / tb);
  }
  return 0.5 * sum;
}

absl::StatusOr<double> L1Distance(const ContingencyHistogram& a,
                                  const ContingencyHistogram& b) {
  if (absl::Status s = CheckSameShape(a, b); !s.ok()) return s;
  double sum = 0;
  for (int64_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

}  // namespace vfsynth
