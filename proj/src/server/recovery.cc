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

#include "vfsynth/server/recovery.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/core/marginal.h"
#include "vfsynth/core/status_macros.h"

namespace vfsynth {
namespace {

// Value of position `p` in flat cell `i`.
inline int ValueAt(int64_t i, int64_t stride, int size) {
  return static_cast<int>((i / stride) % size);
}

std::vector<double> OneWay(const std::vector<double>& cells,
                           int64_t stride, int size) {
  std::vector<double> out(size, 0.0);
  for (int64_t i = 0; i < static_cast<int64_t>(cells.size()); ++i) {
    out[ValueAt(i, stride, size)] += cells[i];
  }
  return out;
}

void ClampAndNormalize(std::vector<double>& cells) {
  double total = 0;
  for (double& c : cells) {
    c = std::max(c, 0.0);
    total += c;
  }
  if (total > 0) {
    for (double& c : cells) c /= total;
  }
}

struct Axis {
  int position;
  int attribute;
  int64_t stride;
  int size;
};

}  // namespace

absl::StatusOr<ContingencyHistogram> HisRec(const ContingencyHistogram& low,
                                            const BinningSpec& binning,
                                            const Schema& raw_schema) {
  const Marginal& m = low.marginal();
  const std::vector<int> raw_sizes = DomainSizes(m, raw_schema);
  const std::vector<int64_t> low_strides = Strides(low.sizes());
  const int k = m.arity();
  // Per position and raw value: offset into the low histogram and weight.
  std::vector<std::vector<int64_t>> offset(k);
  std::vector<std::vector<double>> weight(k);
  for (int p = 0; p < k; ++p) {
    const int a = m[p];
    const BinnedAttribute* binned = binning.Find(a);
    offset[p].resize(raw_sizes[p]);
    weight[p].assign(raw_sizes[p], 1.0);
    if (binned == nullptr) {
      if (low.sizes()[p] != raw_sizes[p]) {
        return absl::FailedPreconditionError(absl::StrCat(
            "no value distribution for binned attribute ", a));
      }
      for (int v = 0; v < raw_sizes[p]; ++v) offset[p][v] = v * low_strides[p];
      continue;
    }
    if (binned->map.domain_size != raw_sizes[p] ||
        binned->map.bins != low.sizes()[p] ||
        static_cast<int>(binned->distributions.size()) != binned->map.bins) {
      return absl::InvalidArgumentError(absl::StrCat(
          "binning of attribute ", a, " does not match the histogram"));
    }
    for (int v = 0; v < raw_sizes[p]; ++v) {
      const int bin = binned->map.BinOf(v);
      const std::vector<double>& dist = binned->distributions[bin];
      const int h = v - binned->map.First(bin);
      if (h >= static_cast<int>(dist.size())) {
        return absl::InvalidArgumentError("value distribution too short");
      }
      offset[p][v] = bin * low_strides[p];
      weight[p][v] = dist[h];
    }
  }
  ContingencyHistogram out(m, raw_sizes);
  std::vector<int> tuple(k, 0);
  std::vector<double>& cells = out.mutable_cells();
  for (int64_t i = 0; i < static_cast<int64_t>(cells.size()); ++i) {
    int64_t src = 0;
    double w = 1.0;
    for (int p = 0; p < k; ++p) {
      src += offset[p][tuple[p]];
      w *= weight[p][tuple[p]];
    }
    cells[i] = low[src] * w;
    for (int p = k - 1; p >= 0; --p) {
      if (++tuple[p] < raw_sizes[p]) break;
      tuple[p] = 0;
    }
  }
  return out;
}

absl::StatusOr<double> ConsistencyGap(
    const ContingencyHistogram& distribution,
    const std::map<int, ContingencyHistogram>& references) {
  const Marginal& m = distribution.marginal();
  const std::vector<int64_t> strides = Strides(distribution.sizes());
  double gap = 0;
  for (const auto& [a, ref] : references) {
    const int p = m.PositionOf(a);
    if (p < 0) continue;
    const std::vector<double> proj =
        OneWay(distribution.cells(), strides[p], distribution.sizes()[p]);
    if (static_cast<int64_t>(proj.size()) != ref.size()) {
      return absl::InvalidArgumentError("reference size mismatch");
    }
    double l1 = 0;
    for (size_t v = 0; v < proj.size(); ++v) l1 += std::abs(proj[v] - ref[v]);
    gap = std::max(gap, l1);
  }
  return gap;
}

absl::StatusOr<ConsistencyResult> EnforceConsistency(
    const ContingencyHistogram& estimate,
    const std::map<int, ContingencyHistogram>& references, double n_hat,
    const ConsistencyOptions& options) {
  const Marginal& m = estimate.marginal();
  const std::vector<int64_t> strides = Strides(estimate.sizes());
  const int64_t cells = estimate.size();

  ConsistencyResult out;
  std::vector<double> h = estimate.cells();
  double total = 0;
  for (double& c : h) {
    c = std::max(c, 0.0);
    total += c;
  }
  if (!(total > 0)) {
    return absl::InvalidArgumentError("estimate has no positive mass");
  }
  for (double& c : h) c /= total;

  std::vector<Axis> axes;
  for (const auto& [a, ref] : references) {
    const int p = m.PositionOf(a);
    if (p < 0) continue;
    if (ref.marginal() != Marginal{a} || ref.size() != estimate.sizes()[p]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "reference for attribute ", a, " has the wrong shape"));
    }
    VFS_ASSIGN_OR_RETURN(ContingencyHistogram norm, ref.Normalized());
    out.references.emplace(a, std::move(norm));
    axes.push_back({p, a, strides[p], estimate.sizes()[p]});
  }

  auto gap_of = [&]() {
    double gap = 0;
    for (const Axis& ax : axes) {
      const std::vector<double> proj = OneWay(h, ax.stride, ax.size);
      const ContingencyHistogram& ref = out.references.at(ax.attribute);
      double l1 = 0;
      for (int v = 0; v < ax.size; ++v) l1 += std::abs(proj[v] - ref[v]);
      gap = std::max(gap, l1);
    }
    return gap;
  };

  out.gaps.push_back(gap_of());
  while (out.gaps.back() >= options.tolerance &&
         out.iterations < options.max_iterations) {
    for (const Axis& ax : axes) {
      ContingencyHistogram& ref = out.references.at(ax.attribute);
      const std::vector<double> proj = OneWay(h, ax.stride, ax.size);
      const double co_cells = static_cast<double>(cells / ax.size);
      std::vector<double> shift(ax.size);
      for (int v = 0; v < ax.size; ++v) {
        const double mean = 0.5 * (ref[v] + proj[v]);
        ref[v] = mean;
        shift[v] = (mean - proj[v]) / co_cells;
      }
      for (int64_t i = 0; i < cells; ++i) {
        h[i] += shift[ValueAt(i, ax.stride, ax.size)];
      }
      ClampAndNormalize(h);
    }
    ++out.iterations;
    out.gaps.push_back(gap_of());
  }

  VFS_ASSIGN_OR_RETURN(
      out.histogram,
      ContingencyHistogram::Create(m, estimate.sizes(), std::move(h),
                                   HistogramKind::kDistribution));
  out.histogram = out.histogram.Scaled(n_hat);
  return out;
}

}  // namespace vfsynth
