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

#include "vfsynth/fo/fo.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace vfsynth {

int FoEncodedData::PositionOf(int attribute) const {
  auto it = std::lower_bound(attributes.begin(), attributes.end(), attribute);
  if (it == attributes.end() || *it != attribute) return -1;
  return static_cast<int>(it - attributes.begin());
}

GrrProbabilities GrrProbabilitiesFor(double eps_prime, int domain_size) {
  if (std::isinf(eps_prime)) return {1.0, 0.0};
  const double e = std::exp(eps_prime);
  const double denom = e + domain_size - 1;
  return {e / denom, 1.0 / denom};
}

absl::StatusOr<FoEncodedData> MergeFo(const std::vector<FoEncodedData>& parts) {
  if (parts.empty()) return absl::InvalidArgumentError("nothing to merge");
  struct Col {
    int attribute;
    size_t part;
    int pos;
  };
  std::vector<Col> cols;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].num_rows != parts[0].num_rows) {
      return absl::InvalidArgumentError(absl::StrCat(
          "encoded parts have different row counts: ", parts[0].num_rows,
          " vs ", parts[i].num_rows));
    }
    for (size_t p = 0; p < parts[i].attributes.size(); ++p) {
      cols.push_back({parts[i].attributes[p], i, static_cast<int>(p)});
    }
  }
  std::sort(cols.begin(), cols.end(),
            [](const Col& a, const Col& b) { return a.attribute < b.attribute; });
  FoEncodedData out;
  out.num_rows = parts[0].num_rows;
  for (size_t c = 0; c < cols.size(); ++c) {
    if (c > 0 && cols[c].attribute == cols[c - 1].attribute) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", cols[c].attribute, " encoded twice"));
    }
    const FoEncodedData& src = parts[cols[c].part];
    out.attributes.push_back(cols[c].attribute);
    out.domain_sizes.push_back(src.domain_sizes[cols[c].pos]);
    out.eps_prime.push_back(src.eps_prime[cols[c].pos]);
  }
  out.values.reserve(out.num_rows * cols.size());
  for (int64_t r = 0; r < out.num_rows; ++r) {
    for (const Col& c : cols) {
      const FoEncodedData& src = parts[c.part];
      out.values.push_back(src.values[r * src.attributes.size() + c.pos]);
    }
  }
  return out;
}

absl::StatusOr<ContingencyHistogram> CarEstFo(const Marginal& marginal,
                                              const FoEncodedData& encoded) {
  std::vector<int> pos;
  std::vector<int> sizes;
  for (int a : marginal.attributes()) {
    const int p = encoded.PositionOf(a);
    if (p < 0) {
      return absl::NotFoundError(
          absl::StrCat("attribute ", a, " missing from encoded data"));
    }
    pos.push_back(p);
    sizes.push_back(encoded.domain_sizes[p]);
  }
  ContingencyHistogram hist(marginal, sizes);
  const std::vector<int64_t> strides = Strides(sizes);
  const size_t width = encoded.attributes.size();
  for (int64_t r = 0; r < encoded.num_rows; ++r) {
    int64_t idx = 0;
    for (size_t k = 0; k < pos.size(); ++k) {
      idx += encoded.values[r * width + pos[k]] * strides[k];
    }
    hist[idx] += 1.0;
  }
  // Invert (p - q) I + q 11^T along each axis: y = (x - q * fiber_sum) / (p - q).
  std::vector<double>& cells = hist.mutable_cells();
  for (size_t k = 0; k < pos.size(); ++k) {
    const GrrProbabilities pr =
        GrrProbabilitiesFor(encoded.eps_prime[pos[k]], sizes[k]);
    const double gap = pr.keep - pr.other;
    if (!(gap > 1e-12)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "transition matrix of attribute ", marginal[k], " is singular"));
    }
    const int64_t stride = strides[k];
    const int64_t block = stride * sizes[k];
    for (int64_t base = 0; base < hist.size(); base += block) {
      for (int64_t off = 0; off < stride; ++off) {
        double fiber = 0;
        for (int v = 0; v < sizes[k]; ++v) fiber += cells[base + off + v * stride];
        for (int v = 0; v < sizes[k]; ++v) {
          double& c = cells[base + off + v * stride];
          c = (c - pr.other * fiber) / gap;
        }
      }
    }
  }
  return hist;
}

}  // namespace vfsynth
