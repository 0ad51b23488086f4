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

#include "vfsynth/mrf/factor.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vfsynth {

Factor::Factor(Marginal vars_in, std::vector<int> sizes_in, double fill)
    : vars(std::move(vars_in)),
      sizes(std::move(sizes_in)),
      log_values(CellCount(sizes), fill) {}

std::vector<int64_t> ProjectionIndex(const Marginal& vars,
                                     const std::vector<int>& sizes,
                                     const Marginal& sub) {
  std::vector<int> sub_sizes;
  std::vector<int> keep;
  for (int a : sub.attributes()) {
    const int p = vars.PositionOf(a);
    keep.push_back(p);
    sub_sizes.push_back(sizes[p]);
  }
  const std::vector<int64_t> sub_strides = Strides(sub_sizes);
  // Stride contribution of each position of `vars` in the sub table.
  std::vector<int64_t> contrib(sizes.size(), 0);
  for (size_t k = 0; k < keep.size(); ++k) contrib[keep[k]] = sub_strides[k];
  const int64_t n = CellCount(sizes);
  std::vector<int64_t> out(n);
  std::vector<int> tuple(sizes.size(), 0);
  int64_t j = 0;
  for (int64_t i = 0; i < n; ++i) {
    out[i] = j;
    for (size_t p = sizes.size(); p-- > 0;) {
      if (++tuple[p] < sizes[p]) {
        j += contrib[p];
        break;
      }
      j -= contrib[p] * (sizes[p] - 1);
      tuple[p] = 0;
    }
  }
  return out;
}

void Factor::Add(const Factor& other) {
  if (other.vars == vars) {
    for (int64_t i = 0; i < size(); ++i) log_values[i] += other.log_values[i];
    return;
  }
  const std::vector<int64_t> idx = ProjectionIndex(vars, sizes, other.vars);
  for (int64_t i = 0; i < size(); ++i) log_values[i] += other.log_values[idx[i]];
}

void Factor::Subtract(const Factor& other) {
  const std::vector<int64_t> idx = ProjectionIndex(vars, sizes, other.vars);
  for (int64_t i = 0; i < size(); ++i) {
    const double o = other.log_values[idx[i]];
    if (std::isinf(o) && o < 0) {
      log_values[i] = -std::numeric_limits<double>::infinity();
    } else {
      log_values[i] -= o;
    }
  }
}

Factor Factor::Marginalize(const Marginal& keep) const {
  std::vector<int> sub_sizes;
  for (int a : keep.attributes()) sub_sizes.push_back(sizes[vars.PositionOf(a)]);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  Factor out(keep, sub_sizes, neg_inf);
  if (keep == vars) {
    out.log_values = log_values;
    return out;
  }
  const std::vector<int64_t> idx = ProjectionIndex(vars, sizes, keep);
  for (int64_t i = 0; i < size(); ++i) {
    double& m = out.log_values[idx[i]];
    m = std::max(m, log_values[i]);
  }
  std::vector<double> acc(out.size(), 0.0);
  for (int64_t i = 0; i < size(); ++i) {
    const double m = out.log_values[idx[i]];
    if (std::isinf(m)) continue;
    acc[idx[i]] += std::exp(log_values[i] - m);
  }
  for (int64_t j = 0; j < out.size(); ++j) {
    if (!std::isinf(out.log_values[j])) out.log_values[j] += std::log(acc[j]);
  }
  return out;
}

double Factor::LogSum() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : log_values) m = std::max(m, v);
  if (std::isinf(m)) return m;
  double acc = 0;
  for (double v : log_values) acc += std::exp(v - m);
  return m + std::log(acc);
}

Factor Factor::Product(const Factor& a, const Factor& b,
                       const std::vector<int>& union_sizes) {
  Factor out(a.vars.Union(b.vars), union_sizes, 0.0);
  out.Add(a);
  out.Add(b);
  return out;
}

}  // namespace vfsynth
