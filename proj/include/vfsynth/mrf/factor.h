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

#ifndef VFSYNTH_MRF_FACTOR_H_
#define VFSYNTH_MRF_FACTOR_H_

#include <cstdint>
#include <vector>

#include "vfsynth/core/marginal.h"

namespace vfsynth {

// Log-domain table over the cells of `vars` (row-major, first variable most
// significant).
struct Factor {
  Marginal vars;
  std::vector<int> sizes;
  std::vector<double> log_values;

  Factor() = default;
  Factor(Marginal vars, std::vector<int> sizes, double fill = 0.0);

  int64_t size() const { return static_cast<int64_t>(log_values.size()); }

  // this[x] += other[x restricted to other.vars]; other.vars must be a subset.
  void Add(const Factor& other);
  void Subtract(const Factor& other);
  // log sum exp over the variables not in `keep` (a subset of vars).
  Factor Marginalize(const Marginal& keep) const;
  // log of the total mass.
  double LogSum() const;
  // Pointwise product (log sum) over the union of variables.
  static Factor Product(const Factor& a, const Factor& b,
                        const std::vector<int>& union_sizes);
};

// For every cell of a table over (vars, sizes), the index of its restriction
// to `sub` within the table over `sub`.
std::vector<int64_t> ProjectionIndex(const Marginal& vars,
                                     const std::vector<int>& sizes,
                                     const Marginal& sub);

}  // namespace vfsynth

#endif  // VFSYNTH_MRF_FACTOR_H_
