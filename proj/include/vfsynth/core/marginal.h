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

#ifndef VFSYNTH_CORE_MARGINAL_H_
#define VFSYNTH_CORE_MARGINAL_H_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/schema.h"

namespace vfsynth {

// A set of attribute ids, always held in ascending order.
class Marginal {
 public:
  Marginal() = default;

  // Sorts the ids. Duplicates are a programming error (asserted).
  Marginal(std::initializer_list<int> attributes);
  explicit Marginal(std::vector<int> attributes);

  // Validating factory: ids must be distinct and in range for `schema`.
  static absl::StatusOr<Marginal> Create(std::vector<int> attributes,
                                         const Schema& schema);

  std::span<const int> attributes() const { return attributes_; }
  int arity() const { return static_cast<int>(attributes_.size()); }
  bool empty() const { return attributes_.empty(); }
  int operator[](int i) const { return attributes_[i]; }

  bool Contains(int attribute) const;
  bool IsSubsetOf(const Marginal& other) const;
  // Position of `attribute` inside this marginal, or -1.
  int PositionOf(int attribute) const;

  Marginal Union(const Marginal& other) const;
  Marginal Intersection(const Marginal& other) const;
  Marginal Without(int attribute) const;

  std::string DebugString() const;

  auto operator<=>(const Marginal&) const = default;
  bool operator==(const Marginal&) const = default;

 private:
  std::vector<int> attributes_;
};

// Domain sizes of the marginal's attributes, in marginal order.
std::vector<int> DomainSizes(const Marginal& marginal, const Schema& schema);

// Product of `sizes`; 1 for an empty list.
int64_t CellCount(std::span<const int> sizes);

// Mixed-radix flattening, first attribute most significant.
absl::StatusOr<int64_t> CellIndex(std::span<const int> values,
                                  std::span<const int> sizes);
absl::StatusOr<int64_t> CellIndex(std::span<const int> values,
                                  const Marginal& marginal,
                                  const Schema& schema);

// Inverse of CellIndex. `index` must be in [0, CellCount(sizes)).
std::vector<int> CellTuple(int64_t index, std::span<const int> sizes);

// Row-major strides for `sizes` (last stride is 1).
std::vector<int64_t> Strides(std::span<const int> sizes);

}  // namespace vfsynth

#endif  // VFSYNTH_CORE_MARGINAL_H_
