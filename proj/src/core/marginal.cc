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

#include "vfsynth/core/marginal.h"

#include <algorithm>
#include <cassert>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace vfsynth {

Marginal::Marginal(std::initializer_list<int> attributes)
    : Marginal(std::vector<int>(attributes)) {}

Marginal::Marginal(std::vector<int> attributes)
    : attributes_(std::move(attributes)) {
  std::sort(attributes_.begin(), attributes_.end());
  assert(std::adjacent_find(attributes_.begin(), attributes_.end()) ==
         attributes_.end());
}

absl::StatusOr<Marginal> Marginal::Create(std::vector<int> attributes,
                                          const Schema& schema) {
  std::sort(attributes.begin(), attributes.end());
  for (size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i] < 0 || attributes[i] >= schema.size()) {
      return absl::OutOfRangeError(
          absl::StrCat("attribute id ", attributes[i], " out of range"));
    }
    if (i > 0 && attributes[i] == attributes[i - 1]) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute id ", attributes[i]));
    }
  }
  return Marginal(std::move(attributes));
}

bool Marginal::Contains(int attribute) const {
  return std::binary_search(attributes_.begin(), attributes_.end(), attribute);
}

bool Marginal::IsSubsetOf(const Marginal& other) const {
  return std::includes(other.attributes_.begin(), other.attributes_.end(),
                       attributes_.begin(), attributes_.end());
}

int Marginal::PositionOf(int attribute) const {
  auto it =
      std::lower_bound(attributes_.begin(), attributes_.end(), attribute);
  if (it == attributes_.end() || *it != attribute) return -1;
  return static_cast<int>(it - attributes_.begin());
}

Marginal Marginal::Union(const Marginal& other) const {
  std::vector<int> out;
  std::set_union(attributes_.begin(), attributes_.end(),
                 other.attributes_.begin(), other.attributes_.end(),
                 std::back_inserter(out));
  return Marginal(std::move(out));
}

Marginal Marginal::Intersection(const Marginal& other) const {
  std::vector<int> out;
  std::set_intersection(attributes_.begin(), attributes_.end(),
                        other.attributes_.begin(), other.attributes_.end(),
                        std::back_inserter(out));
  return Marginal(std::move(out));
}

Marginal Marginal::Without(int attribute) const {
  std::vector<int> out;
  for (int a : attributes_) {
    if (a != attribute) out.push_back(a);
  }
  return Marginal(std::move(out));
}

std::string Marginal::DebugString() const {
  return absl::StrCat("(", absl::StrJoin(attributes_, ","), ")");
}

std::vector<int> DomainSizes(const Marginal& marginal, const Schema& schema) {
  std::vector<int> sizes;
  sizes.reserve(marginal.arity());
  for (int a : marginal.attributes()) sizes.push_back(schema.domain_size(a));
  return sizes;
}

int64_t CellCount(std::span<const int> sizes) {
  int64_t n = 1;
  for (int s : sizes) n *= s;
  return n;
}

absl::StatusOr<int64_t> CellIndex(std::span<const int> values,
                                  std::span<const int> sizes) {
  if (values.size() != sizes.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("tuple has ", values.size(), " values, marginal has ",
                     sizes.size(), " attributes"));
  }
  int64_t index = 0;
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (values[i] < 0 || values[i] >= sizes[i]) {
      return absl::OutOfRangeError(absl::StrCat(
          "value ", values[i], " at position ", i, " outside [0, ", sizes[i],
          ")"));
    }
    index = index * sizes[i] + values[i];
  }
  return index;
}

absl::StatusOr<int64_t> CellIndex(std::span<const int> values,
                                  const Marginal& marginal,
                                  const Schema& schema) {
  std::vector<int> sizes = DomainSizes(marginal, schema);
  return CellIndex(values, sizes);
}

std::vector<int> CellTuple(int64_t index, std::span<const int> sizes) {
  std::vector<int> tuple(sizes.size());
  for (size_t i = sizes.size(); i-- > 0;) {
    tuple[i] = static_cast<int>(index % sizes[i]);
    index /= sizes[i];
  }
  return tuple;
}

std::vector<int64_t> Strides(std::span<const int> sizes) {
  std::vector<int64_t> strides(sizes.size());
  int64_t s = 1;
  for (size_t i = sizes.size(); i-- > 0;) {
    strides[i] = s;
    s *= sizes[i];
  }
  return strides;
}

}  // namespace vfsynth
