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

#include "vfsynth/core/binning.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "absl/status/status.h"

namespace vfsynth {

BinMap BinMap::Make(int domain_size, int b) {
  BinMap m;
  m.domain_size = domain_size;
  m.bins = (b <= 0) ? domain_size : std::min(b, domain_size);
  return m;
}

int BinMap::BinOf(int value) const {
  return static_cast<int>(static_cast<int64_t>(value) * bins / domain_size);
}

int BinMap::First(int bin) const {
  // Smallest v with floor(v * bins / u) >= bin, i.e. ceil(bin * u / bins).
  const int64_t num = static_cast<int64_t>(bin) * domain_size;
  return static_cast<int>((num + bins - 1) / bins);
}

int BinMap::Last(int bin) const {
  return bin + 1 >= bins ? domain_size : First(bin + 1);
}

const BinnedAttribute* BinningSpec::Find(int attribute) const {
  for (const BinnedAttribute& a : attributes) {
    if (a.attribute == attribute) return &a;
  }
  return nullptr;
}

absl::StatusOr<Schema> BinnedSchema(const Schema& schema, int b) {
  if (b == 1 || b < 0) {
    return absl::InvalidArgumentError(
        "bin count must be 0 (off) or at least 2");
  }
  std::vector<int> sizes;
  for (const Attribute& a : schema.attributes()) {
    sizes.push_back(BinMap::Make(a.domain_size, b).bins);
  }
  return schema.WithDomainSizes(sizes);
}

bool BinningChangesAny(const Schema& schema, int b) {
  if (b <= 0) return false;
  for (const Attribute& a : schema.attributes()) {
    if (a.domain_size > b) return true;
  }
  return false;
}

}  // namespace vfsynth
