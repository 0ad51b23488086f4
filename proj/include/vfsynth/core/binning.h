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

#ifndef VFSYNTH_CORE_BINNING_H_
#define VFSYNTH_CORE_BINNING_H_

#include <vector>

#include "absl/status/statusor.h"
#include "vfsynth/core/schema.h"

namespace vfsynth {

// Equal-width binning of [0, u) into min(b, u) bins. Only domain sizes are
// used, never data.
struct BinMap {
  int domain_size = 0;
  int bins = 0;

  static BinMap Make(int domain_size, int b);

  bool identity() const { return bins == domain_size; }
  int BinOf(int value) const;
  // Half-open raw value range [first, last) of bin `bin`.
  int First(int bin) const;
  int Last(int bin) const;
  int Width(int bin) const { return Last(bin) - First(bin); }
};

// Per-bin value distributions. `distributions[l]` has Width(l) entries.
struct BinnedAttribute {
  int attribute = -1;
  BinMap map;
  std::vector<std::vector<double>> distributions;
};

struct BinningSpec {
  int bin_count = 0;  // configured b; 0 disables binning.
  std::vector<BinnedAttribute> attributes;

  // Entry for `attribute`, or nullptr if it is not binned.
  const BinnedAttribute* Find(int attribute) const;
};

// Schema whose domain sizes are those after binning with `b` (0 keeps the
// raw sizes). Requires b == 0 or b >= 2.
absl::StatusOr<Schema> BinnedSchema(const Schema& schema, int b);

// True when binning with `b` changes at least one attribute.
bool BinningChangesAny(const Schema& schema, int b);

}  // namespace vfsynth

#endif  // VFSYNTH_CORE_BINNING_H_
