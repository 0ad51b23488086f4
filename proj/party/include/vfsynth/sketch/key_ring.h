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

#ifndef VFSYNTH_SKETCH_KEY_RING_H_
#define VFSYNTH_SKETCH_KEY_RING_H_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"

namespace vfsynth {

// Secret hash keys shared by the parties. Stands in for pairwise key
// agreement: every party derives the same ring from a master seed that only
// the simulation harness and the parties hold. Server code cannot include
// this header.
class KeyRing {
 public:
  static KeyRing FromMasterSeed(uint64_t master_seed, int t);

  int size() const { return static_cast<int>(keys_.size()); }
  uint64_t key(int repeat) const { return keys_[repeat]; }
  // Public fingerprints, one per key, safe to publish.
  const std::vector<uint64_t>& key_ids() const { return key_ids_; }

  absl::StatusOr<uint64_t> KeyForId(uint64_t key_id) const;

 private:
  std::vector<uint64_t> keys_;
  std::vector<uint64_t> key_ids_;
  std::unordered_map<uint64_t, int> index_;
};

// Keyed 64-bit hash of a record id.
uint64_t KeyedHash(uint64_t key, uint64_t element_id);

// Uniform in (0, 1) from the top 53 bits of a hash.
inline double HashToUnit(uint64_t hash) {
  return (static_cast<double>(hash >> 11) + 0.5) * 0x1.0p-53;
}

// Geometric value of `element_id` under the key named `key_id`.
absl::StatusOr<int> HashGeometric(const KeyRing& ring, uint64_t key_id,
                                  uint64_t element_id, double gamma);

}  // namespace vfsynth

#endif  // VFSYNTH_SKETCH_KEY_RING_H_
