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

#include "vfsynth/sketch/key_ring.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/privacy/mechanisms.h"
#include "vfsynth/privacy/random.h"

namespace vfsynth {

KeyRing KeyRing::FromMasterSeed(uint64_t master_seed, int t) {
  KeyRing ring;
  ring.keys_.reserve(t);
  ring.key_ids_.reserve(t);
  for (int h = 0; h < t; ++h) {
    uint64_t key = DeriveStream(master_seed, {0x6b6579ULL, uint64_t(h)});
    uint64_t id = Mix64(Mix64(key ^ 0x5ca1ab1e0ddba11ULL));
    // Fingerprints must be unique; bump on the (unlikely) collision.
    while (ring.index_.count(id)) {
      key = Mix64(key);
      id = Mix64(Mix64(key ^ 0x5ca1ab1e0ddba11ULL));
    }
    ring.keys_.push_back(key);
    ring.key_ids_.push_back(id);
    ring.index_[id] = h;
  }
  return ring;
}

absl::StatusOr<uint64_t> KeyRing::KeyForId(uint64_t key_id) const {
  auto it = index_.find(key_id);
  if (it == index_.end()) {
    return absl::NotFoundError(absl::StrCat("unknown hash key id ", key_id));
  }
  return keys_[it->second];
}

uint64_t KeyedHash(uint64_t key, uint64_t element_id) {
  return Mix64(key + element_id * 0x9e3779b97f4a7c15ULL);
}

absl::StatusOr<int> HashGeometric(const KeyRing& ring, uint64_t key_id,
                                  uint64_t element_id, double gamma) {
  absl::StatusOr<uint64_t> key = ring.KeyForId(key_id);
  if (!key.ok()) return key.status();
  return GeometricFromUniform(HashToUnit(KeyedHash(*key, element_id)), gamma);
}

}  // namespace vfsynth
