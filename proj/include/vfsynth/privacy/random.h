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

#ifndef VFSYNTH_PRIVACY_RANDOM_H_
#define VFSYNTH_PRIVACY_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vfsynth {

using Rng = std::mt19937_64;

// Uniform draw from the open interval (0, 1), 53-bit resolution.
double UniformOpen01(Rng& rng);

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

// Derives an independent stream seed from a root seed and a path of labels,
// e.g. DeriveStream(seed, {party, stage, attribute}).
uint64_t DeriveStream(uint64_t seed, std::initializer_list<uint64_t> path);

inline Rng MakeRng(uint64_t seed, std::initializer_list<uint64_t> path) {
  return Rng(DeriveStream(seed, path));
}

}  // namespace vfsynth

#endif  // VFSYNTH_PRIVACY_RANDOM_H_
