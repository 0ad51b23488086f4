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

#ifndef VFSYNTH_CORE_PARALLEL_H_
#define VFSYNTH_CORE_PARALLEL_H_

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace vfsynth {

// Calls fn(i) for i in [0, n) on up to `threads` threads, each owning a
// contiguous block. fn must not touch shared mutable state.
template <typename Fn>
void ParallelFor(int64_t n, int threads, Fn&& fn) {
  const int64_t workers = std::clamp<int64_t>(threads, 1, std::max<int64_t>(n, 1));
  if (workers == 1) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int64_t i = n * w / workers; i < n * (w + 1) / workers; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace vfsynth

#endif  // VFSYNTH_CORE_PARALLEL_H_
