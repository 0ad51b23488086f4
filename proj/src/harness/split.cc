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

#include "vfsynth/harness/split.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace vfsynth {

absl::StatusOr<std::vector<std::vector<int>>> SplitUniform(int d, int m) {
  if (d < 1) return absl::InvalidArgumentError("no attributes to split");
  if (m < 1 || m > d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "party count ", m, " must lie in [1, ", d, "]"));
  }
  std::vector<std::vector<int>> out(m);
  for (int a = 0; a < d; ++a) out[a % m].push_back(a);
  return out;
}

absl::StatusOr<std::vector<std::vector<int>>> ValidatePartition(
    std::vector<std::vector<int>> lists, int d) {
  if (lists.empty()) return absl::InvalidArgumentError("no parties");
  std::vector<int> owner(d, -1);
  for (size_t p = 0; p < lists.size(); ++p) {
    if (lists[p].empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("party ", p, " holds no attributes"));
    }
    for (int a : lists[p]) {
      if (a < 0 || a >= d) {
        return absl::InvalidArgumentError(absl::StrCat(
            "party ", p, " lists attribute ", a, " outside [0, ", d, ")"));
      }
      if (owner[a] != -1) {
        return absl::InvalidArgumentError(absl::StrCat(
            "attribute ", a, " is assigned to parties ", owner[a], " and ",
            p));
      }
      owner[a] = static_cast<int>(p);
    }
    std::sort(lists[p].begin(), lists[p].end());
  }
  for (int a = 0; a < d; ++a) {
    if (owner[a] == -1) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", a, " is not assigned to any party"));
    }
  }
  return lists;
}

}  // namespace vfsynth
