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

#include "vfsynth/harness/metrics.h"

#include <cmath>
#include <algorithm>
#include <limits>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/core/status_macros.h"

namespace vfsynth {
namespace {

// An empty table has no distribution; compare it as uniform.
ContingencyHistogram OrUniform(const Dataset& data,
                               ContingencyHistogram counts) {
  if (data.num_rows() == 0) {
    for (double& c : counts.mutable_cells()) c = 1.0;
  }
  return counts;
}

// Lexicographic successor of an l-subset of [0, d); false after the last.
bool NextCombination(std::vector<int>& c, int d) {
  const int l = static_cast<int>(c.size());
  int i = l - 1;
  while (i >= 0 && c[i] == d - l + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < l; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace

nlohmann::json ToJson(const TvdSummary& s) {
  return {{"l", s.l}, {"mean", s.mean}, {"std", s.std}, {"count", s.count}};
}

int64_t Choose(int d, int l) {
  if (l < 0 || l > d) return 0;
  l = std::min(l, d - l);
  // Multiplying before dividing keeps every intermediate an exact integer.
  __int128 r = 1;
  for (int i = 1; i <= l; ++i) {
    r = r * (d - l + i) / i;
    if (r > std::numeric_limits<int64_t>::max()) {
      return std::numeric_limits<int64_t>::max();
    }
  }
  return static_cast<int64_t>(r);
}

absl::StatusOr<std::vector<Marginal>> SampleMarginals(int d, int l,
                                                      int64_t samples,
                                                      Rng& rng) {
  if (l < 1 || l > d) {
    return absl::InvalidArgumentError(
        absl::StrCat("marginal width ", l, " must lie in [1, ", d, "]"));
  }
  if (samples < 1) return absl::InvalidArgumentError("samples must be >= 1");
  std::vector<Marginal> out;
  if (samples >= Choose(d, l)) {
    std::vector<int> c(l);
    for (int i = 0; i < l; ++i) c[i] = i;
    do {
      out.emplace_back(c);
    } while (NextCombination(c, d));
    return out;
  }
  std::set<std::vector<int>> seen;
  std::vector<int> pool(d);
  while (static_cast<int64_t>(out.size()) < samples) {
    for (int i = 0; i < d; ++i) pool[i] = i;
    for (int i = 0; i < l; ++i) {
      std::uniform_int_distribution<int> pick(i, d - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<int> c(pool.begin(), pool.begin() + l);
    std::sort(c.begin(), c.end());
    if (seen.insert(c).second) out.emplace_back(std::move(c));
  }
  return out;
}

absl::StatusOr<TvdSummary> EvalLwayTvd(const Dataset& real,
                                       const Dataset& synth, int l,
                                       int64_t samples, Rng& rng) {
  if (!(real.schema() == synth.schema())) {
    return absl::InvalidArgumentError("tables have different schemas");
  }
  const int d = real.schema().size();
  if (real.num_columns() != d || synth.num_columns() != d) {
    return absl::InvalidArgumentError("tables must hold every attribute");
  }
  VFS_ASSIGN_OR_RETURN(std::vector<Marginal> marginals,
                       SampleMarginals(d, l, samples, rng));
  std::vector<double> tvds;
  tvds.reserve(marginals.size());
  for (const Marginal& m : marginals) {
    VFS_ASSIGN_OR_RETURN(ContingencyHistogram a, ComputeHistogram(real, m));
    VFS_ASSIGN_OR_RETURN(ContingencyHistogram b, ComputeHistogram(synth, m));
    VFS_ASSIGN_OR_RETURN(double tvd, Tvd(OrUniform(real, std::move(a)),
                                         OrUniform(synth, std::move(b))));
    tvds.push_back(tvd);
  }
  TvdSummary s;
  s.l = l;
  s.count = static_cast<int64_t>(tvds.size());
  for (double v : tvds) s.mean += v;
  s.mean /= s.count;
  double var = 0;
  for (double v : tvds) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / s.count);
  return s;
}

}  // namespace vfsynth
