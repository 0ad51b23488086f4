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

#ifndef VFSYNTH_HARNESS_METRICS_H_
#define VFSYNTH_HARNESS_METRICS_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "vfsynth/core/dataset.h"
#include "vfsynth/core/marginal.h"
#include "vfsynth/privacy/random.h"

namespace vfsynth {

struct TvdSummary {
  int l = 0;
  double mean = 0;
  // Population standard deviation over the evaluated marginals.
  double std = 0;
  int64_t count = 0;
};

nlohmann::json ToJson(const TvdSummary& summary);

// Number of l-subsets of d items, saturating at INT64_MAX.
int64_t Choose(int d, int l);

// `samples` distinct l-way marginals over d attributes drawn uniformly, or
// every one of them when samples >= C(d, l), in lexicographic order.
absl::StatusOr<std::vector<Marginal>> SampleMarginals(int d, int l,
                                                      int64_t samples,
                                                      Rng& rng);

// Mean and spread of the TVD between the two tables' normalized l-way
// histograms over sampled marginals. Both tables must share the schema and
// hold every attribute. An empty table is compared as uniform.
absl::StatusOr<TvdSummary> EvalLwayTvd(const Dataset& real,
                                       const Dataset& synth, int l,
                                       int64_t samples, Rng& rng);

}  // namespace vfsynth

#endif  // VFSYNTH_HARNESS_METRICS_H_
