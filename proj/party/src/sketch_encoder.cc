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

#include "vfsynth/sketch/encoder.h"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/privacy/accounting.h"
#include "vfsynth/privacy/mechanisms.h"

namespace vfsynth {

absl::StatusOr<uint32_t> Dpfm(std::span<const uint64_t> ids,
                              const SketchParams& params, const KeyRing& ring,
                              uint64_t key_id, Rng& rng) {
  VFS_ASSIGN_OR_RETURN(uint64_t key, ring.KeyForId(key_id));
  int alpha = params.alpha_min;
  for (uint64_t id : ids) {
    alpha = std::max(alpha, GeometricFromUniform(
                                HashToUnit(KeyedHash(key, id)), params.gamma));
  }
  alpha = std::max(alpha, SampleMaxOfGeometrics(params.k_p, params.gamma, rng));
  return static_cast<uint32_t>(alpha);
}

absl::StatusOr<SketchSet> LocEncSketch(const Dataset& data,
                                       const PrivacyBudget& budget,
                                       const SketchEncodeOptions& options,
                                       const KeyRing& ring,
                                       SpendLedger* ledger) {
  if (options.global_d < data.num_columns() || options.global_d < 1) {
    return absl::InvalidArgumentError(
        "global attribute count must cover this party's attributes");
  }
  if (ring.size() != options.t) {
    return absl::InvalidArgumentError(absl::StrCat(
        "key ring holds ", ring.size(), " keys but t = ", options.t));
  }
  VFS_ASSIGN_OR_RETURN(double eps_prime,
                       PerRepeatEpsilon(budget.epsilon, budget.delta,
                                        options.t, options.global_d));
  VFS_ASSIGN_OR_RETURN(SketchParams params,
                       SketchParams::Create(options.gamma, options.t,
                                            eps_prime, ring.key_ids()));
  if (ledger != nullptr) {
    const double share =
        static_cast<double>(data.num_columns()) / options.global_d;
    VFS_RETURN_IF_ERROR(ledger->Record("loc_enc_sketch",
                                       budget.epsilon * share,
                                       budget.delta * share,
                                       "rdp-sketch-joint"));
  }

  const int k = data.num_columns();
  const int t = options.t;
  std::vector<int> offset(k + 1, 0);
  for (int p = 0; p < k; ++p) {
    offset[p + 1] =
        offset[p] + data.schema().domain_size(data.columns()[p]);
  }
  const int total_values = offset[k];
  // Layout [flat value][repeat], matching AttributeSketch::alphas.
  std::vector<uint32_t> alphas(static_cast<size_t>(total_values) * t);
  const double log_base = std::log1p(params.gamma);

  // Flat (attribute, value) slot of every cell, row-major.
  const int64_t n = data.num_rows();
  std::vector<uint32_t> slot(static_cast<size_t>(n) * k);
  for (int64_t r = 0; r < n; ++r) {
    for (int p = 0; p < k; ++p) slot[r * k + p] = offset[p] + data.at(r, p);
  }

  auto work = [&](int h_begin, int h_end) {
    std::vector<uint64_t> min_hash(total_values);
    for (int h = h_begin; h < h_end; ++h) {
      std::fill(min_hash.begin(), min_hash.end(), ~uint64_t{0});
      const uint64_t key = ring.key(h);
      uint64_t* mins = min_hash.data();
      const uint32_t* cell = slot.data();
      for (int64_t r = 0; r < n; ++r, cell += k) {
        const uint64_t x = KeyedHash(key, static_cast<uint64_t>(r)) >> 11;
        for (int p = 0; p < k; ++p) {
          uint64_t& m = mins[cell[p]];
          if (x < m) m = x;
        }
      }
      for (int p = 0; p < k; ++p) {
        const int attribute = data.columns()[p];
        for (int v = offset[p]; v < offset[p + 1]; ++v) {
          int alpha = params.alpha_min;
          if (min_hash[v] != ~uint64_t{0}) {
            const double u = (static_cast<double>(min_hash[v]) + 0.5) * 0x1.0p-53;
            alpha = std::max(alpha,
                             static_cast<int>(std::floor(-std::log(u) / log_base)));
          }
          const uint64_t stream = DeriveStream(
              options.seed, {uint64_t(attribute), uint64_t(v - offset[p]),
                             uint64_t(h)});
          const double u = (static_cast<double>(stream >> 11) + 0.5) * 0x1.0p-53;
          alpha = std::max(
              alpha, MaxOfGeometricsFromUniform(params.k_p, params.gamma, u));
          alphas[static_cast<size_t>(v) * t + h] = static_cast<uint32_t>(alpha);
        }
      }
    }
  };

  const int threads = std::clamp(options.threads, 1, t);
  if (threads == 1) {
    work(0, t);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back(work, t * i / threads, t * (i + 1) / threads);
    }
    for (std::thread& th : pool) th.join();
  }

  SketchSet out;
  out.params = std::move(params);
  for (int p = 0; p < k; ++p) {
    AttributeSketch a;
    a.attribute = data.columns()[p];
    a.domain_size = offset[p + 1] - offset[p];
    a.alphas.assign(alphas.begin() + static_cast<size_t>(offset[p]) * t,
                    alphas.begin() + static_cast<size_t>(offset[p + 1]) * t);
    out.attributes.push_back(std::move(a));
  }
  return out;
}

}  // namespace vfsynth
