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

#ifndef VFSYNTH_PRIVACY_MECHANISMS_H_
#define VFSYNTH_PRIVACY_MECHANISMS_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "vfsynth/privacy/random.h"

namespace vfsynth {

class SpendLedger;

// Laplace(0, scale) by inverse CDF.
absl::StatusOr<double> SampleLaplace(double scale, Rng& rng);

// N(0, sigma^2).
absl::StatusOr<double> SampleGaussian(double sigma, Rng& rng);

// Geometric variable on {0, 1, ...} with P(G >= k) = (1 + gamma)^-k, i.e.
// success probability gamma / (1 + gamma), obtained from a uniform u in (0,1).
int GeometricFromUniform(double u, double gamma);

int SampleGeometric(double gamma, Rng& rng);

// Maximum of `k` independent geometrics as above, drawn with one uniform via
// the exact CDF P(max <= j) = (1 - q^(j+1))^k, q = 1 / (1 + gamma).
// Returns 0 for k == 0.
int SampleMaxOfGeometrics(int64_t k, double gamma, Rng& rng);
int MaxOfGeometricsFromUniform(int64_t k, double gamma, double u);

// n + Laplace(1/eps). Infinite eps returns n. When `ledger` is non-null the
// spend (eps, 0) is recorded under `stage`.
absl::StatusOr<double> SanitizeCount(int64_t n, double eps, Rng& rng,
                                     SpendLedger* ledger = nullptr,
                                     const std::string& stage = "noisy_count");

}  // namespace vfsynth

#endif  // VFSYNTH_PRIVACY_MECHANISMS_H_
