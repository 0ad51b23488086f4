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

#ifndef VFSYNTH_PRIVACY_ACCOUNTING_H_
#define VFSYNTH_PRIVACY_ACCOUNTING_H_

#include "absl/status/statusor.h"

namespace vfsynth {

// Composed epsilon of `count` mechanisms, each eps_each-DP, at failure
// probability delta, via the Renyi bound 4 eps sqrt(2 count ln(1/delta)).
// Fails when ln(1/delta) < count * eps_each^2; callers then fall back to
// count * eps_each.
absl::StatusOr<double> RdpCompose(int64_t count, double eps_each, double delta);

// Per-repeat sketch budget eps / (4 sqrt(t d ln(1/delta))), d being the
// global attribute count.
absl::StatusOr<double> PerRepeatEpsilon(double eps, double delta, int64_t t,
                                        int d);

// Guarantee of encoding t repeats over d attributes at eps_prime each:
// 4 eps_prime sqrt(t d ln(1/delta)). Inverse of PerRepeatEpsilon.
double SketchEncodingEpsilon(double eps_prime, int64_t t, int d, double delta);

// Whole-record guarantee of GRR on d attributes at eps_prime each:
// min(d eps_prime / 2, 2 eps_prime sqrt(2 d ln(1/delta))), the second branch
// only where the Renyi bound applies.
double FoComposedEpsilon(double eps_prime, int d, double delta);

// Largest per-attribute eps_prime whose FoComposedEpsilon equals `eps`.
absl::StatusOr<double> FoPerAttributeEpsilon(double eps, int d, double delta);

// rho such that rho-zCDP implies (eps, delta)-DP:
// (sqrt(ln(1/delta) + eps) - sqrt(ln(1/delta)))^2.
absl::StatusOr<double> ZcdpRhoFromEpsDelta(double eps, double delta);

// Gaussian noise scale giving rho-zCDP at L2 sensitivity `sensitivity`.
double GaussianSigmaForRho(double rho, double sensitivity);

}  // namespace vfsynth

#endif  // VFSYNTH_PRIVACY_ACCOUNTING_H_
