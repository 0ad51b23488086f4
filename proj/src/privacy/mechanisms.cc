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

#include "vfsynth/privacy/mechanisms.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/privacy/budget.h"

namespace vfsynth {

absl::StatusOr<double> SampleLaplace(double scale, Rng& rng) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive and finite, got ", scale));
  }
  const double u = UniformOpen01(rng) - 0.5;
  return -scale * std::copysign(std::log1p(-2.0 * std::abs(u)), u);
}

absl::StatusOr<double> SampleGaussian(double sigma, Rng& rng) {
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gaussian sigma must be positive and finite, got ", sigma));
  }
  std::normal_distribution<double> dist(0.0, sigma);
  return dist(rng);
}

int GeometricFromUniform(double u, double gamma) {
  return static_cast<int>(std::floor(-std::log(u) / std::log1p(gamma)));
}

int SampleGeometric(double gamma, Rng& rng) {
  return GeometricFromUniform(UniformOpen01(rng), gamma);
}

int SampleMaxOfGeometrics(int64_t k, double gamma, Rng& rng) {
  return MaxOfGeometricsFromUniform(k, gamma, UniformOpen01(rng));
}

int MaxOfGeometricsFromUniform(int64_t k, double gamma, double u) {
  if (k <= 0) return 0;
  // Smallest j with (1 - q^(j+1))^k >= u.
  const double tail = -std::expm1(std::log(u) / static_cast<double>(k));
  const double j1 = std::ceil(std::log(tail) / -std::log1p(gamma));
  return static_cast<int>(std::max(0.0, j1 - 1.0));
}

absl::StatusOr<double> SanitizeCount(int64_t n, double eps, Rng& rng,
                                     SpendLedger* ledger,
                                     const std::string& stage) {
  if (!(eps > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("count epsilon must be positive, got ", eps));
  }
  if (ledger != nullptr) {
    absl::Status s = ledger->Record(stage, eps, 0.0, "sequential");
    if (!s.ok()) return s;
  }
  if (std::isinf(eps)) return static_cast<double>(n);
  absl::StatusOr<double> noise = SampleLaplace(1.0 / eps, rng);
  if (!noise.ok()) return noise.status();
  return static_cast<double>(n) + *noise;
}

}  // namespace vfsynth
