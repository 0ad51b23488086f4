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

#include "vfsynth/privacy/accounting.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace vfsynth {
namespace {

absl::Status CheckDelta(double delta) {
  if (!(delta > 0) || !(delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  return absl::OkStatus();
}

bool RdpApplies(int64_t count, double eps_each, double delta) {
  return std::log(1.0 / delta) >= static_cast<double>(count) * eps_each * eps_each;
}

}  // namespace

absl::StatusOr<double> RdpCompose(int64_t count, double eps_each,
                                  double delta) {
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  if (count <= 0 || !(eps_each > 0)) {
    return absl::InvalidArgumentError("count and eps_each must be positive");
  }
  if (!RdpApplies(count, eps_each, delta)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Renyi composition needs ln(1/delta) >= count * eps^2; got ",
        std::log(1.0 / delta), " < ",
        static_cast<double>(count) * eps_each * eps_each));
  }
  return 4.0 * eps_each *
         std::sqrt(2.0 * static_cast<double>(count) * std::log(1.0 / delta));
}

absl::StatusOr<double> PerRepeatEpsilon(double eps, double delta, int64_t t,
                                        int d) {
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  if (!(eps > 0) || t <= 0 || d <= 0) {
    return absl::InvalidArgumentError("eps, t and d must be positive");
  }
  return eps / (4.0 * std::sqrt(static_cast<double>(t) * d *
                                std::log(1.0 / delta)));
}

double SketchEncodingEpsilon(double eps_prime, int64_t t, int d,
                             double delta) {
  return 4.0 * eps_prime *
         std::sqrt(static_cast<double>(t) * d * std::log(1.0 / delta));
}

double FoComposedEpsilon(double eps_prime, int d, double delta) {
  const double sequential = d * eps_prime / 2.0;
  if (!(delta > 0) || !(delta < 1) || !RdpApplies(d, eps_prime / 2.0, delta)) {
    return sequential;
  }
  const double rdp = 2.0 * eps_prime * std::sqrt(2.0 * d * std::log(1.0 / delta));
  return std::min(sequential, rdp);
}

absl::StatusOr<double> FoPerAttributeEpsilon(double eps, int d, double delta) {
  if (!(eps > 0) || d <= 0) {
    return absl::InvalidArgumentError("eps and d must be positive");
  }
  double best = 2.0 * eps / d;
  if (delta > 0 && delta < 1) {
    const double rdp = eps / (2.0 * std::sqrt(2.0 * d * std::log(1.0 / delta)));
    if (rdp > best && RdpApplies(d, rdp / 2.0, delta)) best = rdp;
  }
  return best;
}

absl::StatusOr<double> ZcdpRhoFromEpsDelta(double eps, double delta) {
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  if (!(eps > 0)) return absl::InvalidArgumentError("eps must be positive");
  const double l = std::log(1.0 / delta);
  const double r = std::sqrt(l + eps) - std::sqrt(l);
  return r * r;
}

double GaussianSigmaForRho(double rho, double sensitivity) {
  return sensitivity / std::sqrt(2.0 * rho);
}

}  // namespace vfsynth
