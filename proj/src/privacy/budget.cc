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

#include "vfsynth/privacy/budget.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace vfsynth {
namespace {

constexpr double kRelTol = 1e-9;

bool Within(double value, double cap) {
  return value <= cap + kRelTol * std::max(1.0, std::abs(cap));
}

}  // namespace

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon,
                                                    double delta) {
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  if (!(delta >= 0) || !(delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1), got ", delta));
  }
  return PrivacyBudget{epsilon, delta};
}

BudgetPlan BudgetPlan::PercentageSplit(int party_count) {
  return BudgetPlan{"percentage", 0.4, 0.4, 0.2, 0.1, party_count};
}

BudgetPlan BudgetPlan::HalfSplit(int party_count) {
  return BudgetPlan{"half", 0.5, 0.5, 0.0, 0.1, party_count};
}

absl::StatusOr<BudgetPlan> BudgetPlan::ByName(const std::string& name,
                                              int party_count) {
  if (name == "percentage") return PercentageSplit(party_count);
  if (name == "half") return HalfSplit(party_count);
  return absl::InvalidArgumentError(
      absl::StrCat("unknown budget plan '", name,
                   "'; expected 'percentage' or 'half'"));
}

absl::Status BudgetPlan::Validate() const {
  if (loc_mrf < 0 || loc_enc < 0 || binning < 0) {
    return absl::InvalidArgumentError("budget fractions must be non-negative");
  }
  const double sum = loc_mrf + loc_enc + binning;
  if (std::abs(sum - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(
        absl::StrCat("budget fractions sum to ", sum, ", not 1"));
  }
  if (!(noisy_count_share > 0) || !(noisy_count_share < 1)) {
    return absl::InvalidArgumentError(
        "noisy count share must lie strictly between 0 and 1");
  }
  if (loc_mrf <= 0 || loc_enc <= 0) {
    return absl::InvalidArgumentError(
        "local model and encoding fractions must be positive");
  }
  if (party_count < 1) {
    return absl::InvalidArgumentError("party count must be at least 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<StageBudgets> Allocate(const BudgetPlan& plan,
                                      const PrivacyBudget& total,
                                      bool binning_active) {
  if (absl::Status s = plan.Validate(); !s.ok()) return s;
  double mrf = plan.loc_mrf;
  double enc = plan.loc_enc;
  double bin = plan.binning;
  if (!binning_active) {
    enc += bin;
    bin = 0;
  } else if (bin == 0) {
    bin = enc / 5.0;
    enc -= bin;
  }
  StageBudgets out;
  out.total = total;
  const double delta_mrf = total.delta * mrf / (mrf + enc);
  out.loc_mrf_per_party = {total.epsilon * mrf / plan.party_count,
                           delta_mrf / plan.party_count};
  out.noisy_count_epsilon = total.epsilon * enc * plan.noisy_count_share;
  out.encoding = {total.epsilon * enc * (1.0 - plan.noisy_count_share),
                  total.delta - delta_mrf};
  out.binning_epsilon = total.epsilon * bin;
  return out;
}

absl::Status SpendLedger::Record(std::string stage, double epsilon,
                                 double delta, std::string rule) {
  if (!(epsilon >= 0) || !(delta >= 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("negative spend recorded for stage ", stage));
  }
  const double eps_after = TotalEpsilon() + epsilon;
  const double delta_after = TotalDelta() + delta;
  if (!Within(eps_after, cap_.epsilon) || !Within(delta_after, cap_.delta)) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "privacy budget exhausted at stage '%s': spend would reach "
        "(%.9g, %.3g) against cap (%.9g, %.3g)",
        stage, eps_after, delta_after, cap_.epsilon, cap_.delta));
  }
  entries_.push_back({std::move(stage), epsilon, delta, std::move(rule)});
  return absl::OkStatus();
}

absl::Status SpendLedger::Absorb(const SpendLedger& other) {
  for (const SpendEntry& e : other.entries()) {
    absl::Status s = Record(e.stage, e.epsilon, e.delta, e.rule);
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

double SpendLedger::TotalEpsilon() const {
  double sum = 0;
  for (const SpendEntry& e : entries_) sum += e.epsilon;
  return sum;
}

double SpendLedger::TotalDelta() const {
  double sum = 0;
  for (const SpendEntry& e : entries_) sum += e.delta;
  return sum;
}

bool SpendLedger::Exhausted() const {
  auto close = [](double a, double b) {
    return std::abs(a - b) <= kRelTol * std::max(1.0, std::abs(b));
  };
  return close(TotalEpsilon(), cap_.epsilon) && close(TotalDelta(), cap_.delta);
}

nlohmann::json SpendLedger::ToJson() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const SpendEntry& e : entries_) {
    entries.push_back({{"stage", e.stage},
                       {"epsilon", e.epsilon},
                       {"delta", e.delta},
                       {"rule", e.rule}});
  }
  return {{"cap", {{"epsilon", cap_.epsilon}, {"delta", cap_.delta}}},
          {"total", {{"epsilon", TotalEpsilon()}, {"delta", TotalDelta()}}},
          {"entries", entries}};
}

}  // namespace vfsynth
