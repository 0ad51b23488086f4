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

#ifndef VFSYNTH_PRIVACY_BUDGET_H_
#define VFSYNTH_PRIVACY_BUDGET_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace vfsynth {

struct PrivacyBudget {
  double epsilon = 0;
  double delta = 0;

  static absl::StatusOr<PrivacyBudget> Create(double epsilon, double delta);
};

// Fractions of the total budget given to each pipeline stage.
struct BudgetPlan {
  std::string name;
  double loc_mrf = 0;
  double loc_enc = 0;
  double binning = 0;
  // Part of loc_enc spent on the noisy record count.
  double noisy_count_share = 0;
  int party_count = 1;

  // 40% local models, 40% encoding (a tenth of it for the count), 20% value
  // distributions.
  static BudgetPlan PercentageSplit(int party_count);
  // eps / (2m) per party for local models, eps / 2 for encoding.
  static BudgetPlan HalfSplit(int party_count);
  static absl::StatusOr<BudgetPlan> ByName(const std::string& name,
                                           int party_count);

  absl::Status Validate() const;
};

struct StageBudgets {
  PrivacyBudget total;
  PrivacyBudget loc_mrf_per_party;
  // Joint sketch or FO encoding budget over all parties.
  PrivacyBudget encoding;
  double noisy_count_epsilon = 0;
  // Split evenly over all binned attributes of all parties. Zero when no
  // attribute is binned.
  double binning_epsilon = 0;
};

// Splits `total` by `plan`. Delta goes to the local models and the encoding
// in proportion to their epsilon shares; Laplace stages get none. When
// `binning_active` is false the binning share joins the encoding share. When
// it is true and the plan has no binning share, a fifth of the encoding share
// is carved out for it.
absl::StatusOr<StageBudgets> Allocate(const BudgetPlan& plan,
                                      const PrivacyBudget& total,
                                      bool binning_active);

struct SpendEntry {
  std::string stage;
  double epsilon = 0;
  double delta = 0;
  std::string rule;
};

// Append-only record of privacy spends. Entries compose sequentially; each
// entry already carries the composed cost of its stage under `rule`.
class SpendLedger {
 public:
  explicit SpendLedger(PrivacyBudget cap) : cap_(cap) {}

  // Fails without recording if the running total would exceed the cap.
  absl::Status Record(std::string stage, double epsilon, double delta,
                      std::string rule);
  // Records every entry of `other`.
  absl::Status Absorb(const SpendLedger& other);

  const std::vector<SpendEntry>& entries() const { return entries_; }
  const PrivacyBudget& cap() const { return cap_; }
  double TotalEpsilon() const;
  double TotalDelta() const;
  // True when both totals match the cap up to rounding.
  bool Exhausted() const;

  nlohmann::json ToJson() const;

 private:
  PrivacyBudget cap_;
  std::vector<SpendEntry> entries_;
};

}  // namespace vfsynth

#endif  // VFSYNTH_PRIVACY_BUDGET_H_
