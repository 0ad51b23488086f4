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

#include "vfsynth/core/schema.h"

#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace vfsynth {

absl::StatusOr<Schema> Schema::Create(std::vector<Attribute> attributes) {
  if (attributes.empty()) {
    return absl::InvalidArgumentError("schema needs at least one attribute");
  }
  std::set<std::string> names;
  for (const Attribute& a : attributes) {
    if (a.domain_size < 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "attribute '", a.name, "' has domain size ", a.domain_size,
          "; must be at least 2"));
    }
    if (!names.insert(a.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute name '", a.name, "'"));
    }
  }
  return Schema(std::move(attributes));
}

absl::StatusOr<int> Schema::IndexOf(std::string_view name) const {
  for (int j = 0; j < size(); ++j) {
    if (attributes_[j].name == name) return j;
  }
  return absl::NotFoundError(absl::StrCat("no attribute named '", std::string(name), "'"));
}

double Schema::MeanDomainSize() const {
  if (attributes_.empty()) return 0.0;
  double sum = 0;
  for (const Attribute& a : attributes_) sum += a.domain_size;
  return sum / attributes_.size();
}

uint64_t Schema::Fingerprint() const {
  uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (const Attribute& a : attributes_) {
    for (char c : a.name) mix(static_cast<uint8_t>(c));
    mix(0);
    for (int i = 0; i < 4; ++i) mix((a.domain_size >> (8 * i)) & 0xff);
  }
  return h;
}

absl::StatusOr<Schema> Schema::WithDomainSizes(
    const std::vector<int>& sizes) const {
  if (sizes.size() != attributes_.size()) {
    return absl::InvalidArgumentError("domain size list length mismatch");
  }
  std::vector<Attribute> attrs = attributes_;
  for (size_t j = 0; j < attrs.size(); ++j) attrs[j].domain_size = sizes[j];
  return Create(std::move(attrs));
}

}  // namespace vfsynth
