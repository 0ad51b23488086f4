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

#ifndef VFSYNTH_CORE_SCHEMA_H_
#define VFSYNTH_CORE_SCHEMA_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace vfsynth {

// A categorical attribute. Values are dense integer codes in
// [0, domain_size).
struct Attribute {
  std::string name;
  int domain_size = 0;

  bool operator==(const Attribute&) const = default;
};

// Ordered list of attributes of the (virtual) global table. Attribute indices
// into a Schema are the global attribute ids used by every other module.
class Schema {
 public:
  Schema() = default;

  // Requires at least one attribute, unique names, and domain sizes >= 2.
  static absl::StatusOr<Schema> Create(std::vector<Attribute> attributes);

  int size() const { return static_cast<int>(attributes_.size()); }
  const Attribute& attribute(int j) const { return attributes_[j]; }
  int domain_size(int j) const { return attributes_[j].domain_size; }
  const std::vector<Attribute>& attributes() const { return attributes_; }

  absl::StatusOr<int> IndexOf(std::string_view name) const;

  // Mean domain size over all attributes.
  double MeanDomainSize() const;

  // Stable 64-bit FNV-1a digest of names and domain sizes.
  uint64_t Fingerprint() const;

  // Copy of this schema with domain sizes replaced.
  absl::StatusOr<Schema> WithDomainSizes(const std::vector<int>& sizes) const;

  bool operator==(const Schema&) const = default;

 private:
  explicit Schema(std::vector<Attribute> attributes)
      : attributes_(std::move(attributes)) {}

  std::vector<Attribute> attributes_;
};

}  // namespace vfsynth

#endif  // VFSYNTH_CORE_SCHEMA_H_
