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

#ifndef VFSYNTH_HARNESS_IO_H_
#define VFSYNTH_HARNESS_IO_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "vfsynth/core/dataset.h"
#include "vfsynth/core/schema.h"

namespace vfsynth {

// Attribute declarations read from a JSON domain file:
//   {"attributes": [{"name": "age", "domain_size": 5},
//                   {"name": "sex", "categories": ["m", "f"]}]}
// An attribute with categories has domain size equal to their count, and CSV
// cells may use either the category string or its integer code.
struct DomainInfo {
  Schema schema;
  // categories[j] is empty for integer-coded attributes.
  std::vector<std::vector<std::string>> categories;
};

absl::StatusOr<DomainInfo> ParseDomain(const nlohmann::json& json);
absl::StatusOr<DomainInfo> LoadDomain(const std::string& path);

// Parses CSV text with a header row. Columns are matched to attributes by
// name; columns not in the domain are ignored. Quoted fields are supported.
absl::StatusOr<Dataset> ParseCsv(const std::string& text,
                                 const DomainInfo& domain);
absl::StatusOr<Dataset> LoadCsv(const std::string& csv_path,
                                const std::string& domain_path);

// Header plus one line per record, integer codes.
std::string FormatCsv(const Dataset& data);
absl::Status WriteFile(const std::string& path, const std::string& contents);
absl::StatusOr<std::string> ReadFile(const std::string& path);

}  // namespace vfsynth

#endif  // VFSYNTH_HARNESS_IO_H_
