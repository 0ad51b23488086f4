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

#include "vfsynth/harness/planted.h"

#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/privacy/random.h"

namespace vfsynth {

absl::StatusOr<Dataset> GeneratePlanted(const PlantedConfig& config) {
  if (config.d < 1 || config.domain_size < 2 || config.n < 0) {
    return absl::InvalidArgumentError(
        "planted table needs d >= 1, domain size >= 2 and n >= 0");
  }
  if (!(config.skew >= 0 && config.skew <= 1)) {
    return absl::InvalidArgumentError("skew must lie in [0, 1]");
  }
  std::vector<int> source(config.d, -1);
  std::vector<double> strength(config.d, 0);
  for (const Coupling& c : config.couplings) {
    if (c.source < 0 || c.target >= config.d || c.source >= c.target) {
      return absl::InvalidArgumentError(absl::StrCat(
          "coupling ", c.source, " -> ", c.target,
          " must satisfy 0 <= source < target < d"));
    }
    if (!(c.strength >= 0 && c.strength <= 1)) {
      return absl::InvalidArgumentError("coupling strength must lie in [0, 1]");
    }
    if (source[c.target] != -1) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", c.target, " has two sources"));
    }
    source[c.target] = c.source;
    strength[c.target] = c.strength;
  }
  std::vector<Attribute> attrs;
  for (int j = 0; j < config.d; ++j) {
    attrs.push_back({absl::StrCat("a", j), config.domain_size});
  }
  VFS_ASSIGN_OR_RETURN(Schema schema, Schema::Create(std::move(attrs)));

  Rng rng = MakeRng(config.seed, {0x706c616e74ULL});
  const int u = config.domain_size;
  std::uniform_int_distribution<int> rest(1, u - 1);
  auto draw = [&] {
    return UniformOpen01(rng) < config.skew ? 0 : rest(rng);
  };
  std::vector<uint32_t> values(config.n * config.d);
  for (int64_t r = 0; r < config.n; ++r) {
    uint32_t* row = values.data() + r * config.d;
    for (int j = 0; j < config.d; ++j) {
      if (source[j] >= 0 && UniformOpen01(rng) < strength[j]) {
        row[j] = row[source[j]] % u;
      } else {
        row[j] = draw();
      }
    }
  }
  std::vector<int> cols(config.d);
  for (int j = 0; j < config.d; ++j) cols[j] = j;
  return Dataset::Create(std::move(schema), std::move(cols),
                         std::move(values));
}

nlohmann::json ToJson(const PlantedConfig& config) {
  nlohmann::json couplings = nlohmann::json::array();
  for (const Coupling& c : config.couplings) {
    couplings.push_back(
        {{"source", c.source}, {"target", c.target}, {"strength", c.strength}});
  }
  return {{"d", config.d},
          {"domain_size", config.domain_size},
          {"n", config.n},
          {"skew", config.skew},
          {"couplings", couplings},
          {"seed", config.seed}};
}

absl::StatusOr<PlantedConfig> PlantedFromJson(const nlohmann::json& json) {
  PlantedConfig c;
  if (!json.is_object()) {
    return absl::InvalidArgumentError("planted config must be an object");
  }
  try {
    c.d = json.value("d", c.d);
    c.domain_size = json.value("domain_size", c.domain_size);
    c.n = json.value("n", c.n);
    c.skew = json.value("skew", c.skew);
    c.seed = json.value("seed", c.seed);
    if (json.contains("couplings")) {
      c.couplings.clear();
      for (const nlohmann::json& j : json.at("couplings")) {
        c.couplings.push_back({j.at("source").get<int>(),
                               j.at("target").get<int>(),
                               j.value("strength", 0.9)});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad planted config: ", std::string(e.what())));
  }
  return c;
}

}  // namespace vfsynth
