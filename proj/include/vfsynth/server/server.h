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

#ifndef VFSYNTH_SERVER_SERVER_H_
#define VFSYNTH_SERVER_SERVER_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "vfsynth/core/dataset.h"
#include "vfsynth/core/schema.h"
#include "vfsynth/message/party_message.h"
#include "vfsynth/mrf/model.h"
#include "vfsynth/server/global_mrf.h"

namespace vfsynth {

struct ServerConfig {
  double tau = 1e5;
  // Minimum average cell count of a cross-party marginal.
  double d_c = 50;
  int max_cross_arity = 3;
  OptOptions opt;
  FitOptions init_fit;
  int threads = 1;
  uint64_t seed = 0;
};

// Global schema assembled from the message headers.
struct Federation {
  Schema schema;
  // party_of[a] is the id of the party holding attribute a.
  std::vector<int> party_of;
};

// Headers must agree on the attribute count and jointly hold every
// attribute exactly once.
absl::StatusOr<Federation> MergeHeaders(
    const std::vector<PartyMessage>& messages);

// The released noisy count. Exactly one message must carry it.
absl::StatusOr<double> NoisyCount(const std::vector<PartyMessage>& messages);

// Rebuilds each party's model from its graph, marginals and theta.
absl::StatusOr<std::vector<MrfModel>> LocalModels(
    const std::vector<PartyMessage>& messages, const Schema& schema);

struct ServerResult {
  Federation federation;
  double n_hat = 0;
  MrfModel model;
  Dataset synthetic;
  // Selected edges with scores, marginal sets, per-round errors.
  nlohmann::json report;
};

// Decodes and audits every envelope, then builds the global graph and model
// and samples n_hat records.
absl::StatusOr<ServerResult> RunServer(
    const std::vector<std::vector<uint8_t>>& envelopes,
    const ServerConfig& config);

}  // namespace vfsynth

#endif  // VFSYNTH_SERVER_SERVER_H_
