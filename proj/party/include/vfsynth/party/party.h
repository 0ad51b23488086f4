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

#ifndef VFSYNTH_PARTY_PARTY_H_
#define VFSYNTH_PARTY_PARTY_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/message/party_message.h"
#include "vfsynth/party/local_mrf.h"
#include "vfsynth/privacy/budget.h"
#include "vfsynth/sketch/encoder.h"
#include "vfsynth/sketch/key_ring.h"

namespace vfsynth {

struct PartyConfig {
  int party_id = 0;
  int party_count = 1;
  EncoderKind encoder = EncoderKind::kSketch;
  StageBudgets stages;
  // Bins per attribute for the encoding path; 0 disables binning.
  int bin_count = 0;
  double tau = 1e5;
  // The designated party also releases the noisy record count.
  bool emit_count = false;
  // gamma, t, threads and the phantom seed; global_d is filled in from the
  // schema.
  SketchEncodeOptions sketch;
  LocMrfOptions loc_mrf;
  uint64_t seed = 0;
};

struct PartyOutput {
  PartyMessage message;
  SpendLedger ledger;
};

// Runs one party end to end: local model on raw attributes, binning and
// value distributions, encoding of the binned attributes, and the optional
// noisy count. `data` holds the party's columns over the global schema.
// `ring` is required for the sketch encoder. The message passes AuditMessage
// and the ledger never exceeds stages.total.
absl::StatusOr<PartyOutput> RunParty(const Dataset& data,
                                     const PartyConfig& config,
                                     const KeyRing* ring);

}  // namespace vfsynth

#endif  // VFSYNTH_PARTY_PARTY_H_
