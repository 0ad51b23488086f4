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

#ifndef VFSYNTH_MESSAGE_PARTY_MESSAGE_H_
#define VFSYNTH_MESSAGE_PARTY_MESSAGE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "vfsynth/core/binning.h"
#include "vfsynth/core/marginal.h"
#include "vfsynth/fo/fo.h"
#include "vfsynth/mrf/graph.h"
#include "vfsynth/sketch/sketch.h"

namespace vfsynth {

// Mechanism that produced a released value. kPublic is reserved for schema
// metadata (names, domain sizes, attribute ids).
enum class Mechanism : uint8_t {
  kPublic = 0,
  kGaussianLocMrf = 1,
  kDpfm = 2,
  kGrr = 3,
  kLaplaceCount = 4,
  kLaplaceValueDist = 5,
};

const char* MechanismName(Mechanism m);

// A value that may cross the party/server boundary. There is no default
// constructor and no conversion from T, so a raw number cannot be stored in
// a message field without naming its mechanism.
template <typename T>
class Released {
 public:
  Released(T value, Mechanism mechanism)
      : value_(std::move(value)), mechanism_(mechanism) {}

  const T& value() const { return value_; }
  Mechanism mechanism() const { return mechanism_; }

 private:
  T value_;
  Mechanism mechanism_;
};

enum class EncoderKind : uint8_t { kSketch = 0, kFo = 1 };

struct PartyAttribute {
  int id = -1;
  std::string name;
  int domain_size = 0;
};

struct MessageHeader {
  int party_id = 0;
  int global_d = 0;
  std::vector<PartyAttribute> attributes;
  EncoderKind encoder = EncoderKind::kSketch;
};

// Everything one party sends to the server.
struct PartyMessage {
  Released<MessageHeader> header;
  Released<AttributeGraph> graph;
  Released<std::vector<Marginal>> marginals;
  Released<std::vector<std::vector<double>>> theta;
  // Noisy local record count the model is scaled to.
  Released<double> model_total;
  std::optional<Released<SketchSet>> sketches;
  std::optional<Released<FoEncodedData>> fo;
  Released<BinningSpec> binning;
  // Only the party that spends the count budget sends this.
  std::optional<Released<double>> noisy_count;
};

// Section tags of the binary envelope.
enum class Section : uint8_t {
  kHeader = 1,
  kGraph = 2,
  kMarginals = 3,
  kTheta = 4,
  kEncoding = 5,
  kBinning = 6,
  kNoisyCount = 7,
};

inline constexpr uint8_t kWireVersion = 1;

std::vector<uint8_t> Serialize(const PartyMessage& message);
absl::StatusOr<PartyMessage> Deserialize(const std::vector<uint8_t>& bytes);

struct SectionInfo {
  Section section;
  Mechanism mechanism;
  uint64_t payload_bytes = 0;
};

// Walks the envelope without decoding payloads.
absl::StatusOr<std::vector<SectionInfo>> ListSections(
    const std::vector<uint8_t>& bytes);

// Checks that every field carries the mechanism expected for it; only the
// header may be public.
absl::Status AuditMessage(const PartyMessage& message);
// Same on the wire: every section but the header must name a private
// mechanism.
absl::Status AuditEnvelope(const std::vector<uint8_t>& bytes);

// Number of 32-bit sketch values in the encoding section (t * sum u_j), or
// the number of perturbed rows for randomized response.
int64_t EncodingEntryCount(const PartyMessage& message);

// Human-readable rendering; large arrays are summarized by length.
nlohmann::json ToDebugJson(const PartyMessage& message);

}  // namespace vfsynth

#endif  // VFSYNTH_MESSAGE_PARTY_MESSAGE_H_
