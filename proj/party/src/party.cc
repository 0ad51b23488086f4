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

#include "vfsynth/party/party.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/fo/encoder.h"
#include "vfsynth/party/binning.h"
#include "vfsynth/privacy/mechanisms.h"

namespace vfsynth {
namespace {

enum Stream : uint64_t { kMrfStream = 1, kBinStream, kFoStream, kCountStream };

}  // namespace

absl::StatusOr<PartyOutput> RunParty(const Dataset& data,
                                     const PartyConfig& config,
                                     const KeyRing* ring) {
  const Schema& schema = data.schema();
  const uint64_t pid = static_cast<uint64_t>(config.party_id);
  SpendLedger ledger(config.stages.total);

  VFS_ASSIGN_OR_RETURN(int64_t tau_prime,
                       LocalCliqueBound(config.tau, config.party_count, schema));
  Rng mrf_rng = MakeRng(config.seed, {pid, kMrfStream});
  VFS_ASSIGN_OR_RETURN(
      LocMrfResult local,
      LocMrf(data, tau_prime, config.stages.loc_mrf_per_party, config.loc_mrf,
             mrf_rng, &ledger));

  VFS_ASSIGN_OR_RETURN(BinnedData binned, BinAttributes(data, config.bin_count));
  int global_binned = 0;
  for (const Attribute& a : schema.attributes()) {
    if (config.bin_count > 0 && a.domain_size > config.bin_count) {
      ++global_binned;
    }
  }
  const double eps_per_attr =
      global_binned > 0 ? config.stages.binning_epsilon / global_binned : 0.0;
  Rng bin_rng = MakeRng(config.seed, {pid, kBinStream});
  VFS_ASSIGN_OR_RETURN(
      BinningSpec spec,
      ValueDistributions(data, binned.maps, config.bin_count, eps_per_attr,
                         bin_rng, &ledger));

  std::optional<Released<SketchSet>> sketches;
  std::optional<Released<FoEncodedData>> fo;
  if (config.encoder == EncoderKind::kSketch) {
    if (ring == nullptr) {
      return absl::FailedPreconditionError("sketch encoding needs a key ring");
    }
    SketchEncodeOptions opts = config.sketch;
    opts.global_d = schema.size();
    VFS_ASSIGN_OR_RETURN(SketchSet set,
                         LocEncSketch(binned.data, config.stages.encoding, opts,
                                      *ring, &ledger));
    sketches.emplace(std::move(set), Mechanism::kDpfm);
  } else {
    Rng fo_rng = MakeRng(config.seed, {pid, kFoStream});
    VFS_ASSIGN_OR_RETURN(
        FoEncodedData encoded,
        LocEncFo(binned.data, config.stages.encoding, schema.size(), fo_rng,
                 &ledger));
    fo.emplace(std::move(encoded), Mechanism::kGrr);
  }

  std::optional<Released<double>> noisy_count;
  if (config.emit_count) {
    if (!(config.stages.noisy_count_epsilon > 0)) {
      return absl::FailedPreconditionError(
          "the counting party needs a positive count budget");
    }
    Rng count_rng = MakeRng(config.seed, {pid, kCountStream});
    VFS_ASSIGN_OR_RETURN(
        double n_hat,
        SanitizeCount(data.num_rows(), config.stages.noisy_count_epsilon,
                      count_rng, &ledger));
    noisy_count.emplace(n_hat, Mechanism::kLaplaceCount);
  }

  MessageHeader header;
  header.party_id = config.party_id;
  header.global_d = schema.size();
  header.encoder = config.encoder;
  for (int a : data.columns()) {
    header.attributes.push_back(
        {a, schema.attribute(a).name, schema.domain_size(a)});
  }
  PartyOutput out{
      PartyMessage{
          Released<MessageHeader>(std::move(header), Mechanism::kPublic),
          Released<AttributeGraph>(local.graph, Mechanism::kGaussianLocMrf),
          Released<std::vector<Marginal>>(local.model.marginals(),
                                          Mechanism::kGaussianLocMrf),
          Released<std::vector<std::vector<double>>>(
              local.model.theta(), Mechanism::kGaussianLocMrf),
          Released<double>(local.noisy_total, Mechanism::kGaussianLocMrf),
          std::move(sketches), std::move(fo),
          Released<BinningSpec>(std::move(spec),
                                Mechanism::kLaplaceValueDist),
          std::move(noisy_count)},
      std::move(ledger)};
  VFS_RETURN_IF_ERROR(AuditMessage(out.message));
  return out;
}

}  // namespace vfsynth
