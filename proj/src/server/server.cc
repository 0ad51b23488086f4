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

#include "vfsynth/server/server.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vfsynth/core/status_macros.h"
#include "vfsynth/server/estimator.h"

namespace vfsynth {
namespace {

enum Stream : uint64_t { kOptStream = 1, kSampleStream };

nlohmann::json MarginalList(const std::vector<Marginal>& ms) {
  nlohmann::json out = nlohmann::json::array();
  for (const Marginal& m : ms) {
    out.push_back(std::vector<int>(m.attributes().begin(), m.attributes().end()));
  }
  return out;
}

nlohmann::json EdgeList(const std::vector<ScoredEdge>& edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const ScoredEdge& e : edges) {
    out.push_back({{"a", e.a}, {"b", e.b}, {"score", e.score}});
  }
  return out;
}

}  // namespace

absl::StatusOr<Federation> MergeHeaders(
    const std::vector<PartyMessage>& messages) {
  if (messages.empty()) return absl::InvalidArgumentError("no messages");
  const int d = messages[0].header.value().global_d;
  std::vector<Attribute> attrs(d);
  Federation out;
  out.party_of.assign(d, -1);
  std::set<int> parties;
  for (const PartyMessage& msg : messages) {
    const MessageHeader& h = msg.header.value();
    if (!parties.insert(h.party_id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("two messages from party ", h.party_id));
    }
    if (h.global_d != d) {
      return absl::InvalidArgumentError("parties disagree on the schema size");
    }
    for (const PartyAttribute& a : h.attributes) {
      if (a.id < 0 || a.id >= d) {
        return absl::InvalidArgumentError("attribute id out of range");
      }
      if (out.party_of[a.id] != -1) {
        return absl::InvalidArgumentError(
            absl::StrCat("attribute ", a.id, " is held by two parties"));
      }
      out.party_of[a.id] = h.party_id;
      attrs[a.id] = {a.name, a.domain_size};
    }
  }
  for (int a = 0; a < d; ++a) {
    if (out.party_of[a] == -1) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", a, " is held by no party"));
    }
  }
  VFS_ASSIGN_OR_RETURN(out.schema, Schema::Create(std::move(attrs)));
  return out;
}

absl::StatusOr<double> NoisyCount(const std::vector<PartyMessage>& messages) {
  std::optional<double> n_hat;
  for (const PartyMessage& msg : messages) {
    if (!msg.noisy_count) continue;
    if (n_hat) return absl::InvalidArgumentError("two noisy counts received");
    n_hat = msg.noisy_count->value();
  }
  if (!n_hat) return absl::InvalidArgumentError("no noisy count received");
  return *n_hat;
}

absl::StatusOr<std::vector<MrfModel>> LocalModels(
    const std::vector<PartyMessage>& messages, const Schema& schema) {
  std::vector<MrfModel> out;
  for (const PartyMessage& msg : messages) {
    VFS_ASSIGN_OR_RETURN(
        MrfModel model,
        MrfModel::Create(schema, msg.graph.value(), msg.marginals.value(),
                         msg.model_total.value()));
    VFS_RETURN_IF_ERROR(model.SetTheta(msg.theta.value()));
    out.push_back(std::move(model));
  }
  return out;
}

absl::StatusOr<ServerResult> RunServer(
    const std::vector<std::vector<uint8_t>>& envelopes,
    const ServerConfig& config) {
  std::vector<PartyMessage> messages;
  for (const std::vector<uint8_t>& bytes : envelopes) {
    VFS_RETURN_IF_ERROR(AuditEnvelope(bytes));
    VFS_ASSIGN_OR_RETURN(PartyMessage msg, Deserialize(bytes));
    VFS_RETURN_IF_ERROR(AuditMessage(msg));
    messages.push_back(std::move(msg));
  }
  ServerResult out;
  VFS_ASSIGN_OR_RETURN(out.federation, MergeHeaders(messages));
  VFS_ASSIGN_OR_RETURN(out.n_hat, NoisyCount(messages));
  const Schema& schema = out.federation.schema;
  const std::vector<int>& party_of = out.federation.party_of;
  // Fitting needs a positive scale; sampling still uses the released value.
  const double scale = std::max(out.n_hat, 1.0);

  VFS_ASSIGN_OR_RETURN(std::vector<MrfModel> locals,
                       LocalModels(messages, schema));
  VFS_ASSIGN_OR_RETURN(EncodedView view,
                       EncodedView::Create(messages, schema, scale));
  const MarginalEstimator estimate = view.AsEstimator();

  std::vector<AttributeGraph> graphs;
  for (const PartyMessage& msg : messages) graphs.push_back(msg.graph.value());
  VFS_ASSIGN_OR_RETURN(GraphComResult com,
                       GraphCom(graphs, party_of, schema, estimate, scale,
                                config.tau, config.threads));
  const Triangulation tri = Triangulate(com.graph);

  std::vector<int> sizes;
  for (const Attribute& a : view.binned_schema().attributes()) {
    sizes.push_back(a.domain_size);
  }
  const std::vector<Marginal> cross = SelectCrossMarginals(
      tri.tree, party_of, sizes, scale, config.d_c, config.max_cross_arity);

  VFS_ASSIGN_OR_RETURN(InitResult init,
                       InitMrf(locals, com.graph, schema, scale,
                               config.init_fit));
  const std::vector<Marginal> initial = init.model.marginals();

  std::map<int, size_t> message_of;
  for (size_t i = 0; i < messages.size(); ++i) {
    message_of[messages[i].header.value().party_id] = i;
  }
  std::map<int, ContingencyHistogram> references;
  for (int a = 0; a < schema.size(); ++a) {
    const MrfModel& local = locals[message_of.at(party_of[a])];
    VFS_ASSIGN_OR_RETURN(ContingencyHistogram h,
                         local.InferMarginal(Marginal{a}));
    VFS_ASSIGN_OR_RETURN(ContingencyHistogram p, h.Normalized());
    references.emplace(a, std::move(p));
  }

  OptOptions opt = config.opt;
  opt.threads = config.threads;
  Rng opt_rng = MakeRng(config.seed, {kOptStream});
  VFS_ASSIGN_OR_RETURN(std::vector<OptRound> rounds,
                       OptMrf(init.model, init.targets, cross, estimate,
                              references, scale, opt, opt_rng));
  out.model = std::move(init.model);

  Rng sample_rng = MakeRng(config.seed, {kSampleStream});
  VFS_ASSIGN_OR_RETURN(out.synthetic,
                       Synthesize(out.model, out.n_hat, sample_rng));

  nlohmann::json report;
  report["n_hat"] = out.n_hat;
  report["party_of"] = party_of;
  report["graph_com"] = {{"ranked", EdgeList(com.ranked)},
                         {"added", EdgeList(com.added)},
                         {"max_clique_domain",
                          MaxCliqueDomain(tri.tree, schema)}};
  report["initial_marginals"] = MarginalList(initial);
  report["cross_candidates"] = MarginalList(cross);
  report["final_marginals"] = MarginalList(out.model.marginals());
  report["init_fit"] = {{"converged", init.fit.converged},
                        {"iterations", init.fit.iterations},
                        {"loss", init.fit.loss}};
  nlohmann::json rj = nlohmann::json::array();
  for (const OptRound& r : rounds) {
    rj.push_back({{"batch", MarginalList(r.batch)},
                  {"l1_before", r.l1_before},
                  {"added", MarginalList(r.added)},
                  {"batch_l1_before", r.batch_l1_before},
                  {"batch_l1_after", r.batch_l1_after},
                  {"reverted", r.reverted}});
  }
  report["opt_rounds"] = rj;
  out.report = std::move(report);
  return out;
}

}  // namespace vfsynth
