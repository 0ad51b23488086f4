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

#include "vfsynth/message/party_message.h"

#include <cmath>
#include <cstring>
#include <string>
#include <utility>

#include "absl/strings/str_cat.h"
#include "vfsynth/core/status_macros.h"

namespace vfsynth {
namespace {

class Writer {
 public:
  template <typename T>
  void Put(T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    const size_t at = out_.size();
    out_.resize(at + sizeof(T));
    std::memcpy(out_.data() + at, &v, sizeof(T));
  }
  void PutString(const std::string& s) {
    Put<uint32_t>(static_cast<uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void PutBytes(const std::vector<uint8_t>& b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }
  template <typename T>
  void PutArray(const std::vector<T>& v) {
    const size_t at = out_.size();
    out_.resize(at + v.size() * sizeof(T));
    if (!v.empty()) std::memcpy(out_.data() + at, v.data(), v.size() * sizeof(T));
  }
  std::vector<uint8_t>& bytes() { return out_; }

 private:
  std::vector<uint8_t> out_;
};

class Reader {
 public:
  Reader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  template <typename T>
  absl::StatusOr<T> Get() {
    if (size_ - pos_ < sizeof(T)) return Truncated();
    T v;
    std::memcpy(&v, data_ + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  absl::StatusOr<std::string> GetString() {
    VFS_ASSIGN_OR_RETURN(uint32_t n, Get<uint32_t>());
    if (size_ - pos_ < n) return Truncated();
    std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return s;
  }
  template <typename T>
  absl::StatusOr<std::vector<T>> GetArray(uint64_t count) {
    if (count > (size_ - pos_) / sizeof(T)) return Truncated();
    std::vector<T> v(count);
    if (count > 0) std::memcpy(v.data(), data_ + pos_, count * sizeof(T));
    pos_ += count * sizeof(T);
    return v;
  }
  bool done() const { return pos_ == size_; }
  size_t remaining() const { return size_ - pos_; }

 private:
  absl::Status Truncated() const {
    return absl::InvalidArgumentError(
        absl::StrCat("message truncated at byte ", pos_));
  }
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

void AppendSection(Writer& w, Section tag, Mechanism mechanism,
                   std::vector<uint8_t> payload) {
  w.Put<uint8_t>(static_cast<uint8_t>(tag));
  w.Put<uint8_t>(static_cast<uint8_t>(mechanism));
  w.Put<uint64_t>(payload.size());
  w.PutBytes(payload);
}

std::vector<uint8_t> EncodeHeader(const MessageHeader& h) {
  Writer w;
  w.Put<int32_t>(h.party_id);
  w.Put<int32_t>(h.global_d);
  w.Put<uint8_t>(static_cast<uint8_t>(h.encoder));
  w.Put<uint32_t>(h.attributes.size());
  for (const PartyAttribute& a : h.attributes) {
    w.Put<int32_t>(a.id);
    w.Put<uint32_t>(a.domain_size);
    w.PutString(a.name);
  }
  return std::move(w.bytes());
}

// Node list followed by the strict upper triangle of the adjacency matrix
// over those nodes, packed LSB first.
std::vector<uint8_t> EncodeGraph(const AttributeGraph& g) {
  Writer w;
  const std::vector<int>& nodes = g.nodes();
  w.Put<uint32_t>(g.universe());
  w.Put<uint32_t>(nodes.size());
  for (int v : nodes) w.Put<int32_t>(v);
  const size_t n = nodes.size();
  std::vector<uint8_t> bits((n * (n - (n > 0)) / 2 + 7) / 8, 0);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j, ++k) {
      if (g.HasEdge(nodes[i], nodes[j])) bits[k / 8] |= 1u << (k % 8);
    }
  }
  w.PutBytes(bits);
  return std::move(w.bytes());
}

std::vector<uint8_t> EncodeMarginals(const std::vector<Marginal>& ms) {
  Writer w;
  w.Put<uint32_t>(ms.size());
  for (const Marginal& m : ms) {
    w.Put<uint8_t>(static_cast<uint8_t>(m.arity()));
    for (int a : m.attributes()) w.Put<int32_t>(a);
  }
  return std::move(w.bytes());
}

std::vector<uint8_t> EncodeTheta(const std::vector<std::vector<double>>& theta,
                                 double total) {
  Writer w;
  w.Put<double>(total);
  w.Put<uint32_t>(theta.size());
  for (const auto& block : theta) {
    w.Put<uint64_t>(block.size());
    w.PutArray(block);
  }
  return std::move(w.bytes());
}

std::vector<uint8_t> EncodeSketches(const SketchSet& s) {
  Writer w;
  w.Put<uint8_t>(static_cast<uint8_t>(EncoderKind::kSketch));
  w.Put<double>(s.params.gamma);
  w.Put<uint32_t>(s.params.t);
  w.Put<double>(s.params.eps_prime);
  w.Put<uint64_t>(s.params.k_p);
  w.Put<uint32_t>(s.params.alpha_min);
  w.PutArray(s.params.key_ids);
  w.Put<uint32_t>(s.attributes.size());
  for (const AttributeSketch& a : s.attributes) {
    w.Put<int32_t>(a.attribute);
    w.Put<uint32_t>(a.domain_size);
    w.PutArray(a.alphas);
  }
  return std::move(w.bytes());
}

std::vector<uint8_t> EncodeFo(const FoEncodedData& f) {
  Writer w;
  w.Put<uint8_t>(static_cast<uint8_t>(EncoderKind::kFo));
  w.Put<uint32_t>(f.attributes.size());
  for (size_t i = 0; i < f.attributes.size(); ++i) {
    w.Put<int32_t>(f.attributes[i]);
    w.Put<uint32_t>(f.domain_sizes[i]);
    w.Put<double>(f.eps_prime[i]);
  }
  w.Put<uint64_t>(f.num_rows);
  w.PutArray(f.values);
  return std::move(w.bytes());
}

std::vector<uint8_t> EncodeBinning(const BinningSpec& b) {
  Writer w;
  w.Put<int32_t>(b.bin_count);
  w.Put<uint32_t>(b.attributes.size());
  for (const BinnedAttribute& a : b.attributes) {
    w.Put<int32_t>(a.attribute);
    w.Put<uint32_t>(a.map.domain_size);
    w.Put<uint32_t>(a.map.bins);
    for (const auto& dist : a.distributions) w.PutArray(dist);
  }
  return std::move(w.bytes());
}

absl::StatusOr<MessageHeader> DecodeHeader(Reader& r) {
  MessageHeader h;
  VFS_ASSIGN_OR_RETURN(h.party_id, r.Get<int32_t>());
  VFS_ASSIGN_OR_RETURN(h.global_d, r.Get<int32_t>());
  VFS_ASSIGN_OR_RETURN(uint8_t enc, r.Get<uint8_t>());
  if (enc > 1) return absl::InvalidArgumentError("unknown encoder kind");
  h.encoder = static_cast<EncoderKind>(enc);
  VFS_ASSIGN_OR_RETURN(uint32_t count, r.Get<uint32_t>());
  for (uint32_t i = 0; i < count; ++i) {
    PartyAttribute a;
    VFS_ASSIGN_OR_RETURN(a.id, r.Get<int32_t>());
    VFS_ASSIGN_OR_RETURN(uint32_t u, r.Get<uint32_t>());
    a.domain_size = static_cast<int>(u);
    VFS_ASSIGN_OR_RETURN(a.name, r.GetString());
    if (a.id < 0 || a.id >= h.global_d || a.domain_size < 1) {
      return absl::InvalidArgumentError("bad attribute in header");
    }
    h.attributes.push_back(std::move(a));
  }
  return h;
}

absl::StatusOr<AttributeGraph> DecodeGraph(Reader& r) {
  VFS_ASSIGN_OR_RETURN(uint32_t universe, r.Get<uint32_t>());
  VFS_ASSIGN_OR_RETURN(uint32_t n, r.Get<uint32_t>());
  if (n > universe) return absl::InvalidArgumentError("bad graph node count");
  VFS_ASSIGN_OR_RETURN(std::vector<int32_t> nodes, r.GetArray<int32_t>(n));
  for (int32_t v : nodes) {
    if (v < 0 || static_cast<uint32_t>(v) >= universe) {
      return absl::InvalidArgumentError("graph node out of range");
    }
  }
  const uint64_t pairs = static_cast<uint64_t>(n) * (n - (n > 0)) / 2;
  VFS_ASSIGN_OR_RETURN(std::vector<uint8_t> bits,
                       r.GetArray<uint8_t>((pairs + 7) / 8));
  AttributeGraph g(static_cast<int>(universe),
                   std::vector<int>(nodes.begin(), nodes.end()));
  uint64_t k = 0;
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j, ++k) {
      if (bits[k / 8] >> (k % 8) & 1) g.AddEdge(nodes[i], nodes[j]);
    }
  }
  return g;
}

absl::StatusOr<std::vector<Marginal>> DecodeMarginals(Reader& r) {
  VFS_ASSIGN_OR_RETURN(uint32_t count, r.Get<uint32_t>());
  std::vector<Marginal> out;
  for (uint32_t i = 0; i < count; ++i) {
    VFS_ASSIGN_OR_RETURN(uint8_t arity, r.Get<uint8_t>());
    VFS_ASSIGN_OR_RETURN(std::vector<int32_t> ids, r.GetArray<int32_t>(arity));
    for (size_t a = 1; a < ids.size(); ++a) {
      if (ids[a] <= ids[a - 1]) {
        return absl::InvalidArgumentError("marginal ids not ascending");
      }
    }
    out.emplace_back(std::vector<int>(ids.begin(), ids.end()));
  }
  return out;
}

absl::StatusOr<SketchSet> DecodeSketches(Reader& r) {
  SketchSet s;
  VFS_ASSIGN_OR_RETURN(s.params.gamma, r.Get<double>());
  VFS_ASSIGN_OR_RETURN(uint32_t t, r.Get<uint32_t>());
  s.params.t = static_cast<int>(t);
  VFS_ASSIGN_OR_RETURN(s.params.eps_prime, r.Get<double>());
  VFS_ASSIGN_OR_RETURN(uint64_t kp, r.Get<uint64_t>());
  s.params.k_p = static_cast<int64_t>(kp);
  VFS_ASSIGN_OR_RETURN(uint32_t amin, r.Get<uint32_t>());
  s.params.alpha_min = static_cast<int>(amin);
  VFS_ASSIGN_OR_RETURN(s.params.key_ids, r.GetArray<uint64_t>(t));
  VFS_ASSIGN_OR_RETURN(uint32_t count, r.Get<uint32_t>());
  for (uint32_t i = 0; i < count; ++i) {
    AttributeSketch a;
    VFS_ASSIGN_OR_RETURN(a.attribute, r.Get<int32_t>());
    VFS_ASSIGN_OR_RETURN(uint32_t u, r.Get<uint32_t>());
    a.domain_size = static_cast<int>(u);
    VFS_ASSIGN_OR_RETURN(a.alphas,
                         r.GetArray<uint32_t>(static_cast<uint64_t>(u) * t));
    s.attributes.push_back(std::move(a));
  }
  return s;
}

absl::StatusOr<FoEncodedData> DecodeFo(Reader& r) {
  FoEncodedData f;
  VFS_ASSIGN_OR_RETURN(uint32_t count, r.Get<uint32_t>());
  for (uint32_t i = 0; i < count; ++i) {
    VFS_ASSIGN_OR_RETURN(int32_t id, r.Get<int32_t>());
    VFS_ASSIGN_OR_RETURN(uint32_t u, r.Get<uint32_t>());
    VFS_ASSIGN_OR_RETURN(double eps, r.Get<double>());
    f.attributes.push_back(id);
    f.domain_sizes.push_back(static_cast<int>(u));
    f.eps_prime.push_back(eps);
  }
  VFS_ASSIGN_OR_RETURN(uint64_t rows, r.Get<uint64_t>());
  f.num_rows = static_cast<int64_t>(rows);
  if (count > 0 && rows > r.remaining() / (4ull * count)) {
    return absl::InvalidArgumentError("randomized-response rows truncated");
  }
  VFS_ASSIGN_OR_RETURN(f.values, r.GetArray<uint32_t>(rows * count));
  return f;
}

absl::StatusOr<BinningSpec> DecodeBinning(Reader& r) {
  BinningSpec b;
  VFS_ASSIGN_OR_RETURN(b.bin_count, r.Get<int32_t>());
  VFS_ASSIGN_OR_RETURN(uint32_t count, r.Get<uint32_t>());
  for (uint32_t i = 0; i < count; ++i) {
    BinnedAttribute a;
    VFS_ASSIGN_OR_RETURN(a.attribute, r.Get<int32_t>());
    VFS_ASSIGN_OR_RETURN(uint32_t u, r.Get<uint32_t>());
    VFS_ASSIGN_OR_RETURN(uint32_t bins, r.Get<uint32_t>());
    if (bins == 0 || bins > u) {
      return absl::InvalidArgumentError("bad bin count");
    }
    a.map = BinMap{static_cast<int>(u), static_cast<int>(bins)};
    for (int l = 0; l < a.map.bins; ++l) {
      VFS_ASSIGN_OR_RETURN(auto dist, r.GetArray<double>(a.map.Width(l)));
      a.distributions.push_back(std::move(dist));
    }
    b.attributes.push_back(std::move(a));
  }
  return b;
}

absl::Status Expect(const char* field, Mechanism got,
                    std::initializer_list<Mechanism> allowed) {
  for (Mechanism m : allowed) {
    if (m == got) return absl::OkStatus();
  }
  return absl::FailedPreconditionError(absl::StrCat(
      field, " carries mechanism '", MechanismName(got), "'"));
}

bool IsPrivate(Mechanism m) {
  return m != Mechanism::kPublic &&
         static_cast<uint8_t>(m) <=
             static_cast<uint8_t>(Mechanism::kLaplaceValueDist);
}

}  // namespace

const char* MechanismName(Mechanism m) {
  switch (m) {
    case Mechanism::kPublic:
      return "public";
    case Mechanism::kGaussianLocMrf:
      return "gaussian_loc_mrf";
    case Mechanism::kDpfm:
      return "dpfm";
    case Mechanism::kGrr:
      return "grr";
    case Mechanism::kLaplaceCount:
      return "laplace_count";
    case Mechanism::kLaplaceValueDist:
      return "laplace_value_dist";
  }
  return "unknown";
}

std::vector<uint8_t> Serialize(const PartyMessage& m) {
  Writer w;
  w.Put<uint8_t>(kWireVersion);
  AppendSection(w, Section::kHeader, m.header.mechanism(),
                EncodeHeader(m.header.value()));
  AppendSection(w, Section::kGraph, m.graph.mechanism(),
                EncodeGraph(m.graph.value()));
  AppendSection(w, Section::kMarginals, m.marginals.mechanism(),
                EncodeMarginals(m.marginals.value()));
  AppendSection(w, Section::kTheta, m.theta.mechanism(),
                EncodeTheta(m.theta.value(), m.model_total.value()));
  if (m.sketches) {
    AppendSection(w, Section::kEncoding, m.sketches->mechanism(),
                  EncodeSketches(m.sketches->value()));
  }
  if (m.fo) {
    AppendSection(w, Section::kEncoding, m.fo->mechanism(),
                  EncodeFo(m.fo->value()));
  }
  AppendSection(w, Section::kBinning, m.binning.mechanism(),
                EncodeBinning(m.binning.value()));
  if (m.noisy_count) {
    Writer c;
    c.Put<double>(m.noisy_count->value());
    AppendSection(w, Section::kNoisyCount, m.noisy_count->mechanism(),
                  std::move(c.bytes()));
  }
  return std::move(w.bytes());
}

absl::StatusOr<std::vector<SectionInfo>> ListSections(
    const std::vector<uint8_t>& bytes) {
  Reader r(bytes.data(), bytes.size());
  VFS_ASSIGN_OR_RETURN(uint8_t version, r.Get<uint8_t>());
  if (version != kWireVersion) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported wire version ", version));
  }
  std::vector<SectionInfo> out;
  while (!r.done()) {
    VFS_ASSIGN_OR_RETURN(uint8_t tag, r.Get<uint8_t>());
    VFS_ASSIGN_OR_RETURN(uint8_t mech, r.Get<uint8_t>());
    VFS_ASSIGN_OR_RETURN(uint64_t len, r.Get<uint64_t>());
    if (len > r.remaining()) {
      return absl::InvalidArgumentError("section length exceeds message");
    }
    if (tag < 1 || tag > 7) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown section tag ", tag));
    }
    if (mech > static_cast<uint8_t>(Mechanism::kLaplaceValueDist)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown mechanism ", mech));
    }
    VFS_RETURN_IF_ERROR(r.GetArray<uint8_t>(len).status());
    out.push_back({static_cast<Section>(tag), static_cast<Mechanism>(mech),
                   len});
  }
  return out;
}

absl::StatusOr<PartyMessage> Deserialize(const std::vector<uint8_t>& bytes) {
  VFS_ASSIGN_OR_RETURN(std::vector<SectionInfo> sections, ListSections(bytes));
  std::optional<Released<MessageHeader>> header;
  std::optional<Released<AttributeGraph>> graph;
  std::optional<Released<std::vector<Marginal>>> marginals;
  std::optional<Released<std::vector<std::vector<double>>>> theta;
  std::optional<Released<double>> total;
  std::optional<Released<SketchSet>> sketches;
  std::optional<Released<FoEncodedData>> fo;
  std::optional<Released<BinningSpec>> binning;
  std::optional<Released<double>> noisy_count;

  size_t pos = 1;
  for (const SectionInfo& s : sections) {
    pos += 10;
    Reader r(bytes.data() + pos, s.payload_bytes);
    pos += s.payload_bytes;
    const Mechanism mech = s.mechanism;
    switch (s.section) {
      case Section::kHeader: {
        VFS_ASSIGN_OR_RETURN(MessageHeader h, DecodeHeader(r));
        header.emplace(std::move(h), mech);
        break;
      }
      case Section::kGraph: {
        VFS_ASSIGN_OR_RETURN(AttributeGraph g, DecodeGraph(r));
        graph.emplace(std::move(g), mech);
        break;
      }
      case Section::kMarginals: {
        VFS_ASSIGN_OR_RETURN(std::vector<Marginal> ms, DecodeMarginals(r));
        marginals.emplace(std::move(ms), mech);
        break;
      }
      case Section::kTheta: {
        VFS_ASSIGN_OR_RETURN(double t, r.Get<double>());
        VFS_ASSIGN_OR_RETURN(uint32_t blocks, r.Get<uint32_t>());
        std::vector<std::vector<double>> th;
        for (uint32_t i = 0; i < blocks; ++i) {
          VFS_ASSIGN_OR_RETURN(uint64_t n, r.Get<uint64_t>());
          VFS_ASSIGN_OR_RETURN(auto block, r.GetArray<double>(n));
          th.push_back(std::move(block));
        }
        theta.emplace(std::move(th), mech);
        total.emplace(t, mech);
        break;
      }
      case Section::kEncoding: {
        VFS_ASSIGN_OR_RETURN(uint8_t kind, r.Get<uint8_t>());
        if (kind == static_cast<uint8_t>(EncoderKind::kSketch)) {
          VFS_ASSIGN_OR_RETURN(SketchSet set, DecodeSketches(r));
          sketches.emplace(std::move(set), mech);
        } else if (kind == static_cast<uint8_t>(EncoderKind::kFo)) {
          VFS_ASSIGN_OR_RETURN(FoEncodedData f, DecodeFo(r));
          fo.emplace(std::move(f), mech);
        } else {
          return absl::InvalidArgumentError("unknown encoding kind");
        }
        break;
      }
      case Section::kBinning: {
        VFS_ASSIGN_OR_RETURN(BinningSpec b, DecodeBinning(r));
        binning.emplace(std::move(b), mech);
        break;
      }
      case Section::kNoisyCount: {
        VFS_ASSIGN_OR_RETURN(double c, r.Get<double>());
        noisy_count.emplace(c, mech);
        break;
      }
    }
    if (!r.done()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "trailing bytes in section ", static_cast<int>(s.section)));
    }
  }
  if (!header || !graph || !marginals || !theta || !binning) {
    return absl::InvalidArgumentError("message is missing a required section");
  }
  if (theta->value().size() != marginals->value().size()) {
    return absl::InvalidArgumentError("theta and marginal counts differ");
  }
  return PartyMessage{*std::move(header), *std::move(graph),
                      *std::move(marginals), *std::move(theta),
                      *std::move(total), std::move(sketches), std::move(fo),
                      *std::move(binning), std::move(noisy_count)};
}

absl::Status AuditMessage(const PartyMessage& m) {
  VFS_RETURN_IF_ERROR(Expect("header", m.header.mechanism(), {Mechanism::kPublic}));
  VFS_RETURN_IF_ERROR(
      Expect("graph", m.graph.mechanism(), {Mechanism::kGaussianLocMrf}));
  VFS_RETURN_IF_ERROR(Expect("marginals", m.marginals.mechanism(),
                             {Mechanism::kGaussianLocMrf}));
  VFS_RETURN_IF_ERROR(
      Expect("theta", m.theta.mechanism(), {Mechanism::kGaussianLocMrf}));
  VFS_RETURN_IF_ERROR(Expect("model_total", m.model_total.mechanism(),
                             {Mechanism::kGaussianLocMrf}));
  if (m.sketches.has_value() == m.fo.has_value()) {
    return absl::FailedPreconditionError(
        "message must carry exactly one encoding");
  }
  if (m.sketches) {
    VFS_RETURN_IF_ERROR(
        Expect("sketches", m.sketches->mechanism(), {Mechanism::kDpfm}));
  }
  if (m.fo) {
    VFS_RETURN_IF_ERROR(Expect("fo", m.fo->mechanism(), {Mechanism::kGrr}));
  }
  // An empty binning spec contains no data-dependent number.
  if (!m.binning.value().attributes.empty()) {
    VFS_RETURN_IF_ERROR(Expect("binning", m.binning.mechanism(),
                               {Mechanism::kLaplaceValueDist}));
  }
  if (m.noisy_count) {
    VFS_RETURN_IF_ERROR(Expect("noisy_count", m.noisy_count->mechanism(),
                               {Mechanism::kLaplaceCount}));
  }
  const auto& theta = m.theta.value();
  for (const auto& block : theta) {
    for (double v : block) {
      if (std::isnan(v)) {
        return absl::FailedPreconditionError("theta contains NaN");
      }
    }
  }
  return absl::OkStatus();
}

absl::Status AuditEnvelope(const std::vector<uint8_t>& bytes) {
  VFS_ASSIGN_OR_RETURN(std::vector<SectionInfo> sections, ListSections(bytes));
  for (const SectionInfo& s : sections) {
    if (s.section == Section::kHeader) {
      if (s.mechanism != Mechanism::kPublic) {
        return absl::FailedPreconditionError("header must be public");
      }
      continue;
    }
    if (s.section == Section::kBinning && s.payload_bytes == 8) continue;
    if (!IsPrivate(s.mechanism)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "section ", static_cast<int>(s.section), " is not tagged with a ",
          "private mechanism"));
    }
  }
  return absl::OkStatus();
}

int64_t EncodingEntryCount(const PartyMessage& m) {
  if (m.sketches) return m.sketches->value().EntryCount();
  if (m.fo) return m.fo->value().num_rows;
  return 0;
}

nlohmann::json ToDebugJson(const PartyMessage& m) {
  nlohmann::json j;
  const MessageHeader& h = m.header.value();
  j["party_id"] = h.party_id;
  j["global_d"] = h.global_d;
  j["encoder"] = h.encoder == EncoderKind::kSketch ? "sketch" : "fo";
  nlohmann::json attrs = nlohmann::json::array();
  for (const PartyAttribute& a : h.attributes) {
    attrs.push_back({{"id", a.id}, {"name", a.name}, {"domain", a.domain_size}});
  }
  j["attributes"] = attrs;
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : m.graph.value().Edges()) edges.push_back({a, b});
  j["graph"] = {{"mechanism", MechanismName(m.graph.mechanism())},
                {"edges", edges}};
  nlohmann::json margs = nlohmann::json::array();
  for (const Marginal& mg : m.marginals.value()) {
    margs.push_back(std::vector<int>(mg.attributes().begin(),
                                     mg.attributes().end()));
  }
  int64_t theta_size = 0;
  for (const auto& block : m.theta.value()) theta_size += block.size();
  j["model"] = {{"mechanism", MechanismName(m.theta.mechanism())},
                {"marginals", margs},
                {"theta_entries", theta_size},
                {"total", m.model_total.value()}};
  if (m.sketches) {
    const SketchSet& s = m.sketches->value();
    j["encoding"] = {{"mechanism", MechanismName(m.sketches->mechanism())},
                     {"gamma", s.params.gamma},
                     {"t", s.params.t},
                     {"eps_prime", s.params.eps_prime},
                     {"k_p", s.params.k_p},
                     {"alpha_min", s.params.alpha_min},
                     {"entries", s.EntryCount()}};
  }
  if (m.fo) {
    const FoEncodedData& f = m.fo->value();
    j["encoding"] = {{"mechanism", MechanismName(m.fo->mechanism())},
                     {"eps_prime", f.eps_prime},
                     {"rows", f.num_rows}};
  }
  nlohmann::json binned = nlohmann::json::array();
  for (const BinnedAttribute& a : m.binning.value().attributes) {
    binned.push_back({{"id", a.attribute}, {"bins", a.map.bins}});
  }
  j["binning"] = {{"mechanism", MechanismName(m.binning.mechanism())},
                  {"bin_count", m.binning.value().bin_count},
                  {"attributes", binned}};
  if (m.noisy_count) {
    j["noisy_count"] = {
        {"mechanism", MechanismName(m.noisy_count->mechanism())},
        {"value", m.noisy_count->value()}};
  }
  return j;
}

}  // namespace vfsynth
