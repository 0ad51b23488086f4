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

#include "vfsynth/sketch/sketch.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "absl/strings/str_cat.h"
#include "vfsynth/core/status_macros.h"

namespace vfsynth {

absl::StatusOr<SketchParams> SketchParams::Create(
    double gamma, int t, double eps_prime, std::vector<uint64_t> key_ids) {
  if (!(gamma > 0) || !(gamma < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must lie in (0, 1), got ", gamma));
  }
  if (t < 1) return absl::InvalidArgumentError("t must be positive");
  if (!(eps_prime > 0) || !std::isfinite(eps_prime)) {
    return absl::InvalidArgumentError(
        absl::StrCat("per-repeat epsilon must be positive, got ", eps_prime));
  }
  if (static_cast<int>(key_ids.size()) != t) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", t, " key ids, got ", key_ids.size()));
  }
  if (std::set<uint64_t>(key_ids.begin(), key_ids.end()).size() !=
      key_ids.size()) {
    return absl::InvalidArgumentError("key ids must be distinct");
  }
  SketchParams p;
  p.gamma = gamma;
  p.t = t;
  p.eps_prime = eps_prime;
  p.k_p = static_cast<int64_t>(std::ceil(1.0 / std::expm1(eps_prime)));
  p.alpha_min = static_cast<int>(
      std::ceil(-std::log(-std::expm1(-eps_prime)) / std::log1p(gamma)));
  p.key_ids = std::move(key_ids);
  return p;
}

const AttributeSketch* SketchSet::Find(int attribute) const {
  for (const AttributeSketch& a : attributes) {
    if (a.attribute == attribute) return &a;
  }
  return nullptr;
}

int64_t SketchSet::EntryCount() const {
  int64_t n = 0;
  for (const AttributeSketch& a : attributes) {
    n += static_cast<int64_t>(a.domain_size) * params.t;
  }
  return n;
}

absl::StatusOr<uint32_t> MergeMax(std::span<const uint32_t> alphas) {
  if (alphas.empty()) return absl::InvalidArgumentError("nothing to merge");
  return *std::max_element(alphas.begin(), alphas.end());
}

absl::StatusOr<SketchSet> MergeSketchSets(const std::vector<SketchSet>& sets) {
  if (sets.empty()) return absl::InvalidArgumentError("no sketch sets");
  SketchSet out;
  out.params = sets[0].params;
  for (const SketchSet& s : sets) {
    if (s.params.t != out.params.t || s.params.key_ids != out.params.key_ids) {
      return absl::InvalidArgumentError(
          "sketch sets were built with different repeats or hash keys");
    }
    if (s.params.gamma != out.params.gamma ||
        s.params.eps_prime != out.params.eps_prime) {
      return absl::InvalidArgumentError(
          "sketch sets were built with different gamma or epsilon");
    }
    for (const AttributeSketch& a : s.attributes) {
      auto it = std::find_if(
          out.attributes.begin(), out.attributes.end(),
          [&](const AttributeSketch& b) { return b.attribute == a.attribute; });
      if (it == out.attributes.end()) {
        out.attributes.push_back(a);
        continue;
      }
      if (it->domain_size != a.domain_size) {
        return absl::InvalidArgumentError(absl::StrCat(
            "attribute ", a.attribute, " has inconsistent domain sizes"));
      }
      for (size_t i = 0; i < a.alphas.size(); ++i) {
        it->alphas[i] = std::max(it->alphas[i], a.alphas[i]);
      }
    }
  }
  std::sort(out.attributes.begin(), out.attributes.end(),
            [](const AttributeSketch& a, const AttributeSketch& b) {
              return a.attribute < b.attribute;
            });
  return out;
}

absl::StatusOr<double> HarmonicMean(std::span<const double> values) {
  if (values.empty()) return absl::InvalidArgumentError("empty list");
  double inv = 0;
  for (double v : values) {
    if (!(v > 0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("harmonic mean needs positive values, got ", v));
    }
    inv += 1.0 / v;
  }
  return static_cast<double>(values.size()) / inv;
}

absl::StatusOr<double> EstimateUnionCardinality(
    std::span<const uint32_t> per_repeat_max, const SketchParams& params,
    int64_t sketch_count) {
  const double log_base = std::log1p(params.gamma);
  std::vector<double> scaled(per_repeat_max.size());
  for (size_t h = 0; h < per_repeat_max.size(); ++h) {
    scaled[h] = std::exp(per_repeat_max[h] * log_base);
  }
  VFS_ASSIGN_OR_RETURN(double hm, HarmonicMean(scaled));
  return params.gamma / log_base * hm -
         static_cast<double>(sketch_count) * static_cast<double>(params.k_p);
}

absl::StatusOr<ContingencyHistogram> CarEstSketch(const Marginal& marginal,
                                                  const SketchSet& set,
                                                  double n_hat) {
  const int t = set.params.t;
  std::vector<const AttributeSketch*> sketches;
  std::vector<int> sizes;
  int64_t complement_sketches = 0;
  for (int a : marginal.attributes()) {
    const AttributeSketch* s = set.Find(a);
    if (s == nullptr) {
      return absl::NotFoundError(
          absl::StrCat("no sketches for attribute ", a));
    }
    if (static_cast<int64_t>(s->alphas.size()) !=
        static_cast<int64_t>(s->domain_size) * t) {
      return absl::InvalidArgumentError(
          absl::StrCat("sketch matrix of attribute ", a, " is incomplete"));
    }
    sketches.push_back(s);
    sizes.push_back(s->domain_size);
    complement_sketches += s->domain_size - 1;
  }
  // Per attribute and repeat: the largest value, where it sits, and the
  // runner-up. The max over all values but v is then O(1).
  const int l = marginal.arity();
  std::vector<uint32_t> best(l * t), second(l * t);
  std::vector<int> arg(l * t);
  for (int i = 0; i < l; ++i) {
    for (int h = 0; h < t; ++h) {
      uint32_t b1 = 0, b2 = 0;
      int a1 = -1;
      for (int v = 0; v < sizes[i]; ++v) {
        const uint32_t x = sketches[i]->at(v, h, t);
        if (a1 < 0 || x > b1) {
          b2 = b1;
          b1 = x;
          a1 = v;
        } else if (x > b2) {
          b2 = x;
        }
      }
      best[i * t + h] = b1;
      second[i * t + h] = b2;
      arg[i * t + h] = a1;
    }
  }
  ContingencyHistogram hist(marginal, sizes);
  std::vector<uint32_t> maxima(t);
  for (int64_t c = 0; c < hist.size(); ++c) {
    const std::vector<int> tuple = CellTuple(c, sizes);
    for (int h = 0; h < t; ++h) {
      uint32_t m = 0;
      for (int i = 0; i < l; ++i) {
        const int k = i * t + h;
        m = std::max(m, arg[k] == tuple[i] ? second[k] : best[k]);
      }
      maxima[h] = m;
    }
    VFS_ASSIGN_OR_RETURN(
        double disagreeing,
        EstimateUnionCardinality(maxima, set.params, complement_sketches));
    hist[c] = std::max(n_hat - disagreeing, 0.0);
  }
  return hist;
}

}  // namespace vfsynth
