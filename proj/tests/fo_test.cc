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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "vfsynth/core/dataset.h"
#include "vfsynth/fo/encoder.h"
#include "vfsynth/fo/fo.h"
#include "vfsynth/privacy/accounting.h"

namespace vfsynth {
namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix Invert(Matrix a) {
  const size_t n = a.size();
  Matrix inv(n, std::vector<double>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const double d = a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// Explicit transition matrix of two independent GRR channels, entry
// [observed][true].
Matrix KroneckerGrr(int u, double eps) {
  const double e = std::exp(eps);
  const double p = e / (e + u - 1), q = 1 / (e + u - 1);
  Matrix m(u * u, std::vector<double>(u * u));
  for (int o = 0; o < u * u; ++o) {
    for (int t = 0; t < u * u; ++t) {
      m[o][t] = (o / u == t / u ? p : q) * (o % u == t % u ? p : q);
    }
  }
  return m;
}

TEST(GrrTest, KeepProbability) {
  Rng rng(1);
  int kept = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) kept += GrrPerturb(1, 2, std::log(3.0), rng).value() == 1;
  EXPECT_NEAR(static_cast<double>(kept) / n, 0.75, 0.01);
}

TEST(GrrTest, Limits) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(GrrPerturb(3, 5, INFINITY, rng).value(), 3);
  }
  std::vector<int> counts(5, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) counts[GrrPerturb(3, 5, 0.0, rng).value()]++;
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / n, 0.2, 0.01);
  EXPECT_FALSE(GrrPerturb(5, 5, 1.0, rng).ok());
  EXPECT_FALSE(GrrPerturb(-1, 5, 1.0, rng).ok());
}

TEST(GrrTest, MatrixRowsSumToOne) {
  for (int u : {2, 3, 10}) {
    for (double eps : {0.01, 1.0, 5.0}) {
      const GrrProbabilities p = GrrProbabilitiesFor(eps, u);
      EXPECT_NEAR(p.keep + (u - 1) * p.other, 1.0, 1e-12);
      EXPECT_GT(p.keep, p.other);
    }
  }
}

Dataset FixedTwoByFour(int n) {
  const Schema s = Schema::Create({{"a", 4}, {"b", 4}}).value();
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < n; ++r) {
    // Skewed, correlated but deterministic.
    const int a = (r * 7) % 10 < 5 ? 0 : (r % 3) + 1;
    const int b = (a + (r % 5 == 0 ? 1 : 0)) % 4;
    rows.push_back({a, b});
  }
  return Dataset::FromRows(s, rows).value();
}

TEST(LocEncFoTest, InfiniteEpsilonIsIdentity) {
  const Dataset d = FixedTwoByFour(100);
  Rng rng(3);
  const FoEncodedData e = LocEncFo(d, {INFINITY, 0}, 2, rng, nullptr).value();
  EXPECT_EQ(e.values, d.values());
  const ContingencyHistogram h = CarEstFo(Marginal({0, 1}), e).value();
  EXPECT_EQ(h.cells(), ComputeHistogram(d, Marginal({0, 1})).value().cells());
}

TEST(LocEncFoTest, ConsumesOneDrawPerCell) {
  const Dataset d = FixedTwoByFour(123);
  Rng rng(4), reference(4);
  ASSERT_TRUE(LocEncFo(d, {1.0, 1e-5}, 2, rng, nullptr).ok());
  reference.discard(123 * 2);
  EXPECT_EQ(rng(), reference());
}

TEST(LocEncFoTest, RecordsShare) {
  const Dataset d = FixedTwoByFour(10);
  Rng rng(4);
  SpendLedger ledger({1.0, 1e-5});
  ASSERT_TRUE(LocEncFo(d, {0.5, 1e-5}, 4, rng, &ledger).ok());
  EXPECT_DOUBLE_EQ(ledger.TotalEpsilon(), 0.25);
  EXPECT_EQ(ledger.entries()[0].rule, "fo-min-bound");
  const FoEncodedData e = LocEncFo(d, {0.5, 1e-5}, 4, rng, nullptr).value();
  EXPECT_DOUBLE_EQ(FoComposedEpsilon(e.eps_prime[0], 4, 1e-5), 0.5);
}

TEST(LocEncFoTest, BinaryMarginalsFollowClosedForm) {
  const int n = 20000, d = 16;
  std::vector<Attribute> attrs;
  for (int j = 0; j < d; ++j) attrs.push_back({"x" + std::to_string(j), 2});
  const Schema s = Schema::Create(attrs).value();
  std::vector<std::vector<int>> rows(n, std::vector<int>(d));
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < d; ++j) rows[r][j] = (r % (j + 2)) == 0;
  }
  const Dataset data = Dataset::FromRows(s, rows).value();
  Rng rng(5);
  const FoEncodedData e = LocEncFo(data, {4.0, 1e-5}, d, rng, nullptr).value();
  const double eps = e.eps_prime[0];
  const double p = std::exp(eps) / (std::exp(eps) + 1);
  for (int j = 0; j < d; ++j) {
    double t = 0, observed = 0;
    for (int r = 0; r < n; ++r) {
      t += rows[r][j];
      observed += e.values[r * d + j];
    }
    const double expected = p * t + (1 - p) * (n - t);
    EXPECT_NEAR(observed, expected, 4 * std::sqrt(n * p * (1 - p)));
  }
}

TEST(CarEstFoTest, MatchesExplicitInverse) {
  const Dataset d = FixedTwoByFour(2000);
  Rng rng(6);
  const double eps = 1.0;
  FoEncodedData e = LocEncFo(d, {1.0, 1e-5}, 2, rng, nullptr).value();
  e.eps_prime = {eps, eps};
  const ContingencyHistogram est = CarEstFo(Marginal({0, 1}), e).value();
  std::vector<double> raw(16, 0);
  for (int64_t r = 0; r < e.num_rows; ++r) {
    raw[e.values[r * 2] * 4 + e.values[r * 2 + 1]] += 1;
  }
  const Matrix inv = Invert(KroneckerGrr(4, eps));
  double sum = 0;
  for (int i = 0; i < 16; ++i) {
    double x = 0;
    for (int j = 0; j < 16; ++j) x += inv[i][j] * raw[j];
    EXPECT_NEAR(est[i], x, 1e-8);
    sum += est[i];
  }
  EXPECT_NEAR(sum, 2000, 1e-8);
}

TEST(CarEstFoTest, SingularTransitionRejected) {
  FoEncodedData e;
  e.attributes = {0};
  e.domain_sizes = {3};
  e.eps_prime = {0.0};
  e.num_rows = 1;
  e.values = {1};
  EXPECT_FALSE(CarEstFo(Marginal({0}), e).ok());
  EXPECT_FALSE(CarEstFo(Marginal({1}), e).ok());
}

TEST(CarEstFoTest, UnbiasedAndVarianceGrowsWithArity) {
  const int n = 10000, runs = 200;
  const double eps = 1.0;
  const Dataset d = FixedTwoByFour(n);
  const ContingencyHistogram truth2 =
      ComputeHistogram(d, Marginal({0, 1})).value();
  std::vector<double> sum2(16, 0), sq2(16, 0), sum1(4, 0), sq1(4, 0);
  for (int run = 0; run < runs; ++run) {
    Rng rng(1000 + run);
    FoEncodedData e = LocEncFo(d, {1.0, 1e-5}, 2, rng, nullptr).value();
    e.eps_prime = {eps, eps};
    const ContingencyHistogram h2 = CarEstFo(Marginal({0, 1}), e).value();
    const ContingencyHistogram h1 = CarEstFo(Marginal({0}), e).value();
    for (int i = 0; i < 16; ++i) {
      sum2[i] += h2[i];
      sq2[i] += h2[i] * h2[i];
    }
    for (int i = 0; i < 4; ++i) {
      sum1[i] += h1[i];
      sq1[i] += h1[i] * h1[i];
    }
  }
  int within = 0;
  double var2 = 0, var1 = 0;
  for (int i = 0; i < 16; ++i) {
    const double mean = sum2[i] / runs;
    const double var = (sq2[i] - runs * mean * mean) / (runs - 1);
    var2 += var / 16;
    within += std::abs(mean - truth2[i]) <= 3 * std::sqrt(var / runs);
  }
  for (int i = 0; i < 4; ++i) {
    const double mean = sum1[i] / runs;
    var1 += (sq1[i] - runs * mean * mean) / (runs - 1) / 4;
  }
  EXPECT_GE(within, 15);
  // Each extra attribute multiplies the variance by roughly 1 / (p - q)^2
  // divided by the domain size; here 1 / (4 * 0.3^2) ~ 2.8.
  EXPECT_GT(var2, 1.5 * var1);
}

TEST(MergeFoTest, ConcatenatesColumns) {
  const Dataset d = FixedTwoByFour(50);
  Rng rng(7);
  const FoEncodedData a =
      LocEncFo(d.Project({0}).value(), {INFINITY, 0}, 2, rng, nullptr).value();
  const FoEncodedData b =
      LocEncFo(d.Project({1}).value(), {INFINITY, 0}, 2, rng, nullptr).value();
  const FoEncodedData m = MergeFo({b, a}).value();
  EXPECT_EQ(m.attributes, std::vector<int>({0, 1}));
  EXPECT_EQ(m.values, d.values());
  FoEncodedData short_b = b;
  short_b.num_rows = 10;
  EXPECT_FALSE(MergeFo({a, short_b}).ok());
}

}  // namespace
}  // namespace vfsynth
