// Copyright 2026 The dpdsg Authors.
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
#include <sstream>

#include "dpdsg/continual_counter.h"
#include "dpdsg/noise.h"
#include "dpdsg/privacy_ledger.h"
#include "dpdsg/sparse_vector.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpdsg {
namespace {

using ::testing::DoubleNear;
using ::testing::HasSubstr;

TEST(NoiseSourceTest, ZeroNoiseStillDrawsReproducibleUniforms) {
  NoiseSource a(42, /*zero_noise=*/true);
  NoiseSource b(42, /*zero_noise=*/true);
  EXPECT_EQ(a.Laplace(5.0), 0.0);
  b.Laplace(5.0);
  // Both consumed one draw for the Laplace call.
  EXPECT_EQ(a.Uniform(), b.Uniform());
}

TEST(NoiseSourceTest, ForksAreIndependentOfParentState) {
  NoiseSource root(7);
  NoiseSource f1 = root.Fork("svt");
  root.Uniform();
  NoiseSource f2 = root.Fork("svt");
  EXPECT_EQ(f1.Uniform(), f2.Uniform());
  NoiseSource other = NoiseSource(7).Fork("sample");
  EXPECT_NE(NoiseSource(7).Fork("svt").Uniform(), other.Uniform());
}

TEST(NoiseSourceTest, UniformIndexStaysInRange) {
  NoiseSource src(3);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[src.UniformIndex(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(NoiseSourceTest, OverrideUniformPinsDraws) {
  NoiseSource src(1);
  src.OverrideUniform(0.75);
  EXPECT_EQ(src.Uniform(), 0.75);
  src.OverrideUniform(std::nullopt);
  EXPECT_NE(src.Uniform(), 0.75);
}

TEST(LaplaceTest, RejectsBadScale) {
  NoiseSource src(1);
  EXPECT_FALSE(SampleLaplace(0.0, src).ok());
  EXPECT_FALSE(SampleLaplace(-1.0, src).ok());
  EXPECT_FALSE(SampleLaplace(std::nan(""), src).ok());
  NoiseSource zero(1, true);
  EXPECT_EQ(*SampleLaplace(2.5, zero), 0.0);
}

TEST(LaplaceTest, MomentsMatchScale) {
  // E|X| = b and the median is 0.
  NoiseSource src(12345);
  constexpr int kN = 40000;
  double abs_sum = 0.0;
  int positive = 0;
  for (int i = 0; i < kN; ++i) {
    const double x = src.Laplace(2.0);
    abs_sum += std::fabs(x);
    positive += x > 0;
  }
  // Standard error of the mean |X| is b / sqrt(n) = 0.01.
  EXPECT_NEAR(abs_sum / kN, 2.0, 0.05);
  EXPECT_NEAR(static_cast<double>(positive) / kN, 0.5, 0.01);
}

TEST(SparseVectorTest, ZeroNoiseComparisons) {
  NoiseSource src(1, true);
  SparseVectorInstance svt = *SparseVectorInstance::Create(0.1, 1.0, src);
  EXPECT_EQ(svt.threshold_noise(), 0.0);
  const SvtAnswer below = *svt.Query(2.0, 3.0, src);
  EXPECT_FALSE(below.above);
  EXPECT_FALSE(svt.aborted());
  const SvtAnswer above = *svt.Query(5.0, 3.0, src);
  EXPECT_TRUE(above.above);
  EXPECT_EQ(above.estimate, 5.0);
  EXPECT_TRUE(svt.aborted());
  EXPECT_EQ(svt.Query(1.0, 0.0, src).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(SparseVectorTest, BoundaryCountsAsAbove) {
  NoiseSource src(1, true);
  SparseVectorInstance svt = *SparseVectorInstance::Create(0.1, 1.0, src);
  const SvtAnswer a = *svt.Query(4.0, 4.0, src);
  EXPECT_TRUE(a.above);
  EXPECT_EQ(a.estimate, 4.0);
}

TEST(SparseVectorTest, NoiseScales) {
  NoiseSource src(1);
  SparseVectorInstance a = *SparseVectorInstance::Create(0.3, 1.0, src);
  EXPECT_DOUBLE_EQ(a.threshold_noise_scale(), 10.0);
  EXPECT_DOUBLE_EQ(a.query_noise_scale(), 20.0);
  SparseVectorInstance b = *SparseVectorInstance::Create(0.1, 2.0, src);
  EXPECT_DOUBLE_EQ(b.threshold_noise_scale(), 60.0);
  EXPECT_FALSE(SparseVectorInstance::Create(0.0, 1.0, src).ok());
  EXPECT_FALSE(SparseVectorInstance::Create(1.0, 0.5, src).ok());
}

// The bounded route must reproduce the plain route answer for answer and
// draw for draw, whatever the bounds are.
TEST(SparseVectorTest, BoundedQueryMatchesPlainQuery) {
  NoiseSource values(77);
  for (int trial = 0; trial < 200; ++trial) {
    NoiseSource src_a(trial);
    NoiseSource src_b(trial);
    SparseVectorInstance a = *SparseVectorInstance::Create(0.5, 1.0, src_a);
    SparseVectorInstance b = *SparseVectorInstance::Create(0.5, 1.0, src_b);
    for (int q = 0; q < 30 && !a.aborted(); ++q) {
      const double v = values.Uniform() * 40.0;
      const double lo = v - values.Uniform() * 5.0;
      const double hi = v + values.Uniform() * 5.0;
      const double threshold = 20.0 + values.Uniform() * 30.0;
      int evaluations = 0;
      const SvtAnswer plain = *a.Query(v, threshold, src_a);
      const SvtAnswer bounded = *b.QueryBounded(
          lo, hi,
          [&] {
            ++evaluations;
            return v;
          },
          threshold, src_b);
      ASSERT_EQ(plain.above, bounded.above);
      ASSERT_EQ(plain.estimate, bounded.estimate);
      EXPECT_LE(evaluations, 1);
    }
    EXPECT_EQ(src_a.Uniform(), src_b.Uniform());
  }
}

TEST(PrivacyLedgerTest, AmplificationRule) {
  PrivacyLedger ledger(1.0, 1e-5);
  const LedgerEntry full =
      *ledger.Record(MechanismKind::kSvtEpoch, 1.0, 0.1, 0.0, 0);
  EXPECT_DOUBLE_EQ(full.amplified_eps, 0.1);
  const LedgerEntry sub =
      *ledger.Record(MechanismKind::kStaticCall, 0.3, 0.1, 1e-6, 5);
  EXPECT_DOUBLE_EQ(sub.amplified_eps, 0.06);
  EXPECT_DOUBLE_EQ(sub.amplified_delta, 3e-7);
  EXPECT_FALSE(ledger.Record(MechanismKind::kSvtEpoch, 0.0, 0.1, 0.0, 6).ok());
  EXPECT_FALSE(ledger.Record(MechanismKind::kSvtEpoch, 1.5, 0.1, 0.0, 6).ok());
  EXPECT_EQ(ledger.entries().size(), 2u);
}

TEST(PrivacyLedgerTest, TotalsPerFamily) {
  PrivacyLedger empty(1.0, 1e-5);
  EXPECT_EQ(empty.Totals().eps_svt, 0.0);
  EXPECT_EQ(empty.Totals().eps_static, 0.0);
  EXPECT_EQ(empty.Totals().delta, 0.0);

  PrivacyLedger ledger(1.0, 1e-5);
  double expected = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double q = std::pow(1.5, -i);
    ledger.Record(MechanismKind::kSvtEpoch, q, 0.1, 0.0, i).IgnoreError();
    expected += q >= 1.0 ? 0.1 : 2.0 * q * 0.1;
  }
  EXPECT_DOUBLE_EQ(ledger.Totals().eps_svt, expected);
  EXPECT_THAT(ledger.Totals().eps_svt, DoubleNear(0.3222, 1e-4));
  EXPECT_EQ(ledger.Totals().eps_static, 0.0);

  PrivacyLedger statics(1.0, 1e-5);
  statics.Record(MechanismKind::kStaticCall, 1.0, 0.1, 2e-7, 1).IgnoreError();
  statics.Record(MechanismKind::kStaticCall, 1.0, 0.1, 2e-7, 2).IgnoreError();
  EXPECT_DOUBLE_EQ(statics.Totals().delta, 4e-7);
}

TEST(PrivacyLedgerTest, StrictModeRefusesOverspend) {
  PrivacyLedger monitor(0.25, 1e-5);
  PrivacyLedger strict(0.25, 1e-5, /*strict=*/true);
  for (int i = 0; i < 2; ++i) {
    EXPECT_TRUE(monitor.Record(MechanismKind::kSvtEpoch, 1.0, 0.1, 0, i).ok());
    EXPECT_TRUE(strict.Record(MechanismKind::kSvtEpoch, 1.0, 0.1, 0, i).ok());
  }
  EXPECT_TRUE(monitor.Record(MechanismKind::kSvtEpoch, 1.0, 0.1, 0, 2).ok());
  EXPECT_FALSE(monitor.WithinBudget());
  EXPECT_EQ(strict.Record(MechanismKind::kSvtEpoch, 1.0, 0.1, 0, 2)
                .status()
                .code(),
            absl::StatusCode::kResourceExhausted);
  EXPECT_TRUE(strict.WithinBudget());
}

TEST(PrivacyLedgerTest, CsvExport) {
  PrivacyLedger ledger(1.0, 1e-5);
  ledger.Record(MechanismKind::kStaticCall, 0.5, 0.2, 1e-6, 17).IgnoreError();
  std::ostringstream out;
  ledger.WriteCsv(out);
  EXPECT_THAT(out.str(), HasSubstr("timestep,kind,q,base_eps,base_delta,"
                                   "amplified_eps,amplified_delta\n"));
  EXPECT_THAT(out.str(), HasSubstr("17,static-call,0.5,"));
}

TEST(ContinualCounterTest, ZeroNoiseGivesExactPrefixSums) {
  ContinualCounter c =
      *ContinualCounter::Create(1.0, 100, NoiseSource(3, /*zero_noise=*/true));
  double total = 0.0;
  for (int t = 1; t <= 100; ++t) {
    const double x = (t % 3 == 0) ? 0.0 : 1.0;
    total += x;
    EXPECT_EQ(*c.Add(x), total) << "t=" << t;
  }
  EXPECT_EQ(c.Add(1.0).status().code(), absl::StatusCode::kOutOfRange);
}

TEST(ContinualCounterTest, ErrorGrowsLikeLevels) {
  ContinualCounter c = *ContinualCounter::Create(1.0, 1 << 12, NoiseSource(9));
  EXPECT_EQ(c.levels(), 13);
  double worst = 0.0;
  for (int t = 1; t <= (1 << 12); ++t) {
    worst = std::max(worst, std::fabs(*c.Add(1.0) - t));
  }
  // At most 13 Laplace(13) terms per output; 30 scales is far out in the tail.
  EXPECT_LT(worst, 30 * c.noise_scale());
  EXPECT_GT(worst, 0.0);
}

}  // namespace
}  // namespace dpdsg
