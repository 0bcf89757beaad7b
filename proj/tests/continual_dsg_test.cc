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

#include "dpdsg/continual_dsg.h"

#include <cmath>
#include <memory>

#include "absl/container/flat_hash_set.h"
#include "dpdsg/densest.h"
#include "dpdsg/generators.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpdsg {
namespace {

using ::dpdsg::testing::E;
using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

std::shared_ptr<const StaticDsgSolver> Oracle() {
  return std::make_shared<OracleSolver>();
}

std::unique_ptr<PrivateContinualDsg> MakeState(const DsgParams& params,
                                               const ContinualOptions& options,
                                               std::uint64_t seed,
                                               bool zero_noise) {
  absl::StatusOr<std::unique_ptr<PrivateContinualDsg>> s =
      PrivateContinualDsg::Create(params, options, Oracle(),
                                  NoiseSource(seed, zero_noise));
  EXPECT_TRUE(s.ok()) << s.status();
  return s.ok() ? *std::move(s) : nullptr;
}

TEST(FormulaTest, Upsilon) {
  // log_1.5(12) = 6.1285..., plus 1.5 / 0.25 = 6.
  EXPECT_THAT(Upsilon(0.25), DoubleNear(12.1285, 1e-4));
  EXPECT_THAT(Upsilon(0.5), DoubleNear(std::log2(6.0) + 4.0, 1e-12));
}

TEST(FormulaTest, DecayBound) {
  EXPECT_EQ(DecayBound(0.5, 1), 1.0);
  EXPECT_EQ(DecayBound(0.5, 3), 1.0);  // 3 / (0.5 * 4) clamps.
  EXPECT_EQ(DecayBound(0.5, 4), 0.75);
  EXPECT_EQ(DecayBound(0.5, 7), 0.09375);
  EXPECT_THAT(DecayBound(0.25, 9), DoubleNear(12.0 / std::pow(1.5, 8), 1e-12));
}

TEST(ResolveParamsTest, KappaFromOracleContract) {
  DsgParams p;
  p.n = 1024;
  p.eps = 1.0;
  p.eta = 0.25;
  const ResolvedParams r = *ResolveParams(p, OracleSolver().contract());
  EXPECT_THAT(r.kappa, DoubleNear(168.14, 0.01));
  EXPECT_EQ(r.overlay_half_degree, 169);
  EXPECT_GE(r.kappa, 2 * r.upsilon * std::log(1024.0) - 1e-9);
  EXPECT_FALSE(r.guarantee_mode);
  EXPECT_THAT(r.warnings, ElementsAre(HasSubstr("eta=0.25")));
}

TEST(ResolveParamsTest, ZetaTermCanDominate) {
  DsgParams p;
  p.n = 100;
  p.eta = 0.1;
  StaticSolverContract c;
  c.name = "fixed";
  c.zeta = [](VertexId, double, double, double) { return 1e4; };
  const ResolvedParams r = *ResolveParams(p, c);
  EXPECT_EQ(r.kappa, 1e4);
  EXPECT_TRUE(r.guarantee_mode);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ResolveParamsTest, RejectsInvalid) {
  const StaticSolverContract c = OracleSolver().contract();
  DsgParams p;
  p.n = 1;
  EXPECT_FALSE(ResolveParams(p, c).ok());
  p.n = 10;
  p.eps = 0.0;
  EXPECT_FALSE(ResolveParams(p, c).ok());
  p.eps = 1.0;
  p.eta = 0.0;
  EXPECT_FALSE(ResolveParams(p, c).ok());
  p.eta = 0.1;
  p.delta = 1.0;
  EXPECT_FALSE(ResolveParams(p, c).ok());
}

TEST(PrivateContinualDsgTest, ConstructorState) {
  DsgParams p;
  p.n = 1024;
  p.eps = 1.0;
  p.eta = 0.25;
  auto s = MakeState(p, {}, 1, false);
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->sample_size(), 1024 * 169);
  EXPECT_EQ(s->rho_dp(), s->params().kappa);
  EXPECT_EQ(s->q(), 1.0);
  EXPECT_EQ(s->s_dp()->size(), 1024u);
  ASSERT_EQ(s->ledger().entries().size(), 1u);
  EXPECT_EQ(s->ledger().entries()[0].kind, MechanismKind::kSvtEpoch);
  EXPECT_EQ(s->ledger().entries()[0].q, 1.0);
  EXPECT_TRUE(s->CheckSampleConsistency().ok());
  // Literal policy: overlay edges are retained with value 1.
  EXPECT_EQ(s->retention(s->overlay().edges[0]), 1.0);
}

TEST(PrivateContinualDsgTest, ZeroKappaNeedsForcedRate) {
  DsgParams p;
  p.n = 4;
  p.kappa_override = 0.0;
  EXPECT_FALSE(
      PrivateContinualDsg::Create(p, {}, Oracle(), NoiseSource(1)).ok());
  ContinualOptions o;
  o.force_q1 = true;
  EXPECT_TRUE(PrivateContinualDsg::Create(p, o, Oracle(), NoiseSource(1)).ok());
}

// Deterministic mode on a triangle, worked by hand: thresholds are
// q (1 + 2 eta) rho_dp = 1.5 rho_dp.
TEST(PrivateContinualDsgTest, TriangleHandTrace) {
  DsgParams p;
  p.n = 4;
  p.eta = 0.25;
  p.kappa_override = 0.0;
  ContinualOptions o;
  o.force_q1 = true;
  auto s = MakeState(p, o, 1, true);
  ASSERT_NE(s, nullptr);

  StepRecord r1 = *s->ProcessEdge(Update::Insert(E(0, 1)));
  EXPECT_TRUE(r1.released);
  EXPECT_EQ(r1.rho_dp, 0.5);
  EXPECT_THAT(*r1.release->s_dp, ElementsAre(0, 1));

  // Path 0-1-2 has density 2/3 < 0.75.
  StepRecord r2 = *s->ProcessEdge(Update::Insert(E(1, 2)));
  EXPECT_FALSE(r2.released);
  EXPECT_EQ(r2.rho_dp, 0.5);

  StepRecord r3 = *s->ProcessEdge(Update::Insert(E(0, 2)));
  EXPECT_TRUE(r3.released);
  EXPECT_EQ(r3.rho_dp, 1.0);
  EXPECT_THAT(*r3.release->s_dp, ElementsAre(0, 1, 2));
  EXPECT_EQ(s->release_index(), 2);
  EXPECT_EQ(s->q(), 1.0);
}

TEST(PrivateContinualDsgTest, NoopStillQueriesTheSvt) {
  DsgParams p;
  p.n = 4;
  p.kappa_override = 0.0;
  ContinualOptions o;
  o.force_q1 = true;
  auto s = MakeState(p, o, 1, true);
  ASSERT_NE(s, nullptr);
  // Threshold 0 and r = 0: the empty update alone triggers a release.
  const StepRecord r = *s->ProcessEdge(Update::Noop());
  EXPECT_TRUE(r.released);
  EXPECT_EQ(s->t(), 1);
  EXPECT_EQ(s->sample_size(), 0);
}

TEST(PrivateContinualDsgTest, ModeMismatchIsRejected) {
  DsgParams p;
  p.n = 10;
  auto paper = MakeState(p, {}, 1, false);
  EXPECT_EQ(paper->RunBaselineStep(Update::Noop()).status().code(),
            absl::StatusCode::kFailedPrecondition);
  ContinualOptions o;
  o.mode = Mode::kBaseline;
  auto baseline = MakeState(p, o, 1, false);
  EXPECT_EQ(baseline->ProcessEdge(Update::Noop()).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(baseline->rho_dp(), 0.5);
  EXPECT_EQ(baseline->sample_size(), 0);
}

// Baseline mode with a zero-noise counter gives direct control over q:
// q_t = min(1, K / m_t) with K = C_b n ln n / eta^2 set just above 2.
TEST(PrivateContinualDsgTest, SampleEdgeAndUpdateSample) {
  DsgParams p;
  p.n = 10;
  p.eta = 0.5;
  p.baseline_c = 2.000001 * 0.25 / (10 * std::log(10.0));
  ContinualOptions o;
  o.mode = Mode::kBaseline;
  auto s = MakeState(p, o, 1, true);
  ASSERT_NE(s, nullptr);

  const Edge a = E(0, 1), b = E(2, 3), c = E(4, 5);
  s->OverrideSampleUniform(0.3);
  ASSERT_TRUE(s->RunBaselineStep(Update::Insert(a)).ok());
  s->OverrideSampleUniform(0.9);
  ASSERT_TRUE(s->RunBaselineStep(Update::Insert(b)).ok());
  EXPECT_EQ(s->q(), 1.0);
  EXPECT_EQ(s->retention(b), 0.9);

  // Third insertion: q drops to 2/3 before c is sampled; b is evicted.
  s->OverrideSampleUniform(0.1);
  ASSERT_TRUE(s->RunBaselineStep(Update::Insert(c)).ok());
  EXPECT_THAT(s->q(), DoubleNear(2.0 / 3.0, 1e-6));
  EXPECT_EQ(s->retention(a), 0.3);
  EXPECT_FALSE(s->retention(b).has_value());
  EXPECT_EQ(s->retention(c), 0.1);

  // Re-inserting a stored edge: only the new draw counts.
  s->OverrideSampleUniform(0.75);
  s->SampleEdge(a);
  EXPECT_FALSE(s->retention(a).has_value());
  EXPECT_FALSE(s->sample().HasEdge(a));
  s->OverrideSampleUniform(0.2);
  s->SampleEdge(a);
  EXPECT_EQ(s->retention(a), 0.2);

  // Unchanged q: UpdateSample is a no-op.
  const std::int64_t before = s->sample_size();
  s->UpdateSample();
  EXPECT_EQ(s->sample_size(), before);
  EXPECT_TRUE(s->CheckSampleConsistency().ok());
}

struct RunStats {
  std::int64_t releases = 0;
  double final_q = 1.0;
};

// Steps a noisy paper-mode run and checks the per-step invariants.
RunStats RunAndCheck(PrivateContinualDsg& s, const EdgeStream& stream) {
  RunStats stats;
  double prev_q = s.q();
  std::int64_t prev_index = s.release_index();
  const double kappa = s.params().kappa;
  const double factor = 1.0 + 2.0 * s.params().primaries.eta;
  for (const Update& u : stream.updates) {
    const StepRecord r = *s.ProcessUpdate(u);
    EXPECT_LE(r.q, prev_q);
    EXPECT_TRUE(s.DecayBoundHolds()) << "t=" << r.t;
    EXPECT_TRUE(s.CheckSampleConsistency().ok()) << "t=" << r.t;
    EXPECT_GE(r.rho_dp, kappa);
    EXPECT_EQ(s.release_index(), prev_index + (r.released ? 1 : 0));
    if (r.released) {
      ++stats.releases;
      EXPECT_LE(r.release->q_after, r.release->q_before);
      if (r.release->q_before < 1.0 && r.release->q_after < 1.0) {
        EXPECT_LE(r.release->q_after,
                  r.release->q_before / factor * (1 + 1e-12));
      }
      if (!s.options().force_q1) {
        EXPECT_THAT(r.q, DoubleNear(std::min(1.0, 3 * kappa /
                                                      (r.rho_dp * s.params().primaries.eta)),
                                    1e-12));
      }
    }
    EXPECT_TRUE(s.ledger().WithinBudget());
    prev_q = r.q;
    prev_index = s.release_index();
  }
  stats.final_q = s.q();
  return stats;
}

TEST(PrivateContinualDsgPropertyTest, InvariantsUnderNoise) {
  for (int seed = 0; seed < 8; ++seed) {
    RandomStreamParams sp;
    sp.n = 120;
    sp.m = 2500;
    sp.model = RandomModel::kPlantedClique;
    sp.clique_size = 60;
    const EdgeStream stream = *GenerateRandomStream(sp, seed);
    DsgParams p;
    p.n = 120;
    p.eps = 10.0;
    p.eta = 0.5;
    for (DensifyPolicy policy : {DensifyPolicy::kLiteral, DensifyPolicy::kUniform}) {
      ContinualOptions o;
      o.densify = policy;
      auto s = MakeState(p, o, seed, false);
      ASSERT_NE(s, nullptr);
      const RunStats stats = RunAndCheck(*s, stream);
      EXPECT_GT(stats.releases, 0);
    }
  }
}

TEST(PrivateContinualDsgTest, LiteralPolicyEvictsOverlayOnFirstDecrease) {
  RandomStreamParams sp;
  sp.n = 100;
  sp.m = 1800;
  sp.model = RandomModel::kPlantedClique;
  sp.clique_size = 60;
  const EdgeStream stream = *GenerateRandomStream(sp, 3);
  absl::flat_hash_set<Edge> streamed;
  for (const Update& u : stream.updates) streamed.insert(u.edge());

  DsgParams p;
  p.n = 100;
  p.eps = 10.0;
  p.eta = 0.5;
  p.kappa_override = 2.0;
  for (DensifyPolicy policy : {DensifyPolicy::kLiteral, DensifyPolicy::kUniform}) {
    ContinualOptions o;
    o.densify = policy;
    auto s = MakeState(p, o, 5, false);
    ASSERT_NE(s, nullptr);
    RunAndCheck(*s, stream);
    ASSERT_LT(s->q(), 1.0);
    int kept = 0;
    int untouched = 0;
    for (const Edge& e : s->overlay().edges) {
      if (streamed.contains(e)) continue;
      ++untouched;
      kept += s->sample().HasEdge(e);
    }
    if (policy == DensifyPolicy::kLiteral) {
      EXPECT_EQ(kept, 0);
    } else {
      // Roughly a q-fraction survives.
      EXPECT_GT(kept, 0);
      EXPECT_LT(kept, untouched);
    }
  }
}

TEST(PrivateContinualDsgTest, ForcedRateNeverSubsamples) {
  RandomStreamParams sp;
  sp.n = 80;
  sp.m = 1500;
  sp.model = RandomModel::kPlantedClique;
  sp.clique_size = 50;
  const EdgeStream stream = *GenerateRandomStream(sp, 9);
  DsgParams p;
  p.n = 80;
  p.eps = 10.0;
  p.eta = 0.5;
  ContinualOptions o;
  o.force_q1 = true;
  auto s = MakeState(p, o, 2, false);
  for (const Update& u : stream.updates) ASSERT_TRUE(s->ProcessUpdate(u).ok());
  EXPECT_EQ(s->q(), 1.0);
  const SimpleGraph full = UnionOverlay(ReplayStream(stream), s->overlay().edges);
  EXPECT_EQ(s->sample().num_edges(), full.num_edges());
}

TEST(PrivateContinualDsgTest, PaperLedgerOrder) {
  RandomStreamParams sp;
  sp.n = 100;
  sp.m = 1800;
  sp.model = RandomModel::kPlantedClique;
  sp.clique_size = 60;
  const EdgeStream stream = *GenerateRandomStream(sp, 4);
  DsgParams p;
  p.n = 100;
  p.eps = 10.0;
  p.eta = 0.5;
  auto s = MakeState(p, {}, 8, false);
  std::vector<ReleaseRecord> releases;
  for (const Update& u : stream.updates) {
    StepRecord r = *s->ProcessUpdate(u);
    if (r.release) releases.push_back(*r.release);
  }
  ASSERT_FALSE(releases.empty());
  const auto& entries = s->ledger().entries();
  ASSERT_EQ(entries.size(), 1 + 2 * releases.size());
  for (std::size_t i = 0; i < releases.size(); ++i) {
    // Static call at the rate its input was sampled with, then the new
    // epoch at the rate it will run with.
    const LedgerEntry& call = entries[1 + 2 * i];
    const LedgerEntry& epoch = entries[2 + 2 * i];
    EXPECT_EQ(call.kind, MechanismKind::kStaticCall);
    EXPECT_EQ(call.q, releases[i].q_before);
    EXPECT_EQ(epoch.kind, MechanismKind::kSvtEpoch);
    EXPECT_EQ(epoch.q, releases[i].q_after);
    EXPECT_EQ(call.timestep, releases[i].t);
  }
}

TEST(BaselineTest, QStaysOneWhileCountIsSmall) {
  DsgParams p;
  p.n = 200;
  p.eta = 0.25;
  ContinualOptions o;
  o.mode = Mode::kBaseline;
  auto s = MakeState(p, o, 1, false);
  RandomStreamParams sp;
  sp.n = 200;
  sp.m = 3000;
  const EdgeStream stream = *GenerateRandomStream(sp, 1);
  // n ln n / eta^2 is about 17000 here, far above the stream length.
  for (const Update& u : stream.updates) ASSERT_TRUE(s->ProcessUpdate(u).ok());
  EXPECT_EQ(s->q(), 1.0);
  ASSERT_TRUE(s->Finish().ok());
  EXPECT_TRUE(s->ledger().WithinBudget());
}

TEST(BaselineTest, DoublingTheCountHalvesQ) {
  DsgParams p;
  p.n = 50;
  p.eta = 0.5;
  p.baseline_c = 10.0 * 0.25 / (50 * std::log(50.0));  // K = 10.
  ContinualOptions o;
  o.mode = Mode::kBaseline;
  auto s = MakeState(p, o, 1, true);
  RandomStreamParams sp;
  sp.n = 50;
  sp.m = 40;
  const EdgeStream stream = *GenerateRandomStream(sp, 2);
  std::vector<double> q;
  for (const Update& u : stream.updates) q.push_back(s->ProcessUpdate(u)->q);
  EXPECT_THAT(q[19], DoubleNear(0.5, 1e-12));
  EXPECT_THAT(q[39], DoubleNear(0.25, 1e-12));
}

}  // namespace
}  // namespace dpdsg
