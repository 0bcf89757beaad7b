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

#include "dpdsg/experiment.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dpdsg/densest.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpdsg {
namespace {

using ::dpdsg::testing::StreamOf;
using ::testing::Contains;
using ::testing::Pair;

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig TriangleConfig() {
  ExperimentConfig c;
  c.params.eta = 0.25;
  c.params.kappa_override = 0.0;
  c.options.force_q1 = true;
  c.zero_noise = true;
  c.checkpoint_every = 1;
  return c;
}

TEST(RunExperimentTest, TriangleTrace) {
  const EdgeStream s = StreamOf(4, {{0, 1}, {1, 2}, {0, 2}});
  const ExperimentResult r = *RunExperiment(TriangleConfig(), s);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_TRUE(r.rows[0].released);
  EXPECT_FALSE(r.rows[1].released);
  EXPECT_TRUE(r.rows[2].released);
  EXPECT_EQ(r.rows[0].rho_dp, 0.5);
  EXPECT_EQ(r.rows[2].rho_dp, 1.0);
  EXPECT_EQ(r.rows[1].rho_true, 2.0 / 3.0);
  EXPECT_EQ(r.rows[2].rho_true, 1.0);
  EXPECT_EQ(r.rows[2].s_dp_density_true, 1.0);
  ASSERT_EQ(r.releases.size(), 2u);
  EXPECT_EQ(r.decay_violations, 0);
  EXPECT_EQ(r.consistency_violations, 0);
  EXPECT_THAT(r.metadata, Contains(Pair("releases", "2")));
}

TEST(RunExperimentTest, RejectsBadCheckpointInterval) {
  ExperimentConfig c = TriangleConfig();
  c.checkpoint_every = 0;
  EXPECT_FALSE(RunExperiment(c, StreamOf(4, {{0, 1}})).ok());
}

TEST(RunExperimentTest, ReplayMatchesHarnessTruth) {
  StreamSpec spec;
  spec.generator = "planted-clique";
  spec.n = 60;
  spec.m = 400;
  spec.clique_size = 20;
  const EdgeStream s = *LoadStream(spec, 3);
  ExperimentConfig c;
  c.params.eps = 4.0;
  c.params.eta = 0.5;
  c.checkpoint_every = 37;
  const ExperimentResult r = *RunExperiment(c, s);
  int checked = 0;
  for (const MetricsRow& row : r.rows) {
    if (!row.rho_true_raw) continue;
    const SimpleGraph g = ReplayStream(s, row.t);
    EXPECT_EQ(*row.rho_true_raw, ExactDensest(g).density.ToDouble());
    ++checked;
  }
  EXPECT_GT(checked, 10);
  EXPECT_TRUE(r.ledger.WithinBudget());
  EXPECT_EQ(r.decay_violations, 0);
  EXPECT_EQ(r.consistency_violations, 0);
}

TEST(RunExperimentTest, OutputsAreByteReproducible) {
  StreamSpec spec;
  spec.generator = "hard-instance";
  spec.n = 100;
  const EdgeStream s = *LoadStream(spec, 2);
  ExperimentConfig c;
  c.params.eps = 2.0;
  c.seed = 11;
  const auto base = std::filesystem::path(::testing::TempDir()) / "repro";
  for (const char* sub : {"a", "b"}) {
    const ExperimentResult r = *RunExperiment(c, s);
    DPDSG_ASSERT_OK(WriteExperimentOutputs(r, (base / sub).string()));
  }
  for (const char* f : {"steps.csv", "checkpoints.csv", "releases.txt",
                        "ledger.csv", "metadata.txt"}) {
    const std::string a = Slurp(base / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, Slurp(base / "b" / f)) << f;
  }
  c.seed = 12;
  DPDSG_ASSERT_OK(WriteExperimentOutputs(*RunExperiment(c, s),
                                         (base / "c").string()));
  EXPECT_NE(Slurp(base / "a" / "ledger.csv") + Slurp(base / "a" / "steps.csv"),
            Slurp(base / "c" / "ledger.csv") + Slurp(base / "c" / "steps.csv"));
}

TEST(RunExperimentTest, BaselineRunStaysWithinBudget) {
  StreamSpec spec;
  spec.generator = "erdos-renyi";
  spec.n = 150;
  spec.m = 2000;
  const EdgeStream s = *LoadStream(spec, 5);
  ExperimentConfig c;
  c.params.eps = 1.0;
  c.params.baseline_c = 0.05;
  c.options.mode = Mode::kBaseline;
  c.measure_true_density = false;
  const ExperimentResult r = *RunExperiment(c, s);
  EXPECT_TRUE(r.ledger.WithinBudget());
  EXPECT_TRUE(r.first_q_below_one.has_value());
}

TEST(LoadStreamTest, Errors) {
  EXPECT_FALSE(LoadStream({}, 1).ok());
  StreamSpec spec;
  spec.generator = "nope";
  EXPECT_FALSE(LoadStream(spec, 1).ok());
  spec.generator.clear();
  spec.path = "/nonexistent/stream.txt";
  EXPECT_FALSE(LoadStream(spec, 1).ok());
}

}  // namespace
}  // namespace dpdsg
