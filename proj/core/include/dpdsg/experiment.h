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

#ifndef DPDSG_EXPERIMENT_H_
#define DPDSG_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpdsg/continual_dsg.h"
#include "dpdsg/generators.h"
#include "dpdsg/graph.h"
#include "dpdsg/privacy_ledger.h"
#include "dpdsg/static_solver.h"

namespace dpdsg {

// Where the stream comes from: a file, or a named generator with its knobs.
struct StreamSpec {
  std::string path;       // Takes precedence when nonempty.
  std::string generator;  // hard-instance | erdos-renyi | planted-clique
  VertexId n = 0;
  std::int64_t m = 0;
  int clique_size = 0;
  int growth_steps = 8;
  double count_scale = 1.0;
};

absl::StatusOr<EdgeStream> LoadStream(const StreamSpec& spec,
                                      std::uint64_t seed);

struct ExperimentConfig {
  DsgParams params;  // params.n is taken from the stream.
  std::string solver = "oracle";
  SolverOptions solver_options;
  ContinualOptions options;
  bool zero_noise = false;
  std::uint64_t seed = 1;
  // Exact true densities are computed every this many steps and at every
  // release step. Must be >= 1.
  std::int64_t checkpoint_every = 25;
  // Skip the true-density measurements entirely (large runs).
  bool measure_true_density = true;
};

struct MetricsRow {
  std::int64_t t = 0;
  double q = 1.0;
  std::int64_t sample_size = 0;
  double rho_dp = 0.0;
  bool released = false;
  LedgerTotals ledger;
  bool decay_ok = true;
  // Exact maximum density of G_t with the overlay (the analysis's G'_t) and
  // of G_t alone. Present at checkpoints.
  std::optional<double> rho_true;
  std::optional<double> rho_true_raw;
  // Density of the current S_DP inside G_t with the overlay; every step.
  std::optional<double> s_dp_density_true;
};

struct ExperimentResult {
  ResolvedParams resolved;
  std::vector<MetricsRow> rows;
  std::vector<ReleaseRecord> releases;
  PrivacyLedger ledger{0.0, 0.0};
  std::vector<std::pair<std::string, std::string>> metadata;

  std::int64_t stream_length = 0;
  std::int64_t max_sample_size = 0;
  // First step whose published q is below 1, and how many releases came
  // before it.
  std::optional<std::int64_t> first_q_below_one;
  std::int64_t releases_before_q_below_one = 0;
  std::int64_t decay_violations = 0;
  std::int64_t consistency_violations = 0;
};

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& config,
                                               const EdgeStream& stream);

// Writes steps.csv, checkpoints.csv, releases.txt, ledger.csv and
// metadata.txt under out_dir, creating it if needed.
absl::Status WriteExperimentOutputs(const ExperimentResult& result,
                                    const std::string& out_dir);

}  // namespace dpdsg

#endif  // DPDSG_EXPERIMENT_H_
