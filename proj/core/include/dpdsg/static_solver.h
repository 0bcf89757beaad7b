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

#ifndef DPDSG_STATIC_SOLVER_H_
#define DPDSG_STATIC_SOLVER_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpdsg/graph.h"
#include "dpdsg/noise.h"

namespace dpdsg {

// What a plugged-in static solver promises: on any graph it returns a subset
// of density at least OPT / (1 + alpha) - zeta(n, eps, delta, alpha).
struct StaticSolverContract {
  std::string name;
  double alpha = 0.0;
  std::function<double(VertexId n, double eps, double delta, double alpha)>
      zeta;
};

class StaticDsgSolver {
 public:
  virtual ~StaticDsgSolver() = default;

  virtual const StaticSolverContract& contract() const = 0;

  // Returns a nonempty sorted subset of [0, g.num_vertices()). `hint` may
  // carry a known dense set; solvers are free to ignore it.
  virtual absl::StatusOr<std::vector<VertexId>> Solve(
      const SimpleGraph& g, double eps, double delta, NoiseSource& src,
      std::span<const VertexId> hint = {}) const = 0;
};

// Non-private: the maximal exact densest subgraph. alpha = 0, zeta = 0.
class OracleSolver : public StaticDsgSolver {
 public:
  OracleSolver();
  const StaticSolverContract& contract() const override { return contract_; }
  absl::StatusOr<std::vector<VertexId>> Solve(
      const SimpleGraph& g, double eps, double delta, NoiseSource& src,
      std::span<const VertexId> hint = {}) const override;

 private:
  StaticSolverContract contract_;
};

// Pure eps-DP parallel peeling over R = ceil(log_{1+eta} n) rounds. Each
// round spends eps / (2R): half on a noisy degree vector, half on a noisy
// edge count that sets the peeling threshold 2 (1 + eta) |E(S)| / |S|. The
// other eps / 2 picks the best of the R + 1 round-start sets by noisy
// density. Registered with alpha = 1 and zeta = zeta_scale * ln(n) / eps.
class NoisyPeelingSolver : public StaticDsgSolver {
 public:
  explicit NoisyPeelingSolver(double eta_static, double zeta_scale);

  const StaticSolverContract& contract() const override { return contract_; }
  absl::StatusOr<std::vector<VertexId>> Solve(
      const SimpleGraph& g, double eps, double delta, NoiseSource& src,
      std::span<const VertexId> hint = {}) const override;

  double eta_static() const { return eta_static_; }
  static int Rounds(VertexId n, double eta_static);

 private:
  double eta_static_;
  StaticSolverContract contract_;
};

// Default multiplier for the noisy-peeling zeta callback, set from an
// offline calibration run (see the calibrate subcommand).
inline constexpr double kDefaultPeelingZetaScale = 8.0;
inline constexpr double kDefaultPeelingEta = 0.25;

struct SolverOptions {
  double peeling_eta = kDefaultPeelingEta;
  double peeling_zeta_scale = kDefaultPeelingZetaScale;
};

// "oracle" or "noisy-peeling".
absl::StatusOr<std::unique_ptr<StaticDsgSolver>> MakeStaticSolver(
    absl::string_view name, const SolverOptions& options = {});

struct CalibrationResult {
  double zeta = 0.0;  // 95th percentile additive error.
  std::vector<double> errors;
  int trials = 0;
};

// Runs the solver on planted-clique graphs of several clique sizes and
// reports the 95th percentile of max(0, OPT / (1 + alpha) - density(out)).
absl::StatusOr<CalibrationResult> EffectiveZetaCalibration(
    const StaticDsgSolver& solver, VertexId n, double eps, int trials,
    std::uint64_t seed, bool zero_noise = false);

// Nearest-rank percentile, p in (0, 100].
double NearestRankPercentile(std::vector<double> values, double p);

}  // namespace dpdsg

#endif  // DPDSG_STATIC_SOLVER_H_
