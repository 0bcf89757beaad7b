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

#include "dpdsg/static_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpdsg/densest.h"
#include "dpdsg/generators.h"

namespace dpdsg {

OracleSolver::OracleSolver() {
  contract_.name = "oracle";
  contract_.alpha = 0.0;
  contract_.zeta = [](VertexId, double, double, double) { return 0.0; };
}

absl::StatusOr<std::vector<VertexId>> OracleSolver::Solve(
    const SimpleGraph& g, double, double, NoiseSource&,
    std::span<const VertexId> hint) const {
  if (g.num_vertices() < 1) {
    return absl::InvalidArgumentError("graph has no vertices");
  }
  return ExactDensest(g, hint).witness;
}

NoisyPeelingSolver::NoisyPeelingSolver(double eta_static, double zeta_scale)
    : eta_static_(eta_static) {
  contract_.name = "noisy-peeling";
  contract_.alpha = 1.0;
  contract_.zeta = [zeta_scale](VertexId n, double eps, double, double) {
    return zeta_scale * std::log(std::max<double>(n, 2)) / eps;
  };
}

int NoisyPeelingSolver::Rounds(VertexId n, double eta_static) {
  if (n <= 1) return 1;
  return std::max(1, static_cast<int>(std::ceil(std::log(static_cast<double>(n)) /
                                                std::log1p(eta_static))));
}

absl::StatusOr<std::vector<VertexId>> NoisyPeelingSolver::Solve(
    const SimpleGraph& g, double eps, double, NoiseSource& src,
    std::span<const VertexId>) const {
  if (!(eps > 0.0)) {
    return absl::InvalidArgumentError("noisy peeling needs eps > 0");
  }
  if (!(eta_static_ > 0.0 && eta_static_ < 1.0)) {
    return absl::InvalidArgumentError("eta_static must lie in (0, 1)");
  }
  const VertexId n = g.num_vertices();
  if (n < 1) return absl::InvalidArgumentError("graph has no vertices");

  const int rounds = Rounds(n, eta_static_);
  const double degree_scale = 8.0 * rounds / eps;
  const double count_scale = 4.0 * rounds / eps;

  std::vector<char> alive(n, 1);
  std::vector<VertexId> members(n);
  for (VertexId v = 0; v < n; ++v) members[v] = v;
  std::vector<std::int64_t> degree(n, 0);

  struct Candidate {
    std::vector<VertexId> members;
    std::int64_t edges;
  };
  std::vector<Candidate> candidates;

  for (int round = 0; round <= rounds && !members.empty(); ++round) {
    std::int64_t twice_edges = 0;
    for (VertexId v : members) {
      std::int64_t d = 0;
      for (VertexId w : g.neighbors(v)) d += alive[w];
      degree[v] = d;
      twice_edges += d;
    }
    candidates.push_back({members, twice_edges / 2});
    if (round == rounds) break;

    const double size = static_cast<double>(members.size());
    const double noisy_edges =
        static_cast<double>(twice_edges / 2) + src.Laplace(count_scale);
    const double threshold = 2.0 * (1.0 + eta_static_) * noisy_edges / size;
    std::vector<VertexId> kept;
    for (VertexId v : members) {
      if (static_cast<double>(degree[v]) + src.Laplace(degree_scale) <
          threshold) {
        alive[v] = 0;
      } else {
        kept.push_back(v);
      }
    }
    members = std::move(kept);
  }

  const double select_budget = eps / 2.0;
  const double slots = static_cast<double>(rounds + 1);
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double size = static_cast<double>(candidates[i].members.size());
    const double score = static_cast<double>(candidates[i].edges) / size +
                         src.Laplace(slots / (select_budget * size));
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  std::vector<VertexId> out = std::move(candidates[best].members);
  std::sort(out.begin(), out.end());
  return out;
}

absl::StatusOr<std::unique_ptr<StaticDsgSolver>> MakeStaticSolver(
    absl::string_view name, const SolverOptions& options) {
  if (name == "oracle") return std::make_unique<OracleSolver>();
  if (name == "noisy-peeling") {
    if (!(options.peeling_eta > 0.0 && options.peeling_eta < 1.0)) {
      return absl::InvalidArgumentError("peeling eta must lie in (0, 1)");
    }
    return std::make_unique<NoisyPeelingSolver>(options.peeling_eta,
                                                options.peeling_zeta_scale);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown solver '", name,
                   "' (expected oracle or noisy-peeling)"));
}

double NearestRankPercentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

absl::StatusOr<CalibrationResult> EffectiveZetaCalibration(
    const StaticDsgSolver& solver, VertexId n, double eps, int trials,
    std::uint64_t seed, bool zero_noise) {
  if (trials < 10) {
    return absl::InvalidArgumentError("calibration needs at least 10 trials");
  }
  if (n < 8) return absl::InvalidArgumentError("calibration needs n >= 8");
  const int root = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int sizes[] = {std::max(3, root / 2), root, std::min<int>(2 * root, n)};
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const double alpha = solver.contract().alpha;

  CalibrationResult result;
  result.trials = trials;
  NoiseSource root_src(seed, zero_noise);
  for (int i = 0; i < trials; ++i) {
    RandomStreamParams p;
    p.n = n;
    p.model = RandomModel::kPlantedClique;
    p.clique_size = sizes[i % 3];
    p.m = std::min<std::int64_t>(
        pairs, static_cast<std::int64_t>(p.clique_size) * (p.clique_size - 1) / 2 + n);
    absl::StatusOr<EdgeStream> stream = GenerateRandomStream(p, seed + i);
    if (!stream.ok()) return stream.status();
    const SimpleGraph g = ReplayStream(*stream);
    const double opt = ExactDensest(g).density.ToDouble();
    NoiseSource src = root_src.Fork(absl::StrCat("calibration-", i));
    absl::StatusOr<std::vector<VertexId>> out = solver.Solve(g, eps, 0.0, src);
    if (!out.ok()) return out.status();
    absl::StatusOr<Density> got = InducedDensity(g, *out);
    if (!got.ok()) return got.status();
    result.errors.push_back(std::max(0.0, opt / (1.0 + alpha) - got->ToDouble()));
  }
  result.zeta = NearestRankPercentile(result.errors, 95.0);
  return result;
}

}  // namespace dpdsg
