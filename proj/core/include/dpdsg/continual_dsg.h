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

#ifndef DPDSG_CONTINUAL_DSG_H_
#define DPDSG_CONTINUAL_DSG_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpdsg/continual_counter.h"
#include "dpdsg/density_tracker.h"
#include "dpdsg/graph.h"
#include "dpdsg/noise.h"
#include "dpdsg/privacy_ledger.h"
#include "dpdsg/sparse_vector.h"
#include "dpdsg/static_solver.h"

namespace dpdsg {

enum class Mode { kPaper, kBaseline };
enum class DensifyPolicy { kLiteral, kUniform };

absl::string_view ModeName(Mode mode);
absl::StatusOr<Mode> ParseMode(absl::string_view name);
absl::string_view DensifyPolicyName(DensifyPolicy policy);
absl::StatusOr<DensifyPolicy> ParseDensifyPolicy(absl::string_view name);

// User-facing parameters. Everything else is derived in ResolveParams.
struct DsgParams {
  double eps = 1.0;
  double delta = 1e-6;
  double eta = 0.25;
  VertexId n = 0;
  double c = 1.0;      // Failure exponent; recorded, enters only through C.
  double big_c = 1.0;  // The absolute constant C.
  double stream_bound_exponent = 2.0;  // Streams have length <= n^this.
  std::optional<double> kappa_override;
  double baseline_c = 1.0;  // C_b in the baseline schedule.
};

struct ResolvedParams {
  DsgParams primaries;
  double upsilon = 0.0;
  double zeta = 0.0;  // zeta(n, eps / upsilon, delta / upsilon, eta).
  double kappa = 0.0;
  std::int64_t overlay_half_degree = 0;  // ceil(kappa).
  double alpha = 0.0;
  std::string solver;
  bool guarantee_mode = true;  // eta < 1/8.
  // Baseline schedule: per-epoch budget eps / baseline_upsilon, at most
  // baseline_upsilon / 2 epochs.
  double baseline_upsilon = 0.0;
  std::vector<std::string> warnings;
};

// log_{1+2 eta}(3 / eta) + (1 + 2 eta) / eta.
double Upsilon(double eta);
// max(C zeta, 2 C upsilon ln(n) / eps).
double Kappa(double big_c, double zeta, double upsilon, VertexId n, double eps);
// min(1, 3 / (eta (1 + 2 eta)^(i - 1))).
double DecayBound(double eta, std::int64_t release_index);

absl::StatusOr<ResolvedParams> ResolveParams(
    const DsgParams& params, const StaticSolverContract& contract);

struct ContinualOptions {
  Mode mode = Mode::kPaper;
  DensifyPolicy densify = DensifyPolicy::kLiteral;
  bool force_q1 = false;
  bool strict_ledger = false;
};

struct ReleaseRecord {
  std::int64_t t = 0;
  double rho_dp = 0.0;
  std::shared_ptr<const std::vector<VertexId>> s_dp;
  double q_before = 1.0;
  double q_after = 1.0;
  double estimate = 0.0;  // The SVT's noisy value r~.
};

// What one update publishes, plus bookkeeping.
struct StepRecord {
  std::int64_t t = 0;
  double rho_dp = 0.0;
  double q = 1.0;
  std::int64_t sample_size = 0;
  bool released = false;
  LedgerTotals ledger;
  std::optional<ReleaseRecord> release;
};

class PrivateContinualDsg {
 public:
  static absl::StatusOr<std::unique_ptr<PrivateContinualDsg>> Create(
      const DsgParams& params, const ContinualOptions& options,
      std::shared_ptr<const StaticDsgSolver> solver, const NoiseSource& root);

  // Dispatches on the configured mode.
  absl::StatusOr<StepRecord> ProcessUpdate(const Update& update);
  // Paper schedule only.
  absl::StatusOr<StepRecord> ProcessEdge(const Update& update);
  // Baseline schedule only.
  absl::StatusOr<StepRecord> RunBaselineStep(const Update& update);

  // Closes the open SVT epoch in the ledger (baseline mode charges epochs
  // when they end). Idempotent.
  absl::Status Finish();

  // Stores e with a fresh retention value if it is <= q, replacing any
  // earlier copy.
  void SampleEdge(Edge e);
  // Evicts every stored edge whose retention value exceeds q.
  void UpdateSample();

  // q <= min(1, 3 / (eta (1 + 2 eta)^(i - 1))) for the current release index.
  bool DecayBoundHolds() const;
  // F and H agree and every retention value is <= q.
  absl::Status CheckSampleConsistency() const;

  const ResolvedParams& params() const { return resolved_; }
  const ContinualOptions& options() const { return options_; }
  double q() const { return q_; }
  double rho_dp() const { return rho_dp_; }
  const std::shared_ptr<const std::vector<VertexId>>& s_dp() const {
    return s_dp_;
  }
  std::int64_t release_index() const { return release_index_; }
  std::int64_t t() const { return t_; }
  const SimpleGraph& sample() const { return tracker_.graph(); }
  std::int64_t sample_size() const { return tracker_.graph().num_edges(); }
  std::optional<double> retention(Edge e) const;
  const PrivacyLedger& ledger() const { return ledger_; }
  const RegularOverlay& overlay() const { return overlay_; }
  const SparseVectorInstance& svt() const { return *svt_; }
  // Baseline mode: true once the epoch cap is reached and no SVT is open.
  bool frozen() const { return frozen_; }
  std::optional<double> noisy_edge_count() const { return noisy_edge_count_; }

  // Debug hook for tests: pin the sampling stream's uniform draws.
  void OverrideSampleUniform(std::optional<double> value) {
    sample_src_.OverrideUniform(value);
  }

 private:
  PrivateContinualDsg(const ResolvedParams& resolved,
                      const ContinualOptions& options,
                      std::shared_ptr<const StaticDsgSolver> solver,
                      const NoiseSource& root);

  absl::Status Initialize();
  double EpochEps() const;
  double EpochDelta() const;
  absl::StatusOr<SvtAnswer> QueryCurrentSample();
  absl::Status Release(double estimate, ReleaseRecord& record);
  StepRecord MakeStepRecord(std::optional<ReleaseRecord> release) const;
  absl::Status RecordEpoch(double q);

  ResolvedParams resolved_;
  ContinualOptions options_;
  std::shared_ptr<const StaticDsgSolver> solver_;
  NoiseSource sample_src_;
  NoiseSource svt_src_;
  NoiseSource solver_src_;

  RegularOverlay overlay_;
  DensityTracker tracker_;
  absl::flat_hash_map<std::uint64_t, double> retention_;
  std::optional<SparseVectorInstance> svt_;
  PrivacyLedger ledger_;
  std::optional<ContinualCounter> counter_;
  std::optional<double> noisy_edge_count_;

  double q_ = 1.0;
  double rho_dp_ = 0.0;
  std::shared_ptr<const std::vector<VertexId>> s_dp_;
  std::int64_t release_index_ = 0;
  std::int64_t t_ = 0;

  // Baseline epochs are charged at close with the costliest rate they saw.
  std::int64_t epochs_opened_ = 0;
  std::int64_t epoch_start_ = 0;
  double epoch_worst_q_ = 1.0;
  bool epoch_open_ = false;
  bool frozen_ = false;
};

}  // namespace dpdsg

#endif  // DPDSG_CONTINUAL_DSG_H_
