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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace dpdsg {

absl::string_view ModeName(Mode mode) {
  return mode == Mode::kPaper ? "paper" : "baseline";
}

absl::StatusOr<Mode> ParseMode(absl::string_view name) {
  if (name == "paper") return Mode::kPaper;
  if (name == "baseline") return Mode::kBaseline;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mode '", name, "' (expected paper or baseline)"));
}

absl::string_view DensifyPolicyName(DensifyPolicy policy) {
  return policy == DensifyPolicy::kLiteral ? "literal" : "uniform";
}

absl::StatusOr<DensifyPolicy> ParseDensifyPolicy(absl::string_view name) {
  if (name == "literal") return DensifyPolicy::kLiteral;
  if (name == "uniform") return DensifyPolicy::kUniform;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown densify policy '", name, "' (expected literal or uniform)"));
}

double Upsilon(double eta) {
  return std::log(3.0 / eta) / std::log1p(2.0 * eta) + (1.0 + 2.0 * eta) / eta;
}

double Kappa(double big_c, double zeta, double upsilon, VertexId n,
             double eps) {
  return std::max(big_c * zeta,
                  2.0 * big_c * upsilon * std::log(static_cast<double>(n)) /
                      eps);
}

double DecayBound(double eta, std::int64_t release_index) {
  const double b =
      3.0 / (eta * std::pow(1.0 + 2.0 * eta,
                            static_cast<double>(release_index - 1)));
  return std::min(1.0, b);
}

absl::StatusOr<ResolvedParams> ResolveParams(
    const DsgParams& params, const StaticSolverContract& contract) {
  if (!(params.eps > 0.0) || !std::isfinite(params.eps)) {
    return absl::InvalidArgumentError("eps must be positive and finite");
  }
  if (!(params.delta >= 0.0 && params.delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in [0, 1)");
  }
  if (!(params.eta > 0.0 && params.eta < 1.0)) {
    return absl::InvalidArgumentError("eta must lie in (0, 1)");
  }
  if (params.n < 2) return absl::InvalidArgumentError("n must be >= 2");
  if (!(params.big_c > 0.0)) {
    return absl::InvalidArgumentError("C must be positive");
  }
  if (!(params.baseline_c > 0.0)) {
    return absl::InvalidArgumentError("baseline C must be positive");
  }
  if (!(params.stream_bound_exponent >= 1.0)) {
    return absl::InvalidArgumentError("stream bound exponent must be >= 1");
  }
  if (params.kappa_override && !(*params.kappa_override >= 0.0)) {
    return absl::InvalidArgumentError("kappa override must be >= 0");
  }

  ResolvedParams r;
  r.primaries = params;
  r.upsilon = Upsilon(params.eta);
  r.alpha = contract.alpha;
  r.solver = contract.name;
  r.zeta = contract.zeta ? contract.zeta(params.n, params.eps / r.upsilon,
                                         params.delta / r.upsilon, params.eta)
                         : 0.0;
  r.kappa = params.kappa_override.value_or(
      Kappa(params.big_c, r.zeta, r.upsilon, params.n, params.eps));
  r.overlay_half_degree = static_cast<std::int64_t>(std::ceil(r.kappa));
  r.guarantee_mode = params.eta < 0.125;
  if (!r.guarantee_mode) {
    r.warnings.push_back(absl::StrFormat(
        "eta=%g is outside (0, 1/8); the approximation guarantee does not "
        "apply",
        params.eta));
  }
  const double levels = std::ceil(std::log(static_cast<double>(params.n)) /
                                  std::log1p(2.0 * params.eta));
  r.baseline_upsilon = 2.0 * (levels + 1.0);
  return r;
}

PrivateContinualDsg::PrivateContinualDsg(
    const ResolvedParams& resolved, const ContinualOptions& options,
    std::shared_ptr<const StaticDsgSolver> solver, const NoiseSource& root)
    : resolved_(resolved),
      options_(options),
      solver_(std::move(solver)),
      sample_src_(root.Fork("sample")),
      svt_src_(root.Fork("svt")),
      solver_src_(root.Fork("solver")),
      tracker_(resolved.primaries.n),
      ledger_(resolved.primaries.eps, resolved.primaries.delta,
              options.strict_ledger) {}

absl::StatusOr<std::unique_ptr<PrivateContinualDsg>> PrivateContinualDsg::Create(
    const DsgParams& params, const ContinualOptions& options,
    std::shared_ptr<const StaticDsgSolver> solver, const NoiseSource& root) {
  if (solver == nullptr) return absl::InvalidArgumentError("no static solver");
  absl::StatusOr<ResolvedParams> resolved =
      ResolveParams(params, solver->contract());
  if (!resolved.ok()) return resolved.status();
  if (options.mode == Mode::kPaper && !options.force_q1 &&
      !(resolved->kappa > 0.0)) {
    return absl::InvalidArgumentError(
        "kappa = 0 makes the sampling rate 0; only allowed with force_q1");
  }
  std::unique_ptr<PrivateContinualDsg> state(new PrivateContinualDsg(
      *resolved, options, std::move(solver), root));
  absl::Status init = state->Initialize();
  if (!init.ok()) return init;
  return state;
}

double PrivateContinualDsg::EpochEps() const {
  const double split = options_.mode == Mode::kPaper
                           ? resolved_.upsilon
                           : resolved_.baseline_upsilon;
  return resolved_.primaries.eps / split;
}

double PrivateContinualDsg::EpochDelta() const {
  const double split = options_.mode == Mode::kPaper
                           ? resolved_.upsilon
                           : resolved_.baseline_upsilon;
  return resolved_.primaries.delta / split;
}

absl::Status PrivateContinualDsg::RecordEpoch(double q) {
  return ledger_.Record(MechanismKind::kSvtEpoch, q, EpochEps(), 0.0, t_)
      .status();
}

absl::Status PrivateContinualDsg::Initialize() {
  const VertexId n = resolved_.primaries.n;
  q_ = 1.0;
  auto everyone = std::make_shared<std::vector<VertexId>>(n);
  std::iota(everyone->begin(), everyone->end(), 0);
  s_dp_ = std::move(everyone);

  if (options_.mode == Mode::kPaper) {
    if (resolved_.overlay_half_degree > 0) {
      absl::StatusOr<RegularOverlay> overlay =
          BuildRegularGraph(n, resolved_.overlay_half_degree);
      if (!overlay.ok()) return overlay.status();
      overlay_ = *std::move(overlay);
      if (overlay_.clamped) {
        resolved_.warnings.push_back(absl::StrFormat(
            "n=%d cannot host a %d-regular overlay; degree clamped to %d", n,
            2 * overlay_.requested_kappa, 2 * overlay_.kappa));
      }
      retention_.reserve(overlay_.edges.size());
      for (const Edge& e : overlay_.edges) {
        tracker_.AddEdge(e);
        retention_[e.key()] = options_.densify == DensifyPolicy::kLiteral
                                  ? 1.0
                                  : sample_src_.Uniform();
      }
      tracker_.Exact();
    }
    rho_dp_ = resolved_.kappa;
  } else {
    rho_dp_ = 0.5;
    const double horizon =
        std::ceil(std::pow(static_cast<double>(n),
                           resolved_.primaries.stream_bound_exponent));
    const auto max_steps = static_cast<std::int64_t>(
        std::min(horizon, static_cast<double>(std::int64_t{1} << 62)));
    absl::StatusOr<ContinualCounter> counter = ContinualCounter::Create(
        resolved_.primaries.eps, max_steps, svt_src_.Fork("counter"));
    if (!counter.ok()) return counter.status();
    counter_.emplace(*std::move(counter));
    absl::Status s = ledger_
                         .Record(MechanismKind::kCounter, 1.0,
                                 resolved_.primaries.eps, 0.0, 0)
                         .status();
    if (!s.ok()) return s;
  }

  absl::StatusOr<SparseVectorInstance> svt =
      SparseVectorInstance::Create(EpochEps(), 1.0, svt_src_);
  if (!svt.ok()) return svt.status();
  svt_.emplace(*std::move(svt));
  epochs_opened_ = 1;
  epoch_open_ = true;
  epoch_start_ = 0;
  epoch_worst_q_ = q_;
  if (options_.mode == Mode::kPaper) return RecordEpoch(q_);
  return absl::OkStatus();
}

void PrivateContinualDsg::SampleEdge(Edge e) {
  if (retention_.erase(e.key()) > 0) tracker_.RemoveEdge(e);
  const double h = sample_src_.Uniform();
  if (h <= q_) {
    retention_[e.key()] = h;
    tracker_.AddEdge(e);
  }
}

void PrivateContinualDsg::UpdateSample() {
  std::vector<std::uint64_t> evict;
  for (const auto& [key, h] : retention_) {
    if (h > q_) evict.push_back(key);
  }
  for (std::uint64_t key : evict) {
    retention_.erase(key);
    tracker_.RemoveEdge(Edge::FromKey(key));
  }
}

std::optional<double> PrivateContinualDsg::retention(Edge e) const {
  auto it = retention_.find(e.key());
  if (it == retention_.end()) return std::nullopt;
  return it->second;
}

bool PrivateContinualDsg::DecayBoundHolds() const {
  return q_ <= DecayBound(resolved_.primaries.eta, release_index_);
}

absl::Status PrivateContinualDsg::CheckSampleConsistency() const {
  const SimpleGraph& f = tracker_.graph();
  if (static_cast<std::int64_t>(retention_.size()) != f.num_edges()) {
    return absl::InternalError(absl::StrFormat(
        "sample holds %d edges but %d retention values", f.num_edges(),
        retention_.size()));
  }
  for (const auto& [key, h] : retention_) {
    const Edge e = Edge::FromKey(key);
    if (!f.HasEdge(e)) {
      return absl::InternalError(absl::StrFormat(
          "retention value for (%d, %d) but edge not stored", e.u(), e.v()));
    }
    if (h > q_) {
      return absl::InternalError(absl::StrFormat(
          "edge (%d, %d) kept with h=%g above q=%g", e.u(), e.v(), h, q_));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<SvtAnswer> PrivateContinualDsg::QueryCurrentSample() {
  const double threshold =
      q_ * (1.0 + 2.0 * resolved_.primaries.eta) * rho_dp_;
  return svt_->QueryBounded(
      tracker_.lower_bound().ToDouble(), tracker_.upper_bound(),
      [this] { return tracker_.Exact().density.ToDouble(); }, threshold,
      svt_src_);
}

absl::Status PrivateContinualDsg::Release(double estimate,
                                          ReleaseRecord& record) {
  const double eta = resolved_.primaries.eta;
  record.t = t_;
  record.q_before = q_;
  record.estimate = estimate;
  rho_dp_ = std::max((1.0 + 2.0 * eta) * rho_dp_, estimate / q_);
  ++release_index_;

  // The oracle reuses the witness the SVT query just computed.
  std::span<const VertexId> hint;
  if (tracker_.is_exact()) hint = tracker_.Exact().witness;
  absl::StatusOr<std::vector<VertexId>> subset = solver_->Solve(
      tracker_.graph(), EpochEps(), EpochDelta(), solver_src_, hint);
  if (!subset.ok()) return subset.status();
  if (subset->empty()) {
    return absl::InternalError("static solver returned an empty subset");
  }
  s_dp_ = std::make_shared<const std::vector<VertexId>>(*std::move(subset));
  absl::Status s = ledger_
                       .Record(MechanismKind::kStaticCall, q_, EpochEps(),
                               EpochDelta(), t_)
                       .status();
  if (!s.ok()) return s;

  if (options_.mode == Mode::kPaper) {
    if (!options_.force_q1) {
      q_ = std::min(q_, std::min(1.0, 3.0 * resolved_.kappa / (rho_dp_ * eta)));
    }
    absl::StatusOr<SparseVectorInstance> svt =
        SparseVectorInstance::Create(EpochEps(), 1.0, svt_src_);
    if (!svt.ok()) return svt.status();
    svt_.emplace(*std::move(svt));
    ++epochs_opened_;
    s = RecordEpoch(q_);
    if (!s.ok()) return s;
    UpdateSample();
  } else {
    const auto cap =
        static_cast<std::int64_t>(std::floor(resolved_.baseline_upsilon / 2));
    if (epochs_opened_ < cap) {
      absl::StatusOr<SparseVectorInstance> svt =
          SparseVectorInstance::Create(EpochEps(), 1.0, svt_src_);
      if (!svt.ok()) return svt.status();
      svt_.emplace(*std::move(svt));
      ++epochs_opened_;
      epoch_open_ = true;
      epoch_start_ = t_;
      epoch_worst_q_ = q_;
    } else {
      frozen_ = true;
    }
  }
  record.rho_dp = rho_dp_;
  record.s_dp = s_dp_;
  record.q_after = q_;
  return absl::OkStatus();
}

StepRecord PrivateContinualDsg::MakeStepRecord(
    std::optional<ReleaseRecord> release) const {
  StepRecord step;
  step.t = t_;
  step.rho_dp = rho_dp_;
  step.q = q_;
  step.sample_size = sample_size();
  step.released = release.has_value();
  step.ledger = ledger_.Totals();
  step.release = std::move(release);
  return step;
}

absl::StatusOr<StepRecord> PrivateContinualDsg::ProcessUpdate(
    const Update& update) {
  return options_.mode == Mode::kPaper ? ProcessEdge(update)
                                       : RunBaselineStep(update);
}

absl::StatusOr<StepRecord> PrivateContinualDsg::ProcessEdge(
    const Update& update) {
  if (options_.mode != Mode::kPaper) {
    return absl::FailedPreconditionError(
        "ProcessEdge runs the paper schedule; this state is in baseline mode");
  }
  ++t_;
  if (!update.is_noop()) SampleEdge(update.edge());
  absl::StatusOr<SvtAnswer> answer = QueryCurrentSample();
  if (!answer.ok()) return answer.status();
  if (!answer->above) return MakeStepRecord(std::nullopt);
  ReleaseRecord record;
  absl::Status s = Release(answer->estimate, record);
  if (!s.ok()) return s;
  return MakeStepRecord(std::move(record));
}

namespace {

double EpsCost(double q) { return q >= 1.0 ? 1.0 : 2.0 * q; }

}  // namespace

absl::StatusOr<StepRecord> PrivateContinualDsg::RunBaselineStep(
    const Update& update) {
  if (options_.mode != Mode::kBaseline) {
    return absl::FailedPreconditionError(
        "RunBaselineStep needs a state constructed in baseline mode");
  }
  ++t_;
  absl::StatusOr<double> count = counter_->Add(update.is_noop() ? 0.0 : 1.0);
  if (!count.ok()) return count.status();
  noisy_edge_count_ = *count;
  if (!options_.force_q1) {
    const double eta = resolved_.primaries.eta;
    const double n = static_cast<double>(resolved_.primaries.n);
    const double target = std::min(
        1.0, resolved_.primaries.baseline_c * n * std::log(n) /
                 (std::max(*count, 1.0) * eta * eta));
    if (target < q_) {
      q_ = target;
      if (EpsCost(q_) > EpsCost(epoch_worst_q_)) epoch_worst_q_ = q_;
      UpdateSample();
    }
  }
  if (!update.is_noop()) SampleEdge(update.edge());
  if (frozen_) return MakeStepRecord(std::nullopt);

  absl::StatusOr<SvtAnswer> answer = QueryCurrentSample();
  if (!answer.ok()) return answer.status();
  if (!answer->above) return MakeStepRecord(std::nullopt);
  absl::Status s = Finish();
  if (!s.ok()) return s;
  ReleaseRecord record;
  s = Release(answer->estimate, record);
  if (!s.ok()) return s;
  return MakeStepRecord(std::move(record));
}

absl::Status PrivateContinualDsg::Finish() {
  if (options_.mode != Mode::kBaseline || !epoch_open_) {
    return absl::OkStatus();
  }
  epoch_open_ = false;
  return ledger_
      .Record(MechanismKind::kSvtEpoch, epoch_worst_q_, EpochEps(), 0.0,
              epoch_start_)
      .status();
}

}  // namespace dpdsg
