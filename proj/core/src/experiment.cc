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
#include <memory>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "dpdsg/density_tracker.h"
#include "dpdsg/noise.h"
#include "dpdsg/stream_io.h"

namespace dpdsg {

absl::StatusOr<EdgeStream> LoadStream(const StreamSpec& spec,
                                      std::uint64_t seed) {
  if (!spec.path.empty()) return ReadEdgeStreamFile(spec.path);
  if (spec.generator == "hard-instance") {
    HardInstanceParams p;
    p.n = spec.n;
    p.growth_steps = spec.growth_steps;
    p.count_scale = spec.count_scale;
    absl::StatusOr<HardInstance> inst = GenerateHardInstance(p, seed);
    if (!inst.ok()) return inst.status();
    return std::move(inst->stream);
  }
  if (spec.generator == "erdos-renyi" || spec.generator == "planted-clique") {
    RandomStreamParams p;
    p.n = spec.n;
    p.m = spec.m;
    p.model = spec.generator == "erdos-renyi" ? RandomModel::kErdosRenyi
                                              : RandomModel::kPlantedClique;
    p.clique_size = spec.clique_size;
    return GenerateRandomStream(p, seed);
  }
  if (spec.generator.empty()) {
    return absl::InvalidArgumentError("no stream file or generator given");
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown generator '", spec.generator,
      "' (expected hard-instance, erdos-renyi or planted-clique)"));
}

namespace {

std::string Fmt(double x) { return absl::StrFormat("%.17g", x); }

}  // namespace

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& config,
                                               const EdgeStream& stream) {
  if (config.checkpoint_every < 1) {
    return absl::InvalidArgumentError("checkpoint interval must be >= 1");
  }
  absl::StatusOr<std::unique_ptr<StaticDsgSolver>> solver =
      MakeStaticSolver(config.solver, config.solver_options);
  if (!solver.ok()) return solver.status();
  DsgParams params = config.params;
  params.n = stream.n;
  const NoiseSource root(config.seed, config.zero_noise);
  absl::StatusOr<std::unique_ptr<PrivateContinualDsg>> created =
      PrivateContinualDsg::Create(params, config.options,
                                  std::shared_ptr<const StaticDsgSolver>(
                                      *std::move(solver)),
                                  root);
  if (!created.ok()) return created.status();
  PrivateContinualDsg& state = **created;
  const bool paper = config.options.mode == Mode::kPaper;

  ExperimentResult result;
  result.resolved = state.params();
  result.stream_length = static_cast<std::int64_t>(stream.length());

  // The harness keeps the full graph, with and without the overlay; the
  // algorithm never sees these.
  const bool measure = config.measure_true_density;
  std::optional<DensityTracker> dense;
  std::optional<DensityTracker> raw;
  std::optional<SubsetEdgeCounter> s_dp_edges;
  if (measure) {
    dense.emplace(stream.n);
    raw.emplace(stream.n);
    for (const Edge& e : state.overlay().edges) dense->AddEdge(e);
    s_dp_edges.emplace(dense->graph(), *state.s_dp());
  }

  result.rows.reserve(stream.length());
  std::int64_t released_so_far = 0;
  for (const Update& update : stream.updates) {
    absl::StatusOr<StepRecord> step = state.ProcessUpdate(update);
    if (!step.ok()) {
      return absl::Status(step.status().code(),
                          absl::StrFormat("step %d: %s", state.t(),
                                          step.status().message()));
    }
    MetricsRow row;
    row.t = step->t;
    row.q = step->q;
    row.sample_size = step->sample_size;
    row.rho_dp = step->rho_dp;
    row.released = step->released;
    row.ledger = step->ledger;
    row.decay_ok = !paper || state.DecayBoundHolds();
    if (!row.decay_ok) ++result.decay_violations;

    if (measure) {
      if (!update.is_noop()) {
        raw->AddEdge(update.edge());
        if (dense->AddEdge(update.edge())) s_dp_edges->OnEdgeAdded(update.edge());
      }
      if (step->released) s_dp_edges.emplace(dense->graph(), *state.s_dp());
      row.s_dp_density_true = s_dp_edges->density().ToDouble();
      const bool checkpoint = step->released ||
                              row.t % config.checkpoint_every == 0 ||
                              row.t == result.stream_length;
      if (checkpoint) {
        row.rho_true = dense->Exact().density.ToDouble();
        row.rho_true_raw = raw->Exact().density.ToDouble();
        if (!state.CheckSampleConsistency().ok()) {
          ++result.consistency_violations;
        }
      }
    } else if (step->released && !state.CheckSampleConsistency().ok()) {
      ++result.consistency_violations;
    }

    if (step->released) {
      ++released_so_far;
      result.releases.push_back(*step->release);
    }
    if (!result.first_q_below_one && row.q < 1.0) {
      result.first_q_below_one = row.t;
      result.releases_before_q_below_one = released_so_far;
    }
    result.max_sample_size = std::max(result.max_sample_size, row.sample_size);
    result.rows.push_back(std::move(row));
  }
  absl::Status finished = state.Finish();
  if (!finished.ok()) return finished;
  if (!result.first_q_below_one) {
    result.releases_before_q_below_one = released_so_far;
  }
  result.ledger = state.ledger();

  const ResolvedParams& r = state.params();
  const LedgerTotals totals = result.ledger.Totals();
  auto& md = result.metadata;
  md.emplace_back("seed", absl::StrCat(config.seed));
  md.emplace_back("n", absl::StrCat(r.primaries.n));
  md.emplace_back("stream_length", absl::StrCat(result.stream_length));
  md.emplace_back("eps", Fmt(r.primaries.eps));
  md.emplace_back("delta", Fmt(r.primaries.delta));
  md.emplace_back("eta", Fmt(r.primaries.eta));
  md.emplace_back("c", Fmt(r.primaries.c));
  md.emplace_back("big_c", Fmt(r.primaries.big_c));
  md.emplace_back("baseline_c", Fmt(r.primaries.baseline_c));
  md.emplace_back("upsilon", Fmt(r.upsilon));
  md.emplace_back("baseline_upsilon", Fmt(r.baseline_upsilon));
  md.emplace_back("solver", r.solver);
  md.emplace_back("alpha", Fmt(r.alpha));
  md.emplace_back("zeta", Fmt(r.zeta));
  md.emplace_back("kappa", Fmt(r.kappa));
  md.emplace_back("kappa_overridden",
                  r.primaries.kappa_override ? "true" : "false");
  md.emplace_back("overlay_half_degree",
                  absl::StrCat(state.overlay().kappa));
  md.emplace_back("overlay_clamped",
                  state.overlay().clamped ? "true" : "false");
  md.emplace_back("mode", ModeName(config.options.mode));
  md.emplace_back("densify_h", DensifyPolicyName(config.options.densify));
  md.emplace_back("zero_noise", config.zero_noise ? "true" : "false");
  md.emplace_back("force_q1", config.options.force_q1 ? "true" : "false");
  md.emplace_back("guarantee_mode", r.guarantee_mode ? "true" : "false");
  md.emplace_back("checkpoint_every", absl::StrCat(config.checkpoint_every));
  md.emplace_back("releases", absl::StrCat(result.releases.size()));
  md.emplace_back("final_q", Fmt(state.q()));
  md.emplace_back("max_sample_size", absl::StrCat(result.max_sample_size));
  md.emplace_back("first_q_below_one",
                  result.first_q_below_one
                      ? absl::StrCat(*result.first_q_below_one)
                      : std::string("none"));
  md.emplace_back("ledger_eps_svt", Fmt(totals.eps_svt));
  md.emplace_back("ledger_eps_static", Fmt(totals.eps_static));
  md.emplace_back("ledger_eps_counter", Fmt(totals.eps_counter));
  md.emplace_back("ledger_delta", Fmt(totals.delta));
  md.emplace_back("ledger_within_budget",
                  result.ledger.WithinBudget() ? "true" : "false");
  md.emplace_back("decay_violations", absl::StrCat(result.decay_violations));
  for (const std::string& w : r.warnings) md.emplace_back("warning", w);
  return result;
}

namespace {

absl::Status OpenFor(const std::filesystem::path& path, std::ofstream& out) {
  out.open(path);
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("cannot open ", path.string(), " for writing"));
  }
  return absl::OkStatus();
}

std::string Optional(const std::optional<double>& x) {
  return x ? Fmt(*x) : std::string();
}

}  // namespace

absl::Status WriteExperimentOutputs(const ExperimentResult& result,
                                    const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrCat("cannot create ", out_dir, ": ", ec.message()));
  }
  const fs::path dir(out_dir);

  std::ofstream steps;
  if (absl::Status s = OpenFor(dir / "steps.csv", steps); !s.ok()) return s;
  steps << "t,rho_dp,q,sample_size,released,ledger_eps_svt,ledger_eps_static\n";
  for (const MetricsRow& row : result.rows) {
    steps << absl::StrFormat("%d,%s,%s,%d,%d,%s,%s\n", row.t, Fmt(row.rho_dp),
                             Fmt(row.q), row.sample_size, row.released ? 1 : 0,
                             Fmt(row.ledger.eps_svt),
                             Fmt(row.ledger.eps_static));
  }

  std::ofstream checkpoints;
  if (absl::Status s = OpenFor(dir / "checkpoints.csv", checkpoints); !s.ok()) {
    return s;
  }
  checkpoints << "t,rho_true,rho_true_raw,s_dp_density_true,rho_dp,q,"
                 "sample_size,decay_ok\n";
  for (const MetricsRow& row : result.rows) {
    if (!row.rho_true) continue;
    checkpoints << absl::StrFormat(
        "%d,%s,%s,%s,%s,%s,%d,%d\n", row.t, Optional(row.rho_true),
        Optional(row.rho_true_raw), Optional(row.s_dp_density_true),
        Fmt(row.rho_dp), Fmt(row.q), row.sample_size, row.decay_ok ? 1 : 0);
  }

  std::ofstream releases;
  if (absl::Status s = OpenFor(dir / "releases.txt", releases); !s.ok()) {
    return s;
  }
  for (const ReleaseRecord& rel : result.releases) {
    releases << rel.t << ':' << absl::StrJoin(*rel.s_dp, ",") << '\n';
  }

  std::ofstream ledger;
  if (absl::Status s = OpenFor(dir / "ledger.csv", ledger); !s.ok()) return s;
  result.ledger.WriteCsv(ledger);

  std::ofstream metadata;
  if (absl::Status s = OpenFor(dir / "metadata.txt", metadata); !s.ok()) {
    return s;
  }
  for (const auto& [key, value] : result.metadata) {
    metadata << key << '=' << value << '\n';
  }

  for (std::ofstream* f : {&steps, &checkpoints, &releases, &ledger, &metadata}) {
    f->flush();
    if (!*f) return absl::DataLossError("write failed under " + out_dir);
  }
  return absl::OkStatus();
}

}  // namespace dpdsg
