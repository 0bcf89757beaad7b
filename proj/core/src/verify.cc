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

#include "dpdsg/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "dpdsg/densest.h"
#include "dpdsg/generators.h"
#include "dpdsg/noise.h"

namespace dpdsg {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CriterionResult Failed(CriterionResult r, const absl::Status& status) {
  r.passed = false;
  r.measured = absl::StrCat("error: ", status.message());
  return r;
}

absl::StatusOr<EdgeStream> PlantedStream(VertexId n, std::int64_t m,
                                         int clique, std::uint64_t seed) {
  RandomStreamParams p;
  p.n = n;
  p.m = m;
  p.model = RandomModel::kPlantedClique;
  p.clique_size = clique;
  return GenerateRandomStream(p, seed);
}

std::int64_t Pairs(std::int64_t k) { return k * (k - 1) / 2; }

// Relative slack for comparisons between independently rounded doubles.
constexpr double kFloatSlack = 1e-12;

}  // namespace

absl::StatusOr<VerifyLevel> ParseVerifyLevel(absl::string_view name) {
  if (name == "fast") return VerifyLevel::kFast;
  if (name == "full") return VerifyLevel::kFull;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown verify level '", name, "' (expected fast or full)"));
}

bool VerifyReport::AllPassed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::Lines() const {
  std::vector<std::string> out;
  for (const CriterionResult& c : criteria) {
    out.push_back(absl::StrFormat("%s %s %s: %s (%s) [%.1fs]", c.id,
                                  c.passed ? "PASS" : "FAIL", c.name,
                                  c.measured, c.tolerance, c.seconds));
  }
  return out;
}

void SuiteRuns::Add(const ExperimentConfig& config,
                    const ExperimentResult& result) {
  ledgers.push_back(result.ledger);
  ++runs;
  consistency_violations += result.consistency_violations;
  if (config.options.mode != Mode::kPaper) return;
  ++paper_runs;
  steps_checked += static_cast<std::int64_t>(result.rows.size());
  decay_violations += result.decay_violations;
  if (config.options.force_q1) return;
  const double factor = 1.0 + 2.0 * config.params.eta;
  for (std::size_t i = 1; i < result.releases.size(); ++i) {
    const double prev = result.releases[i - 1].q_after;
    const double next = result.releases[i].q_after;
    if (prev < 1.0 && next < 1.0) {
      ++q_pairs_checked;
      if (next > prev / factor * (1.0 + kFloatSlack)) ++q_pair_violations;
    }
  }
}

std::vector<std::string> SuiteMembers(VerifyLevel level) {
  if (level == VerifyLevel::kFast) return {"A1", "A2", "A4"};
  return {"A1", "A2", "A3", "A6", "A7", "A8", "A5", "A9", "A4"};
}

CriterionResult CheckOracleEquivalence(std::uint64_t seed) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "A1";
  r.name = "oracle correctness";
  r.tolerance = "exact rational equality on all 200 graphs";
  NoiseSource rng = NoiseSource(seed).Fork("a1");
  constexpr int kGraphs = 200;
  int mismatches = 0;
  int bad_witness = 0;
  for (int i = 0; i < kGraphs; ++i) {
    const auto n = static_cast<VertexId>(2 + rng.UniformIndex(11));
    const double p = rng.Uniform();
    SimpleGraph g(n);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (rng.Uniform() < p) g.AddEdge(*Edge::Create(u, v, n));
      }
    }
    const DensestResult exact = ExactDensest(g);
    absl::StatusOr<DensestResult> brute = BruteForceDensest(g);
    if (!brute.ok()) return Failed(r, brute.status());
    if (exact.density != brute->density) ++mismatches;
    absl::StatusOr<Density> w = InducedDensity(g, exact.witness);
    if (!w.ok() || *w != exact.density) ++bad_witness;
  }
  r.passed = mismatches == 0 && bad_witness == 0;
  r.measured = absl::StrFormat("%d/%d density mismatches, %d bad witnesses",
                               mismatches, kGraphs, bad_witness);
  r.seconds = Since(start);
  return r;
}

CriterionResult CheckLazySandwich(std::uint64_t seed, SuiteRuns& runs) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "A2";
  r.name = "deterministic lazy-update sandwich";
  r.tolerance = "0 violations of rho_dp <= rho' <= (1+2eta) rho_dp + step "
                "increment";
  NoiseSource rng = NoiseSource(seed).Fork("a2");
  constexpr int kStreams = 50;
  std::int64_t steps = 0;
  std::int64_t violations = 0;
  std::int64_t releases = 0;
  for (int i = 0; i < kStreams; ++i) {
    const auto n = static_cast<VertexId>(100 + rng.UniformIndex(101));
    const int clique = 50 + static_cast<int>(rng.UniformIndex(n / 2 - 49));
    absl::StatusOr<EdgeStream> stream =
        PlantedStream(n, Pairs(clique) + n, clique, seed * 1000 + i);
    if (!stream.ok()) return Failed(r, stream.status());
    ExperimentConfig config;
    config.params.eps = 8.0;
    config.params.eta = 0.25;
    config.zero_noise = true;
    config.options.force_q1 = true;
    config.checkpoint_every = 1;
    config.seed = seed * 1000 + i;
    absl::StatusOr<ExperimentResult> result = RunExperiment(config, *stream);
    if (!result.ok()) return Failed(r, result.status());
    runs.Add(config, *result);
    const double factor = 1.0 + 2.0 * config.params.eta;
    double prev = result->rows.empty() ? 0.0 : *result->rows.front().rho_true;
    for (const MetricsRow& row : result->rows) {
      const double rho = *row.rho_true;
      const double increment = std::max(0.0, rho - prev);
      if (row.rho_dp > rho || rho > factor * row.rho_dp + increment) {
        ++violations;
      }
      prev = rho;
      ++steps;
    }
    releases += static_cast<std::int64_t>(result->releases.size());
  }
  r.passed = violations == 0;
  r.measured = absl::StrFormat("%d violations over %d steps of %d streams "
                               "(%d releases)",
                               violations, steps, kStreams, releases);
  r.seconds = Since(start);
  return r;
}

CriterionResult CheckSubsamplingPreservation(std::uint64_t seed) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "A3";
  r.name = "subsampling preservation";
  r.tolerance = ">= 95% of 50 trials within eta * rho_G";
  constexpr VertexId kN = 1000;
  constexpr int kClique = 201;
  constexpr double kEta = 0.25;
  constexpr int kTrials = 50;
  absl::StatusOr<EdgeStream> stream =
      PlantedStream(kN, Pairs(kClique) + 2 * kN, kClique, seed);
  if (!stream.ok()) return Failed(r, stream.status());
  const SimpleGraph g = ReplayStream(*stream);
  const std::vector<Edge> edges = g.Edges();
  const double rho = ExactDensest(g).density.ToDouble();
  const double q_formula =
      60.0 * std::log(static_cast<double>(kN)) / (rho * kEta * kEta);
  const double q = std::min(1.0, q_formula);

  auto run_trials = [&](double rate, absl::string_view tag) {
    NoiseSource rng = NoiseSource(seed).Fork(tag);
    int good = 0;
    for (int i = 0; i < kTrials; ++i) {
      SimpleGraph sample(kN);
      for (const Edge& e : edges) {
        if (rng.Uniform() < rate) sample.AddEdge(e);
      }
      const double scaled = ExactDensest(sample).density.ToDouble() / rate;
      if (std::fabs(scaled - rho) <= kEta * rho) ++good;
    }
    return good;
  };

  const int good = run_trials(q, "a3");
  r.passed = good * 100 >= 95 * kTrials;
  r.measured = absl::StrFormat("%d/%d trials within tolerance, rho_G=%.4g, "
                               "q=%.4g (formula %.4g)",
                               good, kTrials, rho, q, q_formula);
  if (q_formula >= 1.0) {
    constexpr double kProbe = 0.1;
    const int probe = run_trials(kProbe, "a3-probe");
    r.notes.push_back(absl::StrFormat(
        "A3 note: the formula's q clamps to 1, so the sample is the whole "
        "graph; at q=%.2g instead %d/%d trials fall within eta * rho_G",
        kProbe, probe, kTrials));
  }
  r.seconds = Since(start);
  return r;
}

CriterionResult CheckDecayLaw(std::uint64_t seed, SuiteRuns& runs) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "A5";
  r.name = "q-decay law";
  r.tolerance = "0 decay-bound violations; q_{i+1} <= q_i/(1+2eta) "
                "(relative slack 1e-12)";
  constexpr int kSeeds = 10;
  for (int i = 0; i < kSeeds; ++i) {
    // Dense enough that noisy releases push q well below 1.
    absl::StatusOr<EdgeStream> stream =
        PlantedStream(600, Pairs(300) + 1200, 300, seed * 100 + i);
    if (!stream.ok()) return Failed(r, stream.status());
    ExperimentConfig config;
    config.params.eps = 10.0;
    config.params.eta = 0.5;
    config.measure_true_density = false;
    config.seed = seed * 100 + i;
    absl::StatusOr<ExperimentResult> result = RunExperiment(config, *stream);
    if (!result.ok()) return Failed(r, result.status());
    runs.Add(config, *result);
  }
  r.passed = runs.decay_violations == 0 && runs.q_pair_violations == 0 &&
             runs.q_pairs_checked > 0;
  r.measured = absl::StrFormat(
      "%d decay violations over %d steps of %d paper-mode runs; "
      "%d/%d consecutive sub-1 release pairs violate the factor",
      runs.decay_violations, runs.steps_checked, runs.paper_runs,
      runs.q_pair_violations, runs.q_pairs_checked);
  r.seconds = Since(start);
  return r;
}

CriterionResult CheckEarlyAmplification(std::uint64_t seed, SuiteRuns& runs) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "A6";
  r.name = "early amplification";
  constexpr double kEta = 0.25;
  constexpr double kBaselineC = 0.01;
  const std::int64_t release_cap =
      static_cast<std::int64_t>(
          std::ceil(std::log(3.0 / kEta) / std::log1p(2.0 * kEta))) +
      2;
  r.tolerance = absl::StrFormat(
      "paper: <= %d releases at q=1; baseline: first q<1 step strictly "
      "increasing in n",
      release_cap);
  std::vector<std::string> paper_counts;
  std::vector<std::string> baseline_steps;
  std::vector<std::string> baseline_releases;
  bool paper_ok = true;
  bool baseline_ok = true;
  std::int64_t last_step = 0;
  int paper_never = 0;
  for (VertexId n : {1024, 2048, 4096, 8192}) {
    HardInstanceParams hp;
    hp.n = n;
    absl::StatusOr<HardInstance> inst = GenerateHardInstance(hp, seed + n);
    if (!inst.ok()) return Failed(r, inst.status());
    for (Mode mode : {Mode::kPaper, Mode::kBaseline}) {
      ExperimentConfig config;
      config.params.eps = 1.0;
      config.params.eta = kEta;
      config.params.baseline_c = kBaselineC;
      config.options.mode = mode;
      config.measure_true_density = false;
      config.seed = seed + n;
      absl::StatusOr<ExperimentResult> result =
          RunExperiment(config, inst->stream);
      if (!result.ok()) return Failed(r, result.status());
      runs.Add(config, *result);
      if (mode == Mode::kPaper) {
        paper_counts.push_back(
            absl::StrCat(result->releases_before_q_below_one));
        paper_ok = paper_ok && result->releases_before_q_below_one <= release_cap;
        if (!result->first_q_below_one) ++paper_never;
      } else if (!result->first_q_below_one) {
        baseline_ok = false;
        baseline_steps.push_back("never");
        baseline_releases.push_back(
            absl::StrCat(result->releases_before_q_below_one));
      } else {
        baseline_ok = baseline_ok && *result->first_q_below_one > last_step;
        last_step = *result->first_q_below_one;
        baseline_steps.push_back(absl::StrCat(*result->first_q_below_one));
        baseline_releases.push_back(
            absl::StrCat(result->releases_before_q_below_one));
      }
    }
  }
  r.passed = paper_ok && baseline_ok;
  r.measured = absl::StrFormat(
      "n=1024..8192: paper releases at q=1 [%s]; baseline first q<1 step "
      "[%s] after [%s] releases",
      absl::StrJoin(paper_counts, ","), absl::StrJoin(baseline_steps, ","),
      absl::StrJoin(baseline_releases, ","));
  if (paper_never > 0) {
    r.notes.push_back(absl::StrFormat(
        "A6 note: in %d/4 paper-mode runs q stayed 1 for the whole stream; "
        "the count is then all releases made",
        paper_never));
  }
  r.seconds = Since(start);
  return r;
}

double SpaceBound(const ResolvedParams& params) {
  const DsgParams& p = params.primaries;
  const double n = static_cast<double>(p.n);
  const double c_prime = 1.0;
  return std::max(32.0 * c_prime * p.big_c * n * params.zeta / p.eta,
                  64.0 * c_prime * p.big_c * params.upsilon * n * std::log(n) /
                      (p.eta * p.eta * p.eps));
}

CriterionResult CheckSpaceBound(std::uint64_t seed, SuiteRuns& runs,
                                double big_c, int seeds) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "A7";
  r.name = "space bound";
  r.tolerance = absl::StrFormat(">= 95%% of %d runs with max|F| <= 4x bound",
                                seeds);
  int good = 0;
  double worst_ratio = 0.0;
  std::int64_t worst_f = 0;
  for (int i = 0; i < seeds; ++i) {
    absl::StatusOr<EdgeStream> stream =
        PlantedStream(2000, 20000, 80, seed * 10 + i);
    if (!stream.ok()) return Failed(r, stream.status());
    ExperimentConfig config;
    config.params.eps = 1.0;
    config.params.eta = 0.25;
    config.params.big_c = big_c;
    config.measure_true_density = false;
    config.seed = seed * 10 + i;
    absl::StatusOr<ExperimentResult> result = RunExperiment(config, *stream);
    if (!result.ok()) return Failed(r, result.status());
    runs.Add(config, *result);
    const double bound = SpaceBound(result->resolved);
    const double ratio = static_cast<double>(result->max_sample_size) / bound;
    if (result->max_sample_size <= 4.0 * bound) ++good;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_f = result->max_sample_size;
    }
  }
  r.passed = good * 100 >= 95 * seeds;
  r.measured = absl::StrFormat(
      "%d/%d runs within 4x bound; worst max|F|=%d is %.3g of the bound",
      good, seeds, worst_f, worst_ratio);
  r.seconds = Since(start);
  return r;
}

CriterionResult CheckApproximation(std::uint64_t seed, SuiteRuns& runs,
                                   double big_c, int seeds) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "A8";
  r.name = "end-to-end approximation";
  r.tolerance = absl::StrFormat(
      ">= 90%% of %d runs with 0 releases below rho'/(1+56eta) - 4kappa",
      seeds);
  constexpr double kEta = 0.1;
  int good = 0;
  std::int64_t releases = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double min_raw_ratio = std::numeric_limits<double>::infinity();
  double kappa = 0.0;
  for (int i = 0; i < seeds; ++i) {
    absl::StatusOr<EdgeStream> stream =
        PlantedStream(500, 6000, 60, seed * 10 + 7 + i);
    if (!stream.ok()) return Failed(r, stream.status());
    ExperimentConfig config;
    config.params.eps = 1.0;
    config.params.eta = kEta;
    config.params.big_c = big_c;
    config.seed = seed * 10 + 7 + i;
    config.checkpoint_every = static_cast<std::int64_t>(stream->length()) + 1;
    absl::StatusOr<ExperimentResult> result = RunExperiment(config, *stream);
    if (!result.ok()) return Failed(r, result.status());
    runs.Add(config, *result);
    kappa = result->resolved.kappa;
    int bad = 0;
    for (const MetricsRow& row : result->rows) {
      if (!row.released) continue;
      ++releases;
      const double rhs = *row.rho_true / (1.0 + 56.0 * kEta) - 4.0 * kappa;
      const double got = *row.s_dp_density_true;
      min_slack = std::min(min_slack, got - rhs);
      min_raw_ratio = std::min(min_raw_ratio, got / *row.rho_true);
      if (got < rhs) ++bad;
    }
    if (bad == 0) ++good;
  }
  r.passed = good * 100 >= 90 * seeds;
  r.measured = absl::StrFormat(
      "%d/%d runs clean over %d releases; kappa=%.4g, min slack %.4g, "
      "min density(S_DP)/rho' %.3g",
      good, seeds, releases, kappa, min_slack, min_raw_ratio);
  r.seconds = Since(start);
  return r;
}

CriterionResult CheckLaplaceTail(std::uint64_t seed) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "A9";
  r.name = "Laplace tail";
  r.tolerance = "Pr[|X| >= 3] in 0.0498 +- 0.005";
  NoiseSource src = NoiseSource(seed).Fork("a9");
  constexpr int kSamples = 100000;
  int tail = 0;
  for (int i = 0; i < kSamples; ++i) {
    if (std::fabs(src.Laplace(1.0)) >= 3.0) ++tail;
  }
  const double freq = static_cast<double>(tail) / kSamples;
  r.passed = std::fabs(freq - 0.0498) <= 0.005;
  r.measured = absl::StrFormat("%.5f over %d samples", freq, kSamples);
  r.seconds = Since(start);
  return r;
}

CriterionResult CheckLedgerBudget(std::uint64_t seed, SuiteRuns& runs) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "A4";
  r.name = "privacy ledger budget";
  r.tolerance = "every run: each family <= eps, delta sum <= delta; every "
                "entry matches the amplification rule";

  // Noisy runs over every mode, solver and overlay policy.
  struct Variant {
    Mode mode;
    const char* solver;
    DensifyPolicy densify;
  };
  const Variant variants[] = {
      {Mode::kPaper, "oracle", DensifyPolicy::kLiteral},
      {Mode::kPaper, "oracle", DensifyPolicy::kUniform},
      {Mode::kPaper, "noisy-peeling", DensifyPolicy::kLiteral},
      {Mode::kPaper, "noisy-peeling", DensifyPolicy::kUniform},
      {Mode::kBaseline, "oracle", DensifyPolicy::kLiteral},
      {Mode::kBaseline, "noisy-peeling", DensifyPolicy::kLiteral},
  };
  for (const Variant& v : variants) {
    for (int i = 0; i < 3; ++i) {
      absl::StatusOr<EdgeStream> stream =
          PlantedStream(300, 4000, 50, seed * 31 + i);
      if (!stream.ok()) return Failed(r, stream.status());
      ExperimentConfig config;
      config.params.eps = 4.0;
      config.params.eta = 0.25;
      config.params.baseline_c = 0.05;
      config.solver = v.solver;
      config.options.mode = v.mode;
      config.options.densify = v.densify;
      config.measure_true_density = false;
      config.seed = seed * 31 + i;
      absl::StatusOr<ExperimentResult> result = RunExperiment(config, *stream);
      if (!result.ok()) return Failed(r, result.status());
      runs.Add(config, *result);
    }
  }

  int over_budget = 0;
  int rule_mismatches = 0;
  double worst_svt = 0.0;
  double worst_static = 0.0;
  double worst_delta = 0.0;
  for (const PrivacyLedger& ledger : runs.ledgers) {
    if (!ledger.WithinBudget()) ++over_budget;
    const LedgerTotals t = ledger.Totals();
    worst_svt = std::max(worst_svt, t.eps_svt / ledger.eps_target());
    worst_static = std::max(worst_static, t.eps_static / ledger.eps_target());
    if (ledger.delta_target() > 0.0) {
      worst_delta = std::max(worst_delta, t.delta / ledger.delta_target());
    }
    for (const LedgerEntry& e : ledger.entries()) {
      const LedgerEntry re =
          AmplifiedCost(e.kind, e.q, e.base_eps, e.base_delta, e.timestep);
      if (re.amplified_eps != e.amplified_eps ||
          re.amplified_delta != e.amplified_delta) {
        ++rule_mismatches;
      }
    }
  }
  r.passed = over_budget == 0 && rule_mismatches == 0 && !runs.ledgers.empty();
  r.measured = absl::StrFormat(
      "%d/%d runs over budget, %d rule mismatches; worst fractions of budget: "
      "svt %.3f, static %.3f, delta %.3f",
      over_budget, runs.ledgers.size(), rule_mismatches, worst_svt,
      worst_static, worst_delta);
  r.seconds = Since(start);
  return r;
}

VerifyReport RunVerifySuite(const VerifyOptions& options) {
  VerifyReport report;
  SuiteRuns runs;
  const std::uint64_t seed = options.seed;
  auto emit = [&](CriterionResult c) {
    for (const std::string& note : c.notes) report.notes.push_back(note);
    if (options.on_result) options.on_result(c);
    report.criteria.push_back(std::move(c));
  };
  for (const std::string& id : SuiteMembers(options.level)) {
    if (id == "A1") emit(CheckOracleEquivalence(seed));
    if (id == "A2") emit(CheckLazySandwich(seed, runs));
    if (id == "A3") emit(CheckSubsamplingPreservation(seed));
    if (id == "A5") emit(CheckDecayLaw(seed, runs));
    if (id == "A6") emit(CheckEarlyAmplification(seed, runs));
    if (id == "A7") emit(CheckSpaceBound(seed, runs));
    if (id == "A8") {
      emit(CheckApproximation(seed, runs));
      if (options.c_sensitivity) {
        for (double c : {0.5, 1.0, 2.0}) {
          const CriterionResult space = CheckSpaceBound(seed + 1, runs, c, 5);
          const CriterionResult approx =
              CheckApproximation(seed + 1, runs, c, 5);
          report.notes.push_back(absl::StrFormat(
              "C-sensitivity C=%.1f: A7 %s (%s); A8 %s (%s)", c,
              space.passed ? "pass" : "fail", space.measured,
              approx.passed ? "pass" : "fail", approx.measured));
        }
      }
    }
    if (id == "A9") emit(CheckLaplaceTail(seed));
    if (id == "A4") emit(CheckLedgerBudget(seed, runs));
  }
  return report;
}

}  // namespace dpdsg
