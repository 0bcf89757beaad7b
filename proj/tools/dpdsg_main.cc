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

// dpdsg: generate streams, run continual-release experiments, calibrate
// static solvers and run the acceptance suites.
//
//   dpdsg gen --generator hard-instance --n 4096 --seed 3 --out s.txt
//   dpdsg run --stream s.txt --eps 1 --eta 0.25 --out-dir out/
//   dpdsg verify --level full --json report.json
//   dpdsg calibrate --solver noisy-peeling --n 200 --eps 1
//
// Shared options may also come from a flat key=value file given with
// --config; flags on the command line win.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpdsg/continual_dsg.h"
#include "dpdsg/experiment.h"
#include "dpdsg/static_solver.h"
#include "dpdsg/stream_io.h"
#include "dpdsg/verify.h"
#include "nlohmann/json.hpp"

namespace {

struct Flags {
  dpdsg::StreamSpec stream;
  dpdsg::ExperimentConfig experiment;
  std::string mode = "paper";
  std::string densify = "literal";
  double kappa = -1.0;
  std::string out;
  std::string out_dir;
  std::string level = "fast";
  std::string json;
  int trials = 20;
  bool no_measure = false;
};

int Fail(const absl::Status& status) {
  std::fprintf(stderr, "dpdsg: %s\n", std::string(status.message()).c_str());
  return status.code() == absl::StatusCode::kInvalidArgument ? 2 : 1;
}

// Folds the string-valued flags into the experiment config.
absl::Status Finalize(Flags& f) {
  absl::StatusOr<dpdsg::Mode> mode = dpdsg::ParseMode(f.mode);
  if (!mode.ok()) return mode.status();
  absl::StatusOr<dpdsg::DensifyPolicy> densify =
      dpdsg::ParseDensifyPolicy(f.densify);
  if (!densify.ok()) return densify.status();
  f.experiment.options.mode = *mode;
  f.experiment.options.densify = *densify;
  if (f.kappa >= 0) f.experiment.params.kappa_override = f.kappa;
  f.experiment.measure_true_density = !f.no_measure;
  return absl::OkStatus();
}

int Gen(Flags& f) {
  absl::StatusOr<dpdsg::EdgeStream> s =
      dpdsg::LoadStream(f.stream, f.experiment.seed);
  if (!s.ok()) return Fail(s.status());
  if (f.out.empty() || f.out == "-") {
    dpdsg::WriteEdgeStream(*s, std::cout);
    return 0;
  }
  if (absl::Status st = dpdsg::WriteEdgeStreamFile(*s, f.out); !st.ok()) {
    return Fail(st);
  }
  std::fprintf(stderr, "wrote %zu updates on n=%d to %s\n", s->length(), s->n,
               f.out.c_str());
  return 0;
}

int Run(Flags& f) {
  if (absl::Status st = Finalize(f); !st.ok()) return Fail(st);
  absl::StatusOr<dpdsg::EdgeStream> s =
      dpdsg::LoadStream(f.stream, f.experiment.seed);
  if (!s.ok()) return Fail(s.status());
  absl::StatusOr<dpdsg::ExperimentResult> r =
      dpdsg::RunExperiment(f.experiment, *s);
  if (!r.ok()) return Fail(r.status());
  if (!f.out_dir.empty()) {
    if (absl::Status st = dpdsg::WriteExperimentOutputs(*r, f.out_dir);
        !st.ok()) {
      return Fail(st);
    }
  }
  for (const auto& [key, value] : r->metadata) {
    std::printf("%s=%s\n", key.c_str(), value.c_str());
  }
  return 0;
}

int Verify(Flags& f) {
  absl::StatusOr<dpdsg::VerifyLevel> level = dpdsg::ParseVerifyLevel(f.level);
  if (!level.ok()) return Fail(level.status());
  dpdsg::VerifyOptions options;
  options.level = *level;
  options.seed = f.experiment.seed;
  options.on_result = [](const dpdsg::CriterionResult& r) {
    dpdsg::VerifyReport one;
    one.criteria.push_back(r);
    std::printf("%s\n", one.Lines()[0].c_str());
    std::fflush(stdout);
  };
  const dpdsg::VerifyReport report = dpdsg::RunVerifySuite(options);
  for (const std::string& note : report.notes) {
    std::printf("note: %s\n", note.c_str());
  }
  if (!f.json.empty()) {
    nlohmann::json j;
    j["level"] = f.level;
    j["seed"] = options.seed;
    j["passed"] = report.AllPassed();
    for (const dpdsg::CriterionResult& c : report.criteria) {
      j["criteria"].push_back({{"id", c.id},
                               {"name", c.name},
                               {"passed", c.passed},
                               {"measured", c.measured},
                               {"tolerance", c.tolerance},
                               {"seconds", c.seconds},
                               {"notes", c.notes}});
    }
    j["notes"] = report.notes;
    std::ofstream out(f.json);
    out << j.dump(2) << "\n";
    if (!out) return Fail(absl::UnavailableError("cannot write " + f.json));
  }
  return report.AllPassed() ? 0 : 1;
}

int Calibrate(Flags& f) {
  absl::StatusOr<std::unique_ptr<dpdsg::StaticDsgSolver>> solver =
      dpdsg::MakeStaticSolver(f.experiment.solver,
                              f.experiment.solver_options);
  if (!solver.ok()) return Fail(solver.status());
  absl::StatusOr<dpdsg::CalibrationResult> r = dpdsg::EffectiveZetaCalibration(
      **solver, f.stream.n, f.experiment.params.eps, f.trials,
      f.experiment.seed, f.experiment.zero_noise);
  if (!r.ok()) return Fail(r.status());
  const dpdsg::StaticSolverContract& c = (*solver)->contract();
  std::printf("solver=%s\n", c.name.c_str());
  std::printf("n=%d\n", f.stream.n);
  std::printf("eps=%.17g\n", f.experiment.params.eps);
  std::printf("trials=%d\n", r->trials);
  std::printf("calibrated_zeta=%.17g\n", r->zeta);
  std::printf("contract_zeta=%.17g\n",
              c.zeta(f.stream.n, f.experiment.params.eps,
                     f.experiment.params.delta, c.alpha));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Flags f;
  dpdsg::DsgParams& p = f.experiment.params;

  CLI::App app{"Differentially private densest subgraph under continual release"};
  app.set_config("--config", "", "Flat key=value file of shared options");
  app.require_subcommand(1);

  app.add_option("--stream", f.stream.path, "Edge stream file (overrides --generator)");
  app.add_option("--generator", f.stream.generator,
                 "hard-instance | erdos-renyi | planted-clique");
  app.add_option("--n", f.stream.n, "Vertices for generators and calibration");
  app.add_option("--m", f.stream.m, "Distinct edges for random generators");
  app.add_option("--clique-size", f.stream.clique_size, "Planted clique size");
  app.add_option("--growth-steps", f.stream.growth_steps,
                 "Hard instance: planted-clique growth phases");
  app.add_option("--count-scale", f.stream.count_scale,
                 "Hard instance: multiplier on the small-clique count");
  app.add_option("--eps", p.eps, "Privacy parameter epsilon");
  app.add_option("--delta", p.delta, "Privacy parameter delta");
  app.add_option("--eta", p.eta, "Approximation parameter eta");
  app.add_option("--c", p.c, "Failure-probability exponent");
  app.add_option("--big-c", p.big_c, "Constant C in kappa");
  app.add_option("--baseline-c", p.baseline_c,
                 "Constant in the baseline rate schedule");
  app.add_option("--kappa", f.kappa, "Override kappa (>= 0)");
  app.add_option("--solver", f.experiment.solver, "oracle | noisy-peeling")
      ->check(CLI::IsMember({"oracle", "noisy-peeling"}));
  app.add_option("--peeling-eta", f.experiment.solver_options.peeling_eta,
                 "Noisy peeling round ratio");
  app.add_option("--peeling-zeta-scale",
                 f.experiment.solver_options.peeling_zeta_scale,
                 "Noisy peeling: zeta = scale * ln(n) / eps");
  app.add_option("--mode", f.mode, "paper | baseline")
      ->check(CLI::IsMember({"paper", "baseline"}));
  app.add_option("--densify-h", f.densify, "literal | uniform")
      ->check(CLI::IsMember({"literal", "uniform"}));
  app.add_flag("--zero-noise", f.experiment.zero_noise,
               "Replace every noise draw with 0");
  app.add_flag("--force-q1", f.experiment.options.force_q1,
               "Never subsample (q stays 1)");
  app.add_flag("--strict-ledger", f.experiment.options.strict_ledger,
               "Abort when the ledger would exceed budget");
  app.add_option("--seed", f.experiment.seed, "Root seed");
  app.add_option("--checkpoint-every", f.experiment.checkpoint_every,
                 "Steps between exact density checkpoints")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-measure", f.no_measure,
               "Skip exact true-density measurements");

  CLI::App* gen = app.add_subcommand("gen", "Write an edge stream file");
  gen->fallthrough();
  gen->add_option("--out", f.out, "Output path ('-' for stdout)");

  CLI::App* run = app.add_subcommand("run", "Run one continual-release experiment");
  run->fallthrough();
  run->add_option("--out-dir", f.out_dir, "Directory for CSV outputs");

  CLI::App* verify = app.add_subcommand("verify", "Run an acceptance suite");
  verify->fallthrough();
  verify->add_option("--level", f.level, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--json", f.json, "Also write the report as JSON");

  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Estimate a static solver's additive error");
  calibrate->fallthrough();
  calibrate->add_option("--trials", f.trials, "Trials per clique size");

  CLI11_PARSE(app, argc, argv);

  if (*gen) return Gen(f);
  if (*run) return Run(f);
  if (*verify) return Verify(f);
  return Calibrate(f);
}
