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

#ifndef DPDSG_VERIFY_H_
#define DPDSG_VERIFY_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpdsg/experiment.h"
#include "dpdsg/privacy_ledger.h"

namespace dpdsg {

enum class VerifyLevel { kFast, kFull };

absl::StatusOr<VerifyLevel> ParseVerifyLevel(absl::string_view name);

struct CriterionResult {
  std::string id;    // "A1" ... "A9"
  std::string name;
  bool passed = false;
  std::string measured;
  std::string tolerance;
  double seconds = 0.0;
  std::vector<std::string> notes;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  std::vector<std::string> notes;

  bool AllPassed() const;
  // One line per criterion: "A1 PASS name: measured (tolerance) [secs]".
  std::vector<std::string> Lines() const;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::kFast;
  std::uint64_t seed = 1;
  // Full level only: rerun the C-dependent checks at C in {0.5, 1, 2}.
  bool c_sensitivity = true;
  // Called as each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

// The criteria each level runs, in execution order.
std::vector<std::string> SuiteMembers(VerifyLevel level);

VerifyReport RunVerifySuite(const VerifyOptions& options);

// Everything the suite's runs leave behind for the cross-run criteria.
struct SuiteRuns {
  std::vector<PrivacyLedger> ledgers;
  std::int64_t runs = 0;
  std::int64_t paper_runs = 0;
  std::int64_t steps_checked = 0;
  std::int64_t decay_violations = 0;
  std::int64_t consistency_violations = 0;
  // Consecutive releases that both left q below 1.
  std::int64_t q_pairs_checked = 0;
  std::int64_t q_pair_violations = 0;

  void Add(const ExperimentConfig& config, const ExperimentResult& result);
};

// Individual criteria. Each may append its runs to `runs`.
CriterionResult CheckOracleEquivalence(std::uint64_t seed);
CriterionResult CheckLazySandwich(std::uint64_t seed, SuiteRuns& runs);
CriterionResult CheckSubsamplingPreservation(std::uint64_t seed);
CriterionResult CheckLedgerBudget(std::uint64_t seed, SuiteRuns& runs);
CriterionResult CheckDecayLaw(std::uint64_t seed, SuiteRuns& runs);
CriterionResult CheckEarlyAmplification(std::uint64_t seed, SuiteRuns& runs);
CriterionResult CheckSpaceBound(std::uint64_t seed, SuiteRuns& runs,
                                double big_c = 1.0, int seeds = 20);
CriterionResult CheckApproximation(std::uint64_t seed, SuiteRuns& runs,
                                   double big_c = 1.0, int seeds = 20);
CriterionResult CheckLaplaceTail(std::uint64_t seed);

// Space bound on the stored sample, with leading constant 1.
double SpaceBound(const ResolvedParams& params);

}  // namespace dpdsg

#endif  // DPDSG_VERIFY_H_
