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

#ifndef DPDSG_PRIVACY_LEDGER_H_
#define DPDSG_PRIVACY_LEDGER_H_

#include <cstdint>
#include <ostream>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace dpdsg {

enum class MechanismKind {
  kSvtEpoch,    // One sparse-vector instance, charged for its whole epoch.
  kStaticCall,  // One call to the static private densest-subgraph solver.
  kCounter,     // Continual edge counter (baseline schedule only).
};

absl::string_view MechanismKindName(MechanismKind kind);

// One mechanism invocation. A mechanism that is (eps, delta)-DP on its input,
// run on an independent q-subsample with q < 1, is charged (2 q eps, q delta);
// at q = 1 it is charged (eps, delta).
struct LedgerEntry {
  MechanismKind kind = MechanismKind::kSvtEpoch;
  double q = 1.0;
  double base_eps = 0.0;
  double base_delta = 0.0;
  double amplified_eps = 0.0;
  double amplified_delta = 0.0;
  std::int64_t timestep = 0;
};

struct LedgerTotals {
  double eps_svt = 0.0;
  double eps_static = 0.0;
  double eps_counter = 0.0;
  double delta = 0.0;
};

// Append-only accounting of amplified privacy costs. SVT epochs and static
// calls are summed separately: each family is budgeted eps on its own, for
// (2 eps, delta) overall.
//
// By default the ledger only monitors. In strict mode Record() refuses an
// entry that would push a family past its budget.
class PrivacyLedger {
 public:
  PrivacyLedger(double eps_target, double delta_target, bool strict = false);

  absl::StatusOr<LedgerEntry> Record(MechanismKind kind, double q,
                                     double base_eps, double base_delta,
                                     std::int64_t timestep);

  LedgerTotals Totals() const { return totals_; }
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  double eps_target() const { return eps_target_; }
  double delta_target() const { return delta_target_; }

  // Each family within eps and the delta sum within delta, up to a relative
  // 1e-9 allowance for floating-point summation.
  bool WithinBudget() const;
  static bool WithinBudget(const LedgerTotals& totals, double eps_target,
                           double delta_target);

  // Columns: timestep,kind,q,base_eps,base_delta,amplified_eps,amplified_delta
  void WriteCsv(std::ostream& out) const;

 private:
  double eps_target_;
  double delta_target_;
  bool strict_;
  std::vector<LedgerEntry> entries_;
  LedgerTotals totals_;
};

// The amplification rule alone, for recomputation checks.
LedgerEntry AmplifiedCost(MechanismKind kind, double q, double base_eps,
                          double base_delta, std::int64_t timestep);

}  // namespace dpdsg

#endif  // DPDSG_PRIVACY_LEDGER_H_
