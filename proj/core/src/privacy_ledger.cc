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

#include "dpdsg/privacy_ledger.h"

#include "absl/strings/str_format.h"

namespace dpdsg {
namespace {

constexpr double kRelativeSlack = 1e-9;

bool Within(double total, double target) {
  return total <= target * (1.0 + kRelativeSlack) + 1e-300;
}

}  // namespace

absl::string_view MechanismKindName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kSvtEpoch:
      return "svt-epoch";
    case MechanismKind::kStaticCall:
      return "static-call";
    case MechanismKind::kCounter:
      return "counter";
  }
  return "unknown";
}

LedgerEntry AmplifiedCost(MechanismKind kind, double q, double base_eps,
                          double base_delta, std::int64_t timestep) {
  LedgerEntry e;
  e.kind = kind;
  e.q = q;
  e.base_eps = base_eps;
  e.base_delta = base_delta;
  e.timestep = timestep;
  if (q >= 1.0) {
    e.amplified_eps = base_eps;
    e.amplified_delta = base_delta;
  } else {
    e.amplified_eps = 2.0 * q * base_eps;
    e.amplified_delta = q * base_delta;
  }
  return e;
}

PrivacyLedger::PrivacyLedger(double eps_target, double delta_target,
                             bool strict)
    : eps_target_(eps_target), delta_target_(delta_target), strict_(strict) {}

absl::StatusOr<LedgerEntry> PrivacyLedger::Record(MechanismKind kind, double q,
                                                  double base_eps,
                                                  double base_delta,
                                                  std::int64_t timestep) {
  if (!(q > 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("subsampling rate must lie in (0, 1], got %g", q));
  }
  if (base_eps < 0.0 || base_delta < 0.0) {
    return absl::InvalidArgumentError("privacy parameters must be >= 0");
  }
  const LedgerEntry e = AmplifiedCost(kind, q, base_eps, base_delta, timestep);
  LedgerTotals next = totals_;
  switch (kind) {
    case MechanismKind::kSvtEpoch:
      next.eps_svt += e.amplified_eps;
      break;
    case MechanismKind::kStaticCall:
      next.eps_static += e.amplified_eps;
      break;
    case MechanismKind::kCounter:
      next.eps_counter += e.amplified_eps;
      break;
  }
  next.delta += e.amplified_delta;
  if (strict_ && !WithinBudget(next, eps_target_, delta_target_)) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "%s at t=%d would exceed the privacy budget (eps=%g, delta=%g)",
        MechanismKindName(kind), timestep, eps_target_, delta_target_));
  }
  totals_ = next;
  entries_.push_back(e);
  return e;
}

bool PrivacyLedger::WithinBudget(const LedgerTotals& totals, double eps_target,
                                 double delta_target) {
  return Within(totals.eps_svt, eps_target) &&
         Within(totals.eps_static, eps_target) &&
         Within(totals.eps_counter, eps_target) &&
         Within(totals.delta, delta_target);
}

bool PrivacyLedger::WithinBudget() const {
  return WithinBudget(totals_, eps_target_, delta_target_);
}

void PrivacyLedger::WriteCsv(std::ostream& out) const {
  out << "timestep,kind,q,base_eps,base_delta,amplified_eps,amplified_delta\n";
  for (const LedgerEntry& e : entries_) {
    out << absl::StrFormat("%d,%s,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                           e.timestep, MechanismKindName(e.kind), e.q,
                           e.base_eps, e.base_delta, e.amplified_eps,
                           e.amplified_delta);
  }
}

}  // namespace dpdsg
