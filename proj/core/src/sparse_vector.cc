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

#include "dpdsg/sparse_vector.h"

#include <cmath>
#include <optional>

#include "absl/strings/str_format.h"

namespace dpdsg {

absl::StatusOr<SparseVectorInstance> SparseVectorInstance::Create(
    double epsilon, double sensitivity, NoiseSource& src) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("SVT epsilon must be positive, got %g", epsilon));
  }
  if (!(sensitivity >= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("SVT sensitivity bound must be >= 1, got %g",
                        sensitivity));
  }
  const double xi = src.Laplace(3.0 * sensitivity / epsilon);
  return SparseVectorInstance(epsilon, sensitivity, xi);
}

absl::StatusOr<SvtAnswer> SparseVectorInstance::Query(double value,
                                                      double threshold,
                                                      NoiseSource& src) {
  return QueryBounded(value, value, [value] { return value; }, threshold, src);
}

absl::StatusOr<SvtAnswer> SparseVectorInstance::QueryBounded(
    double lower, double upper, absl::FunctionRef<double()> value,
    double threshold, NoiseSource& src) {
  if (aborted_) {
    return absl::FailedPreconditionError(
        "sparse vector instance already answered above");
  }
  const double nu = src.Laplace(query_noise_scale());
  const double cutoff = threshold + xi_ - nu;
  if (upper < cutoff) return SvtAnswer{};
  std::optional<double> exact;
  if (lower < cutoff) {
    exact = value();
    if (*exact < cutoff) return SvtAnswer{};
  }
  aborted_ = true;
  const double v = exact ? *exact : value();
  return SvtAnswer{true, v + src.Laplace(threshold_noise_scale())};
}

}  // namespace dpdsg
