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

#ifndef DPDSG_SPARSE_VECTOR_H_
#define DPDSG_SPARSE_VECTOR_H_

#include "absl/functional/function_ref.h"
#include "absl/status/statusor.h"
#include "dpdsg/noise.h"

namespace dpdsg {

struct SvtAnswer {
  bool above = false;
  double estimate = 0.0;  // Noisy query value; set only when above.
};

// Single-response sparse vector technique (above-threshold with a noisy
// estimate). The threshold noise xi ~ Lap(3 sensitivity / epsilon) is drawn
// once at creation. Each query draws nu ~ Lap(6 sensitivity / epsilon) and
// answers "above" iff value >= threshold + xi - nu; on "above" it also draws
// Lap(3 sensitivity / epsilon) for the estimate and then refuses further
// queries.
class SparseVectorInstance {
 public:
  static absl::StatusOr<SparseVectorInstance> Create(double epsilon,
                                                     double sensitivity,
                                                     NoiseSource& src);

  absl::StatusOr<SvtAnswer> Query(double value, double threshold,
                                  NoiseSource& src);

  // Same answer and noise consumption as Query(value(), ...), where the
  // caller knows lower <= value() <= upper and value() may be expensive.
  // value() is evaluated only when the bounds cannot decide the comparison
  // or an estimate is needed.
  absl::StatusOr<SvtAnswer> QueryBounded(double lower, double upper,
                                         absl::FunctionRef<double()> value,
                                         double threshold, NoiseSource& src);

  double epsilon() const { return epsilon_; }
  double sensitivity() const { return sensitivity_; }
  double threshold_noise() const { return xi_; }
  double threshold_noise_scale() const { return 3.0 * sensitivity_ / epsilon_; }
  double query_noise_scale() const { return 6.0 * sensitivity_ / epsilon_; }
  bool aborted() const { return aborted_; }

 private:
  SparseVectorInstance(double epsilon, double sensitivity, double xi)
      : epsilon_(epsilon), sensitivity_(sensitivity), xi_(xi) {}

  double epsilon_;
  double sensitivity_;
  double xi_;
  bool aborted_ = false;
};

}  // namespace dpdsg

#endif  // DPDSG_SPARSE_VECTOR_H_
