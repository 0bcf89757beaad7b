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

#ifndef DPDSG_CONTINUAL_COUNTER_H_
#define DPDSG_CONTINUAL_COUNTER_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "dpdsg/noise.h"

namespace dpdsg {

// Binary-tree continual counter: releases a noisy running sum after every
// step. Each step's contribution lands in one dyadic partial sum per level,
// and every partial sum gets Laplace(levels / epsilon), so the whole output
// sequence is epsilon-DP for unit-sensitivity increments.
class ContinualCounter {
 public:
  static absl::StatusOr<ContinualCounter> Create(double epsilon,
                                                 std::int64_t max_steps,
                                                 NoiseSource src);

  // Adds x for the next step and returns the noisy running total. Fails once
  // max_steps increments have been consumed.
  absl::StatusOr<double> Add(double x);

  std::int64_t steps() const { return t_; }
  int levels() const { return levels_; }
  double noise_scale() const { return levels_ / epsilon_; }

 private:
  ContinualCounter(double epsilon, std::int64_t max_steps, int levels,
                   NoiseSource src);

  double epsilon_;
  std::int64_t max_steps_;
  int levels_;
  NoiseSource src_;
  std::int64_t t_ = 0;
  std::vector<double> exact_;  // Exact partial sum per level.
  std::vector<double> noisy_;
};

}  // namespace dpdsg

#endif  // DPDSG_CONTINUAL_COUNTER_H_
