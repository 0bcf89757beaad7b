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

#include "dpdsg/continual_counter.h"

#include <bit>

namespace dpdsg {

absl::StatusOr<ContinualCounter> ContinualCounter::Create(
    double epsilon, std::int64_t max_steps, NoiseSource src) {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("counter epsilon must be > 0");
  }
  if (max_steps < 1) {
    return absl::InvalidArgumentError("counter needs max_steps >= 1");
  }
  const int levels =
      std::bit_width(static_cast<std::uint64_t>(max_steps));
  return ContinualCounter(epsilon, max_steps, levels, std::move(src));
}

ContinualCounter::ContinualCounter(double epsilon, std::int64_t max_steps,
                                   int levels, NoiseSource src)
    : epsilon_(epsilon),
      max_steps_(max_steps),
      levels_(levels),
      src_(std::move(src)),
      exact_(levels, 0.0),
      noisy_(levels, 0.0) {}

absl::StatusOr<double> ContinualCounter::Add(double x) {
  if (t_ >= max_steps_) {
    return absl::OutOfRangeError("continual counter horizon exhausted");
  }
  ++t_;
  const auto t = static_cast<std::uint64_t>(t_);
  const int low = std::countr_zero(t);
  double merged = x;
  for (int j = 0; j < low; ++j) {
    merged += exact_[j];
    exact_[j] = 0.0;
    noisy_[j] = 0.0;
  }
  exact_[low] = merged;
  noisy_[low] = merged + src_.Laplace(noise_scale());
  double total = 0.0;
  for (int j = 0; j < levels_; ++j) {
    if ((t >> j) & 1u) total += noisy_[j];
  }
  return total;
}

}  // namespace dpdsg
