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

#ifndef DPDSG_NOISE_H_
#define DPDSG_NOISE_H_

#include <cstdint>
#include <optional>
#include <random>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace dpdsg {

// Seeded randomness for one consumer. Uniform draws come from the top 53 bits
// of a 64-bit Mersenne Twister, so a seed reproduces the same doubles on every
// platform (std::uniform_real_distribution gives no such guarantee).
//
// In zero-noise mode every Laplace sample is exactly 0. Laplace calls still
// consume a uniform draw, so switching the flag does not shift the sequence
// seen by other draws.
//
// Laplace sampling goes through the inverse CDF on doubles and inherits the
// usual floating-point caveats of the textbook mechanism.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed, bool zero_noise = false);

  // An independent stream derived from (seed, tag). Forks with different
  // tags do not interfere with each other or with the parent.
  NoiseSource Fork(absl::string_view tag) const;

  std::uint64_t seed() const { return seed_; }
  bool zero_noise() const { return zero_noise_; }

  // Uniform on [0, 1).
  double Uniform();
  // Uniform on {0, ..., k - 1}; requires k >= 1. Ignores OverrideUniform.
  std::uint64_t UniformIndex(std::uint64_t k);
  // Laplace(0, scale); requires scale > 0.
  double Laplace(double scale);

  // Debug hook: pin every subsequent Uniform() to `value`.
  void OverrideUniform(std::optional<double> value) {
    uniform_override_ = value;
  }

 private:
  // Uniform on the open interval (0, 1).
  double OpenUniform();

  std::uint64_t seed_;
  bool zero_noise_;
  std::mt19937_64 engine_;
  std::optional<double> uniform_override_;
};

// Laplace(0, scale) with argument checking.
absl::StatusOr<double> SampleLaplace(double scale, NoiseSource& src);

}  // namespace dpdsg

#endif  // DPDSG_NOISE_H_
