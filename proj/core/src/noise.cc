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

#include "dpdsg/noise.h"

#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"

namespace dpdsg {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// FNV-1a; stable across builds, unlike std::hash.
std::uint64_t HashTag(absl::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

constexpr double kTwoToMinus53 = 1.0 / 9007199254740992.0;

}  // namespace

NoiseSource::NoiseSource(std::uint64_t seed, bool zero_noise)
    : seed_(seed), zero_noise_(zero_noise), engine_(SplitMix64(seed)) {}

NoiseSource NoiseSource::Fork(absl::string_view tag) const {
  return NoiseSource(SplitMix64(seed_ ^ HashTag(tag)), zero_noise_);
}

double NoiseSource::Uniform() {
  const double u = static_cast<double>(engine_() >> 11) * kTwoToMinus53;
  return uniform_override_.value_or(u);
}

std::uint64_t NoiseSource::UniformIndex(std::uint64_t k) {
  // Rejection keeps the result exactly uniform for any k.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % k;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % k;
}

double NoiseSource::OpenUniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoToMinus53;
}

double NoiseSource::Laplace(double scale) {
  const double u = OpenUniform() - 0.5;
  if (zero_noise_) return 0.0;
  // Inverse CDF; |u| < 1/2 strictly, so the log argument stays positive.
  return -scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::fabs(u));
}

absl::StatusOr<double> SampleLaplace(double scale, NoiseSource& src) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Laplace scale must be positive and finite, got %g",
                        scale));
  }
  return src.Laplace(scale);
}

}  // namespace dpdsg
