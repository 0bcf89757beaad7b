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

#include "dpdsg/generators.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "dpdsg/densest.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpdsg {
namespace {

TEST(IntegerRootCeilTest, Examples) {
  EXPECT_EQ(IntegerRootCeil(1, 3), 1);
  EXPECT_EQ(IntegerRootCeil(4096, 6), 4);
  EXPECT_EQ(IntegerRootCeil(4097, 6), 5);
  EXPECT_EQ(IntegerRootCeil(4096, 3), 16);
  EXPECT_EQ(IntegerRootCeil(1000, 3), 10);
  EXPECT_EQ(IntegerRootCeil(1001, 3), 11);
}

TEST(HardInstanceTest, ShapeAt4096) {
  const HardInstanceShape s = *ComputeHardInstanceShape({.n = 4096});
  EXPECT_EQ(s.small_clique_size, 4);
  EXPECT_EQ(s.planted_size, 16);
  EXPECT_EQ(s.small_clique_count,
            static_cast<std::int64_t>(
                std::ceil(std::pow(4096.0, 2.0 / 3.0) * std::log(4096.0))));
  EXPECT_FALSE(s.disjoint);
}

TEST(HardInstanceTest, TooSmallIsRejected) {
  EXPECT_FALSE(ComputeHardInstanceShape({.n = 64}).ok());
  EXPECT_TRUE(ComputeHardInstanceShape({.n = 65}).ok());
}

TEST(HardInstanceTest, PlantedCliqueIsPresentAndDensest) {
  for (std::uint64_t seed : {1, 2}) {
    const HardInstance h = *GenerateHardInstance({.n = 729}, seed);
    EXPECT_TRUE(h.stream.CheckLengthBound(2.0).ok());
    const SimpleGraph g = ReplayStream(h.stream);
    ASSERT_GE(h.planted.size(), static_cast<std::size_t>(h.shape.planted_size));
    const std::vector<VertexId> clique(h.planted.end() - h.shape.planted_size,
                                       h.planted.end());
    const Density d = *InducedDensity(g, clique);
    const int k = h.shape.planted_size;
    EXPECT_EQ(d, *Density::Create(static_cast<std::int64_t>(k) * (k - 1) / 2, k));
    EXPECT_GE(ExactDensest(g).density, d);
  }
}

TEST(HardInstanceTest, Deterministic) {
  const HardInstance a = *GenerateHardInstance({.n = 200}, 7);
  const HardInstance b = *GenerateHardInstance({.n = 200}, 7);
  const HardInstance c = *GenerateHardInstance({.n = 200}, 8);
  EXPECT_EQ(a.stream.updates, b.stream.updates);
  EXPECT_NE(a.stream.updates, c.stream.updates);
}

TEST(RandomStreamTest, CompleteGraph) {
  const EdgeStream s = *GenerateRandomStream({.n = 10, .m = 45}, 1);
  EXPECT_EQ(s.length(), 45u);
  EXPECT_EQ(ReplayStream(s).num_edges(), 45);
}

TEST(RandomStreamTest, RejectsOversubscription) {
  EXPECT_FALSE(GenerateRandomStream({.n = 10, .m = 46}, 1).ok());
  EXPECT_FALSE(GenerateRandomStream({.n = 10,
                                     .m = 20,
                                     .model = RandomModel::kPlantedClique,
                                     .clique_size = 8},
                                    1)
                   .ok());
}

TEST(RandomStreamTest, DistinctEdgesProperty) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const VertexId n = 5 + static_cast<VertexId>(rng() % 60);
    const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
    const std::int64_t m = static_cast<std::int64_t>(rng() % (pairs + 1));
    const EdgeStream s = *GenerateRandomStream({.n = n, .m = m}, trial);
    EXPECT_EQ(s.length(), static_cast<std::size_t>(m));
    EXPECT_EQ(ReplayStream(s).num_edges(), m);
  }
}

TEST(RandomStreamTest, PlantedCliqueIsDensest) {
  const EdgeStream s = *GenerateRandomStream({.n = 200,
                                              .m = 1225 + 200,
                                              .model = RandomModel::kPlantedClique,
                                              .clique_size = 50},
                                             4);
  const DensestResult r = ExactDensest(ReplayStream(s));
  EXPECT_GE(r.density.ToDouble(), 24.5);
  EXPECT_LE(r.density.ToDouble(), 26.0);
}

}  // namespace
}  // namespace dpdsg
