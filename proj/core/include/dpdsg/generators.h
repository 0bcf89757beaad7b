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

#ifndef DPDSG_GENERATORS_H_
#define DPDSG_GENERATORS_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "dpdsg/graph.h"

namespace dpdsg {

// Many small cliques plus one planted clique that grows while the small
// cliques stream in. Small cliques have size ceil(n^(1/6)), the planted clique
// reaches ceil(n^(1/3)), and there are ceil(count_scale * n^(2/3) * ln n)
// small cliques.
struct HardInstanceParams {
  VertexId n = 0;
  int growth_steps = 8;
  double count_scale = 1.0;
};

struct HardInstanceShape {
  int small_clique_size = 0;
  int planted_size = 0;
  std::int64_t small_clique_count = 0;
  // Small cliques get disjoint vertex sets only if they fit next to the
  // planted clique; otherwise each picks a random subset and they overlap.
  bool disjoint = false;
};

absl::StatusOr<HardInstanceShape> ComputeHardInstanceShape(
    const HardInstanceParams& params);

// The last planted_size vertices of the returned `planted` order form the
// final planted clique; the stream is a pure function of (params, seed).
struct HardInstance {
  EdgeStream stream;
  HardInstanceShape shape;
  std::vector<VertexId> planted;
};

absl::StatusOr<HardInstance> GenerateHardInstance(
    const HardInstanceParams& params, std::uint64_t seed);

enum class RandomModel { kErdosRenyi, kPlantedClique };

struct RandomStreamParams {
  VertexId n = 0;
  std::int64_t m = 0;  // Distinct edges in the stream.
  RandomModel model = RandomModel::kErdosRenyi;
  int clique_size = 0;  // Planted-clique model only.
};

// m distinct edge insertions in random order. Under the planted-clique model
// the clique's edges are part of the m and the rest are uniform background.
absl::StatusOr<EdgeStream> GenerateRandomStream(const RandomStreamParams& params,
                                                std::uint64_t seed);

// Smallest k >= 1 with k^p >= n.
std::int64_t IntegerRootCeil(std::int64_t n, int p);

}  // namespace dpdsg

#endif  // DPDSG_GENERATORS_H_
