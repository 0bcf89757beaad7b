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

#ifndef DPDSG_DENSEST_H_
#define DPDSG_DENSEST_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpdsg/graph.h"

namespace dpdsg {

struct DensestResult {
  Density density;
  std::vector<VertexId> witness;  // Sorted ascending, nonempty.
};

// Maximum density over all nonempty vertex subsets, computed exactly.
//
// Parametric search on Goldberg's cut network: for a guess a/b the network
//   s -> v : b * deg(v),   v -> t : 2a,   u <-> v : b   (per edge)
// has min cut 2mb - 2 max_S (b|E(S)| - a|S|), so a cut below 2mb exhibits a
// strictly denser set, which becomes the next guess. Starting from the better
// of the peeling bound and `hint`, the guess increases strictly until no
// denser set exists. All capacities are integers; no tolerance is involved.
//
// The witness is the maximal densest subgraph (the union of all densest
// subsets). An edgeless graph yields density 0 with witness {0}.
DensestResult ExactDensest(const SimpleGraph& g,
                           std::span<const VertexId> hint = {});

// Exhaustive search over all 2^n - 1 subsets, n <= 20. Ties go to the
// smallest subset, then the lexicographically smallest vertex list.
absl::StatusOr<DensestResult> BruteForceDensest(const SimpleGraph& g);

inline constexpr VertexId kBruteForceMaxVertices = 20;

// Greedy min-degree peeling; returns the densest suffix of the removal order.
// At least half the maximum density.
DensestResult CharikarPeel(const SimpleGraph& g);

}  // namespace dpdsg

#endif  // DPDSG_DENSEST_H_
