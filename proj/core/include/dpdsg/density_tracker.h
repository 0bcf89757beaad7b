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

#ifndef DPDSG_DENSITY_TRACKER_H_
#define DPDSG_DENSITY_TRACKER_H_

#include <cstdint>
#include <vector>

#include "dpdsg/densest.h"
#include "dpdsg/graph.h"

namespace dpdsg {

// A graph under edge insertions and removals that brackets its maximum
// density between cheap bounds and recomputes it exactly only on demand.
//
// Lower bound: the density of the last exact witness in the current graph,
// maintained edge by edge.
// Upper bound: the last exact value, raised on each insertion by
// 1 / (2L + 1) where L is the lower bound at that moment. A set S' that
// becomes strictly densest after inserting one edge has
// |S'| >= 2 rho(S') + 1 > 2L + 1, and its density grew by exactly 1/|S'|.
// Removals never raise the maximum.
//
// Bounds are what callers compare against first; Exact() is paid only when a
// decision falls between them.
class DensityTracker {
 public:
  explicit DensityTracker(VertexId n);

  bool AddEdge(Edge e);
  bool RemoveEdge(Edge e);

  const SimpleGraph& graph() const { return graph_; }

  Density lower_bound() const;
  double upper_bound() const { return upper_; }
  bool is_exact() const { return exact_; }

  // Exact maximum density and maximal witness of the current graph.
  const DensestResult& Exact();

 private:
  void SetWitness(const DensestResult& result);

  SimpleGraph graph_;
  DensestResult last_;
  std::vector<char> in_witness_;
  std::int64_t witness_edges_ = 0;
  double upper_ = 0.0;
  bool exact_ = true;
};

// Edge count of a fixed vertex subset, maintained under insertions.
class SubsetEdgeCounter {
 public:
  SubsetEdgeCounter(const SimpleGraph& g, std::span<const VertexId> subset);

  void OnEdgeAdded(Edge e) {
    if (member_[e.u()] && member_[e.v()]) ++edges_;
  }
  Density density() const;
  std::int64_t size() const { return size_; }

 private:
  std::vector<char> member_;
  std::int64_t size_ = 0;
  std::int64_t edges_ = 0;
};

}  // namespace dpdsg

#endif  // DPDSG_DENSITY_TRACKER_H_
