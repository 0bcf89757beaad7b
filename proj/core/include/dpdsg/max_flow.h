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

#ifndef DPDSG_MAX_FLOW_H_
#define DPDSG_MAX_FLOW_H_

#include <cstdint>
#include <vector>

namespace dpdsg {

// Dinic's blocking-flow max-flow on integer capacities. The topology is fixed
// once arcs are added; capacities may be reassigned between Solve() calls,
// which is what the parametric densest-subgraph search needs.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  // Adds arcs u->v and v->u with the given capacities. Returns a handle for
  // SetCapacities().
  int AddArcPair(int u, int v, std::int64_t forward, std::int64_t backward);
  void SetCapacities(int handle, std::int64_t forward, std::int64_t backward);

  // Computes a maximum flow from scratch.
  std::int64_t Solve(int source, int sink);

  // Residual-graph queries, valid after Solve().
  // Nodes reachable from `source`; the smallest min-cut source side.
  std::vector<char> ReachableFrom(int source) const;
  // Nodes that can still reach `sink`; their complement is the largest
  // min-cut source side.
  std::vector<char> CanReach(int sink) const;

  int num_nodes() const { return num_nodes_; }

 private:
  void Build();
  bool Levelize(int source, int sink);
  std::int64_t Push(int v, int sink, std::int64_t limit);

  int num_nodes_;
  bool built_ = false;

  // Pending arc pairs.
  std::vector<int> pair_u_;
  std::vector<int> pair_v_;
  std::vector<std::int64_t> pair_forward_;
  std::vector<std::int64_t> pair_backward_;

  // CSR residual graph.
  std::vector<int> offset_;
  std::vector<int> head_;
  std::vector<int> reverse_;
  std::vector<std::int64_t> residual_;
  std::vector<int> pair_pos_;  // Position of each pair's forward arc.

  std::vector<int> level_;
  std::vector<int> next_arc_;
};

}  // namespace dpdsg

#endif  // DPDSG_MAX_FLOW_H_
