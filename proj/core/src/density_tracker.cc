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

#include "dpdsg/density_tracker.h"

#include <algorithm>

namespace dpdsg {
namespace {

// Absorbs rounding in the running sum so the bound stays a true upper bound.
constexpr double kUpperSlack = 1e-9;

}  // namespace

DensityTracker::DensityTracker(VertexId n)
    : graph_(n), in_witness_(n, 0) {
  last_.density = Density();
  last_.witness = {0};
  in_witness_[0] = 1;
}

Density DensityTracker::lower_bound() const {
  return *Density::Create(witness_edges_,
                          static_cast<std::int64_t>(last_.witness.size()));
}

bool DensityTracker::AddEdge(Edge e) {
  const double lower = lower_bound().ToDouble();
  if (!graph_.AddEdge(e)) return false;
  if (in_witness_[e.u()] && in_witness_[e.v()]) ++witness_edges_;
  upper_ += 1.0 / (2.0 * lower + 1.0) + kUpperSlack;
  exact_ = false;
  return true;
}

bool DensityTracker::RemoveEdge(Edge e) {
  if (!graph_.RemoveEdge(e)) return false;
  if (in_witness_[e.u()] && in_witness_[e.v()]) --witness_edges_;
  exact_ = false;
  return true;
}

void DensityTracker::SetWitness(const DensestResult& result) {
  for (VertexId v : last_.witness) in_witness_[v] = 0;
  last_ = result;
  for (VertexId v : last_.witness) in_witness_[v] = 1;
  witness_edges_ = result.density.edges() *
                   static_cast<std::int64_t>(result.witness.size()) /
                   result.density.vertices();
  upper_ = result.density.ToDouble();
  exact_ = true;
}

const DensestResult& DensityTracker::Exact() {
  if (!exact_) {
    // The previous witness is only a starting point if it still has edges.
    const bool useful_hint = witness_edges_ > 0;
    DensestResult fresh =
        useful_hint ? ExactDensest(graph_, last_.witness) : ExactDensest(graph_);
    SetWitness(fresh);
  }
  return last_;
}

SubsetEdgeCounter::SubsetEdgeCounter(const SimpleGraph& g,
                                     std::span<const VertexId> subset)
    : member_(g.num_vertices(), 0),
      size_(static_cast<std::int64_t>(subset.size())) {
  for (VertexId v : subset) member_[v] = 1;
  std::int64_t twice = 0;
  for (VertexId v : subset) {
    for (VertexId w : g.neighbors(v)) twice += member_[w];
  }
  edges_ = twice / 2;
}

Density SubsetEdgeCounter::density() const {
  return *Density::Create(edges_, std::max<std::int64_t>(size_, 1));
}

}  // namespace dpdsg
