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

#include "dpdsg/densest.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "absl/strings/str_format.h"
#include "dpdsg/max_flow.h"

namespace dpdsg {
namespace {

std::int64_t EdgesWithin(const SimpleGraph& g, const std::vector<char>& member,
                         std::span<const VertexId> subset) {
  std::int64_t twice = 0;
  for (VertexId v : subset) {
    for (VertexId w : g.neighbors(v)) twice += member[w];
  }
  return twice / 2;
}

}  // namespace

DensestResult CharikarPeel(const SimpleGraph& g) {
  const VertexId n = g.num_vertices();
  std::vector<std::int64_t> degree(n);
  std::int64_t max_degree = 0;
  for (VertexId v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    max_degree = std::max(max_degree, degree[v]);
  }
  // Bucket queue with lazy deletion: stale entries are skipped on pop.
  std::vector<std::vector<VertexId>> bucket(max_degree + 1);
  for (VertexId v = 0; v < n; ++v) bucket[degree[v]].push_back(v);

  std::vector<char> removed(n, 0);
  std::vector<VertexId> order;
  order.reserve(n);
  std::int64_t edges = g.num_edges();
  std::int64_t remaining = n;
  Density best = *Density::Create(edges, std::max<std::int64_t>(remaining, 1));
  std::size_t best_prefix = 0;  // Number of removed vertices at the optimum.

  std::int64_t d = 0;
  while (remaining > 0) {
    while (bucket[d].empty()) ++d;
    const VertexId v = bucket[d].back();
    bucket[d].pop_back();
    if (removed[v] || degree[v] != d) continue;
    removed[v] = 1;
    order.push_back(v);
    edges -= degree[v];
    --remaining;
    for (VertexId w : g.neighbors(v)) {
      if (removed[w]) continue;
      --degree[w];
      bucket[degree[w]].push_back(w);
      if (degree[w] < d) d = degree[w];
    }
    if (remaining > 0) {
      const Density current = *Density::Create(edges, remaining);
      if (current > best) {
        best = current;
        best_prefix = order.size();
      }
    }
  }

  DensestResult result;
  result.density = best;
  std::vector<char> dropped(n, 0);
  for (std::size_t i = 0; i < best_prefix; ++i) dropped[order[i]] = 1;
  for (VertexId v = 0; v < n; ++v) {
    if (!dropped[v]) result.witness.push_back(v);
  }
  return result;
}

DensestResult ExactDensest(const SimpleGraph& g,
                           std::span<const VertexId> hint) {
  const VertexId n = g.num_vertices();
  const std::int64_t m = g.num_edges();
  if (m == 0) return {Density(), {0}};

  // Only vertices with an incident edge can belong to a set of positive
  // density.
  std::vector<int> index(n, -1);
  std::vector<VertexId> active;
  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) > 0) {
      index[v] = static_cast<int>(active.size());
      active.push_back(v);
    }
  }
  const int k = static_cast<int>(active.size());
  const int source = k;
  const int sink = k + 1;

  DensestResult current = CharikarPeel(g);
  if (!hint.empty()) {
    absl::StatusOr<Density> hinted = InducedDensity(g, hint);
    if (hinted.ok() && *hinted > current.density) {
      current.density = *hinted;
      current.witness.assign(hint.begin(), hint.end());
      std::sort(current.witness.begin(), current.witness.end());
    }
  }

  MaxFlow flow(k + 2);
  std::vector<int> source_arc(k);
  std::vector<int> sink_arc(k);
  for (int i = 0; i < k; ++i) {
    source_arc[i] = flow.AddArcPair(source, i, 0, 0);
    sink_arc[i] = flow.AddArcPair(i, sink, 0, 0);
  }
  std::vector<int> edge_arc;
  edge_arc.reserve(m);
  for (int i = 0; i < k; ++i) {
    for (VertexId w : g.neighbors(active[i])) {
      if (w > active[i]) edge_arc.push_back(flow.AddArcPair(i, index[w], 0, 0));
    }
  }

  std::vector<char> member(n, 0);
  while (true) {
    std::int64_t a = current.density.edges();
    std::int64_t b = current.density.vertices();
    const std::int64_t div = std::gcd(a, b);
    if (div > 1) {
      a /= div;
      b /= div;
    }
    for (int i = 0; i < k; ++i) {
      flow.SetCapacities(source_arc[i], b * g.degree(active[i]), 0);
      flow.SetCapacities(sink_arc[i], 2 * a, 0);
    }
    for (int h : edge_arc) flow.SetCapacities(h, b, b);

    const std::int64_t cut = flow.Solve(source, sink);
    if (cut >= 2 * m * b) {
      // No set beats a/b. The largest min-cut source side collects every
      // set attaining it.
      const std::vector<char> reaches_sink = flow.CanReach(sink);
      current.witness.clear();
      for (int i = 0; i < k; ++i) {
        if (!reaches_sink[i]) current.witness.push_back(active[i]);
      }
      return current;
    }
    const std::vector<char> side = flow.ReachableFrom(source);
    std::vector<VertexId> denser;
    for (int i = 0; i < k; ++i) {
      if (side[i]) denser.push_back(active[i]);
    }
    for (VertexId v : denser) member[v] = 1;
    const std::int64_t edges = EdgesWithin(g, member, denser);
    for (VertexId v : denser) member[v] = 0;
    current.density =
        *Density::Create(edges, static_cast<std::int64_t>(denser.size()));
    current.witness = std::move(denser);
  }
}

absl::StatusOr<DensestResult> BruteForceDensest(const SimpleGraph& g) {
  const VertexId n = g.num_vertices();
  if (n > kBruteForceMaxVertices) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "brute force limited to %d vertices, got %d", kBruteForceMaxVertices,
        n));
  }
  if (n < 1) return absl::InvalidArgumentError("graph has no vertices");

  std::vector<std::uint32_t> adjacency(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : g.neighbors(v)) adjacency[v] |= 1u << w;
  }
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<std::uint16_t> edges(static_cast<std::size_t>(full) + 1, 0);

  std::uint32_t best_mask = 1;
  Density best;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    edges[mask] = static_cast<std::uint16_t>(
        edges[rest] + std::popcount(adjacency[low] & rest));
    const Density d = *Density::Create(edges[mask], std::popcount(mask));
    bool take = false;
    if (mask == 1 || d > best) {
      take = true;
    } else if (d == best) {
      const int size = std::popcount(mask);
      const int best_size = std::popcount(best_mask);
      if (size < best_size) {
        take = true;
      } else if (size == best_size) {
        // Same size: the list holding the smallest differing vertex wins.
        const std::uint32_t diff = mask ^ best_mask;
        take = (mask & (diff & -diff)) != 0;
      }
    }
    if (take) {
      best = d;
      best_mask = mask;
    }
  }

  DensestResult result;
  result.density = best;
  for (VertexId v = 0; v < n; ++v) {
    if (best_mask & (1u << v)) result.witness.push_back(v);
  }
  return result;
}

}  // namespace dpdsg
