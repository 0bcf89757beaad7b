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

#ifndef DPDSG_GRAPH_H_
#define DPDSG_GRAPH_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpdsg {

// Vertices are dense ids in [0, n) with n fixed for the lifetime of a stream.
using VertexId = std::int32_t;

// An undirected edge stored canonically with u() < v().
class Edge {
 public:
  // Rejects self-loops and ids outside [0, n).
  static absl::StatusOr<Edge> Create(VertexId a, VertexId b, VertexId n);

  // Inverse of key(). The key must come from a valid Edge.
  static Edge FromKey(std::uint64_t key) {
    return Edge(static_cast<VertexId>(key >> 32),
                static_cast<VertexId>(key & 0xffffffffu));
  }

  VertexId u() const { return u_; }
  VertexId v() const { return v_; }

  // Packs (u, v) into one word; ordering of keys matches ordering of edges.
  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(u_) << 32) |
           static_cast<std::uint32_t>(v_);
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const Edge& e) {
    return H::combine(std::move(h), e.u_, e.v_);
  }

 private:
  Edge(VertexId u, VertexId v) : u_(u), v_(v) {}

  VertexId u_;
  VertexId v_;
};

// One stream element: either an edge insertion or the empty update.
class Update {
 public:
  static Update Insert(Edge e) { return Update(e); }
  static Update Noop() { return Update(std::nullopt); }

  bool is_noop() const { return !edge_.has_value(); }
  // Requires !is_noop().
  const Edge& edge() const { return *edge_; }

  friend bool operator==(const Update&, const Update&) = default;

 private:
  explicit Update(std::optional<Edge> e) : edge_(e) {}

  std::optional<Edge> edge_;
};

// An insertion-only update sequence over a fixed vertex set. The same edge
// may be inserted more than once.
struct EdgeStream {
  VertexId n = 0;
  std::vector<Update> updates;

  std::size_t length() const { return updates.size(); }

  // Checks T <= n^exponent.
  absl::Status CheckLengthBound(double exponent) const;
};

// Exact rational density |E(S)| / |S|. Comparisons are by value, so 2/4 and
// 1/2 compare equal even though their fields differ.
class Density {
 public:
  Density() = default;
  // Requires vertices >= 1 and edges >= 0.
  static absl::StatusOr<Density> Create(std::int64_t edges,
                                        std::int64_t vertices);

  std::int64_t edges() const { return edges_; }
  std::int64_t vertices() const { return vertices_; }
  double ToDouble() const {
    return static_cast<double>(edges_) / static_cast<double>(vertices_);
  }
  // Reduced fraction, e.g. "3/2".
  std::string ToString() const;

  friend bool operator==(const Density& a, const Density& b) {
    return static_cast<__int128>(a.edges_) * b.vertices_ ==
           static_cast<__int128>(b.edges_) * a.vertices_;
  }
  friend std::weak_ordering operator<=>(const Density& a, const Density& b) {
    const __int128 lhs = static_cast<__int128>(a.edges_) * b.vertices_;
    const __int128 rhs = static_cast<__int128>(b.edges_) * a.vertices_;
    if (lhs < rhs) return std::weak_ordering::less;
    if (lhs > rhs) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

 private:
  Density(std::int64_t edges, std::int64_t vertices)
      : edges_(edges), vertices_(vertices) {}

  std::int64_t edges_ = 0;
  std::int64_t vertices_ = 1;
};

// Simple undirected graph on [0, n) with an adjacency/degree index kept in
// sync with the edge set. Single writer; concurrent readers are fine.
class SimpleGraph {
 public:
  explicit SimpleGraph(VertexId n);

  VertexId num_vertices() const { return n_; }
  std::int64_t num_edges() const {
    return static_cast<std::int64_t>(edges_.size());
  }

  // Returns false if the edge was already present.
  bool AddEdge(Edge e);
  // Returns false if the edge was absent.
  bool RemoveEdge(Edge e);
  bool HasEdge(Edge e) const { return edges_.contains(e.key()); }

  std::int64_t degree(VertexId v) const {
    return static_cast<std::int64_t>(adjacency_[v].size());
  }
  std::span<const VertexId> neighbors(VertexId v) const {
    return adjacency_[v];
  }

  // All edges in ascending order.
  std::vector<Edge> Edges() const;

  // Recounts degrees from the edge set and compares with the index.
  absl::Status CheckConsistency() const;

 private:
  VertexId n_;
  absl::flat_hash_set<std::uint64_t> edges_;
  std::vector<std::vector<VertexId>> adjacency_;
};

// |E(S)| / |S| for a nonempty subset S of distinct in-range vertices.
absl::StatusOr<Density> InducedDensity(const SimpleGraph& g,
                                       std::span<const VertexId> subset);

// The densification overlay: a circulant graph where vertex i is adjacent to
// i +- j (mod n) for j = 1..kappa. When n <= 2 * kappa the requested degree
// cannot be realized; kappa is then clamped to floor((n - 1) / 2).
struct RegularOverlay {
  std::vector<Edge> edges;
  std::int64_t requested_kappa = 0;
  std::int64_t kappa = 0;  // Each vertex has degree exactly 2 * kappa.
  bool clamped = false;
};

absl::StatusOr<RegularOverlay> BuildRegularGraph(VertexId n,
                                                 std::int64_t kappa);

// Duplicate-free union of g's edges and the overlay.
SimpleGraph UnionOverlay(const SimpleGraph& g, std::span<const Edge> overlay);

// Replays the first `prefix` updates (all of them by default) into a simple
// graph.
SimpleGraph ReplayStream(const EdgeStream& stream,
                         std::size_t prefix = static_cast<std::size_t>(-1));

}  // namespace dpdsg

#endif  // DPDSG_GRAPH_H_
