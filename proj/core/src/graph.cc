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

#include "dpdsg/graph.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_format.h"

namespace dpdsg {

absl::StatusOr<Edge> Edge::Create(VertexId a, VertexId b, VertexId n) {
  if (a == b) {
    return absl::InvalidArgumentError(
        absl::StrFormat("self-loop on vertex %d", a));
  }
  if (a < 0 || b < 0 || a >= n || b >= n) {
    return absl::OutOfRangeError(
        absl::StrFormat("edge (%d, %d) outside vertex range [0, %d)", a, b, n));
  }
  return Edge(std::min(a, b), std::max(a, b));
}

absl::Status EdgeStream::CheckLengthBound(double exponent) const {
  const double bound = std::pow(static_cast<double>(n), exponent);
  if (static_cast<double>(updates.size()) > bound) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "stream length %d exceeds n^%g = %g", updates.size(), exponent, bound));
  }
  return absl::OkStatus();
}

absl::StatusOr<Density> Density::Create(std::int64_t edges,
                                        std::int64_t vertices) {
  if (vertices < 1) {
    return absl::InvalidArgumentError("density denominator must be >= 1");
  }
  if (edges < 0) {
    return absl::InvalidArgumentError("density numerator must be >= 0");
  }
  return Density(edges, vertices);
}

std::string Density::ToString() const {
  const std::int64_t g = std::gcd(edges_, vertices_);
  const std::int64_t d = g == 0 ? 1 : g;
  return absl::StrFormat("%d/%d", edges_ / d, vertices_ / d);
}

SimpleGraph::SimpleGraph(VertexId n) : n_(n), adjacency_(n) {}

bool SimpleGraph::AddEdge(Edge e) {
  if (!edges_.insert(e.key()).second) return false;
  adjacency_[e.u()].push_back(e.v());
  adjacency_[e.v()].push_back(e.u());
  return true;
}

namespace {

void EraseOne(std::vector<VertexId>& list, VertexId x) {
  auto it = std::find(list.begin(), list.end(), x);
  *it = list.back();
  list.pop_back();
}

}  // namespace

bool SimpleGraph::RemoveEdge(Edge e) {
  if (edges_.erase(e.key()) == 0) return false;
  EraseOne(adjacency_[e.u()], e.v());
  EraseOne(adjacency_[e.v()], e.u());
  return true;
}

std::vector<Edge> SimpleGraph::Edges() const {
  std::vector<std::uint64_t> keys(edges_.begin(), edges_.end());
  std::sort(keys.begin(), keys.end());
  std::vector<Edge> out;
  out.reserve(keys.size());
  for (std::uint64_t k : keys) out.push_back(Edge::FromKey(k));
  return out;
}

absl::Status SimpleGraph::CheckConsistency() const {
  std::vector<std::int64_t> recount(n_, 0);
  for (std::uint64_t k : edges_) {
    const Edge e = Edge::FromKey(k);
    ++recount[e.u()];
    ++recount[e.v()];
  }
  for (VertexId v = 0; v < n_; ++v) {
    if (recount[v] != degree(v)) {
      return absl::InternalError(absl::StrFormat(
          "vertex %d: index degree %d, recount %d", v, degree(v), recount[v]));
    }
    for (VertexId w : adjacency_[v]) {
      if (!edges_.contains(Edge::Create(v, w, n_)->key())) {
        return absl::InternalError(
            absl::StrFormat("adjacency %d-%d missing from edge set", v, w));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Density> InducedDensity(const SimpleGraph& g,
                                       std::span<const VertexId> subset) {
  if (subset.empty()) {
    return absl::InvalidArgumentError("induced density of an empty subset");
  }
  std::vector<char> member(g.num_vertices(), 0);
  for (VertexId v : subset) {
    if (v < 0 || v >= g.num_vertices()) {
      return absl::OutOfRangeError(absl::StrFormat("vertex %d out of range", v));
    }
    if (member[v]) {
      return absl::InvalidArgumentError(
          absl::StrFormat("vertex %d repeated in subset", v));
    }
    member[v] = 1;
  }
  std::int64_t twice_edges = 0;
  for (VertexId v : subset) {
    for (VertexId w : g.neighbors(v)) twice_edges += member[w];
  }
  return Density::Create(twice_edges / 2,
                         static_cast<std::int64_t>(subset.size()));
}

absl::StatusOr<RegularOverlay> BuildRegularGraph(VertexId n,
                                                 std::int64_t kappa) {
  if (n < 1) return absl::InvalidArgumentError("overlay needs n >= 1");
  if (kappa < 0) return absl::InvalidArgumentError("kappa must be >= 0");
  RegularOverlay overlay;
  overlay.requested_kappa = kappa;
  overlay.kappa = kappa;
  if (static_cast<std::int64_t>(n) <= 2 * kappa) {
    overlay.kappa = (static_cast<std::int64_t>(n) - 1) / 2;
    overlay.clamped = true;
  }
  // Offsets 1..kappa with 2 * kappa < n give n * kappa distinct edges.
  overlay.edges.reserve(static_cast<std::size_t>(n) * overlay.kappa);
  for (VertexId i = 0; i < n; ++i) {
    for (std::int64_t j = 1; j <= overlay.kappa; ++j) {
      const auto w = static_cast<VertexId>((i + j) % n);
      overlay.edges.push_back(*Edge::Create(i, w, n));
    }
  }
  return overlay;
}

SimpleGraph UnionOverlay(const SimpleGraph& g, std::span<const Edge> overlay) {
  SimpleGraph out = g;
  for (const Edge& e : overlay) out.AddEdge(e);
  return out;
}

SimpleGraph ReplayStream(const EdgeStream& stream, std::size_t prefix) {
  SimpleGraph g(stream.n);
  const std::size_t end = std::min(prefix, stream.updates.size());
  for (std::size_t t = 0; t < end; ++t) {
    if (!stream.updates[t].is_noop()) g.AddEdge(stream.updates[t].edge());
  }
  return g;
}

}  // namespace dpdsg
