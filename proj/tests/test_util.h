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

#ifndef DPDSG_TESTS_TEST_UTIL_H_
#define DPDSG_TESTS_TEST_UTIL_H_

#include <initializer_list>
#include <utility>
#include <vector>

#include "dpdsg/graph.h"
#include "dpdsg/noise.h"
#include "gtest/gtest.h"

#define DPDSG_ASSERT_OK(expr)                  \
  do {                                         \
    const auto& _st = (expr);                  \
    ASSERT_TRUE(_st.ok()) << _st;              \
  } while (0)

namespace dpdsg::testing {

inline Edge E(VertexId a, VertexId b, VertexId n = 1 << 20) {
  return *Edge::Create(a, b, n);
}

inline SimpleGraph FromEdges(
    VertexId n, std::initializer_list<std::pair<VertexId, VertexId>> edges) {
  SimpleGraph g(n);
  for (auto [a, b] : edges) g.AddEdge(E(a, b, n));
  return g;
}

// Adds a clique on the given vertices.
inline void AddClique(SimpleGraph& g, const std::vector<VertexId>& members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      g.AddEdge(E(members[i], members[j], g.num_vertices()));
    }
  }
}

inline std::vector<VertexId> Range(VertexId from, VertexId to) {
  std::vector<VertexId> out;
  for (VertexId v = from; v < to; ++v) out.push_back(v);
  return out;
}

// G(n, p) with the given generator.
inline SimpleGraph RandomGraph(VertexId n, double p, NoiseSource& rng) {
  SimpleGraph g(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (rng.Uniform() < p) g.AddEdge(E(u, v, n));
    }
  }
  return g;
}

inline EdgeStream StreamOf(
    VertexId n, std::initializer_list<std::pair<VertexId, VertexId>> edges) {
  EdgeStream s;
  s.n = n;
  for (auto [a, b] : edges) {
    s.updates.push_back(a < 0 ? Update::Noop() : Update::Insert(E(a, b, n)));
  }
  return s;
}

}  // namespace dpdsg::testing

#endif  // DPDSG_TESTS_TEST_UTIL_H_
