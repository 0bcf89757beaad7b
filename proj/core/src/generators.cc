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
#include <numeric>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_format.h"
#include "dpdsg/noise.h"

namespace dpdsg {
namespace {

// Fisher-Yates driven by NoiseSource, so streams do not depend on the
// standard library's shuffle.
template <typename T>
void Shuffle(std::vector<T>& v, NoiseSource& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.UniformIndex(i)]);
  }
}

void AppendClique(std::span<const VertexId> members, VertexId n,
                  std::vector<Update>& out) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      out.push_back(Update::Insert(*Edge::Create(members[i], members[j], n)));
    }
  }
}

}  // namespace

std::int64_t IntegerRootCeil(std::int64_t n, int p) {
  std::int64_t k = 1;
  auto pow_ge = [&](std::int64_t base) {
    std::int64_t acc = 1;
    for (int i = 0; i < p; ++i) {
      acc *= base;
      if (acc >= n) return true;
    }
    return acc >= n;
  };
  while (!pow_ge(k)) ++k;
  return k;
}

absl::StatusOr<HardInstanceShape> ComputeHardInstanceShape(
    const HardInstanceParams& params) {
  const VertexId n = params.n;
  if (n < 1) return absl::InvalidArgumentError("hard instance needs n >= 1");
  if (params.growth_steps < 1) {
    return absl::InvalidArgumentError("growth_steps must be >= 1");
  }
  if (!(params.count_scale > 0.0)) {
    return absl::InvalidArgumentError("count_scale must be > 0");
  }
  HardInstanceShape shape;
  shape.small_clique_size = static_cast<int>(IntegerRootCeil(n, 6));
  shape.planted_size = static_cast<int>(IntegerRootCeil(n, 3));
  if (shape.small_clique_size < 3) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "n=%d gives small cliques of size %d; need n >= 65 so that "
        "ceil(n^(1/6)) >= 3",
        n, shape.small_clique_size));
  }
  if (shape.planted_size + shape.small_clique_size > n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "n=%d cannot hold a %d-clique next to %d-cliques", n,
        shape.planted_size, shape.small_clique_size));
  }
  const double nd = static_cast<double>(n);
  shape.small_clique_count = static_cast<std::int64_t>(
      std::ceil(params.count_scale * std::pow(nd, 2.0 / 3.0) * std::log(nd)));
  shape.disjoint = shape.small_clique_count * shape.small_clique_size <=
                   static_cast<std::int64_t>(n) - shape.planted_size;
  return shape;
}

absl::StatusOr<HardInstance> GenerateHardInstance(
    const HardInstanceParams& params, std::uint64_t seed) {
  absl::StatusOr<HardInstanceShape> shape = ComputeHardInstanceShape(params);
  if (!shape.ok()) return shape.status();
  const VertexId n = params.n;
  NoiseSource rng = NoiseSource(seed).Fork("hard-instance");

  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Shuffle(perm, rng);
  std::vector<VertexId> planted(perm.begin(),
                                perm.begin() + shape->planted_size);
  std::vector<VertexId> pool(perm.begin() + shape->planted_size, perm.end());

  const int ks = shape->small_clique_size;
  std::vector<std::vector<VertexId>> small(shape->small_clique_count);
  for (std::int64_t i = 0; i < shape->small_clique_count; ++i) {
    if (shape->disjoint) {
      small[i].assign(pool.begin() + i * ks, pool.begin() + (i + 1) * ks);
    } else {
      // Partial Fisher-Yates: a uniform ks-subset of the pool.
      for (int j = 0; j < ks; ++j) {
        const std::size_t pick = j + rng.UniformIndex(pool.size() - j);
        std::swap(pool[j], pool[pick]);
      }
      small[i].assign(pool.begin(), pool.begin() + ks);
    }
  }
  Shuffle(small, rng);

  // Planted clique sizes grow geometrically from 2 to planted_size.
  const int g = params.growth_steps;
  std::vector<int> sizes;
  for (int j = 1; j <= g; ++j) {
    const double s =
        2.0 * std::pow(shape->planted_size / 2.0, static_cast<double>(j) / g);
    const int size = std::clamp(static_cast<int>(std::lround(s)), 2,
                                shape->planted_size);
    if (sizes.empty() || size > sizes.back()) sizes.push_back(size);
  }
  sizes.back() = shape->planted_size;

  HardInstance out;
  out.shape = *shape;
  out.stream.n = n;
  std::vector<Update>& updates = out.stream.updates;
  const std::size_t phases = sizes.size();
  std::size_t next_small = 0;
  int planted_done = 0;
  for (std::size_t phase = 0; phase < phases; ++phase) {
    // Chunk `phase` of the small cliques, then the next planted growth.
    const std::size_t end = small.size() * (phase + 1) / (phases + 1);
    for (; next_small < end; ++next_small) {
      AppendClique(small[next_small], n, updates);
    }
    std::vector<Update> growth;
    for (int a = planted_done; a < sizes[phase]; ++a) {
      for (int b = 0; b < a; ++b) {
        growth.push_back(
            Update::Insert(*Edge::Create(planted[a], planted[b], n)));
      }
    }
    Shuffle(growth, rng);
    updates.insert(updates.end(), growth.begin(), growth.end());
    planted_done = sizes[phase];
  }
  for (; next_small < small.size(); ++next_small) {
    AppendClique(small[next_small], n, updates);
  }
  out.planted = std::move(planted);
  return out;
}

absl::StatusOr<EdgeStream> GenerateRandomStream(const RandomStreamParams& params,
                                                std::uint64_t seed) {
  const VertexId n = params.n;
  if (n < 2) return absl::InvalidArgumentError("random stream needs n >= 2");
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (params.m < 0 || params.m > pairs) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "m=%d edges requested but only %d vertex pairs exist", params.m,
        pairs));
  }
  NoiseSource rng = NoiseSource(seed).Fork("random-stream");
  absl::flat_hash_set<std::uint64_t> chosen;
  std::vector<Edge> edges;
  edges.reserve(params.m);

  if (params.model == RandomModel::kPlantedClique) {
    const int k = params.clique_size;
    const std::int64_t clique_edges = static_cast<std::int64_t>(k) * (k - 1) / 2;
    if (k < 2 || k > n) {
      return absl::InvalidArgumentError(
          absl::StrFormat("clique size %d outside [2, %d]", k, n));
    }
    if (clique_edges > params.m) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "a %d-clique needs %d edges but m=%d", k, clique_edges, params.m));
    }
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int j = 0; j < k; ++j) {
      std::swap(perm[j], perm[j + rng.UniformIndex(n - j)]);
    }
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        const Edge e = *Edge::Create(perm[a], perm[b], n);
        chosen.insert(e.key());
        edges.push_back(e);
      }
    }
  }

  const std::int64_t remaining = params.m - static_cast<std::int64_t>(edges.size());
  if (remaining > (pairs - static_cast<std::int64_t>(edges.size())) / 2) {
    // Dense request: enumerate the free pairs and keep a random prefix.
    std::vector<Edge> free_pairs;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        const Edge e = *Edge::Create(u, v, n);
        if (!chosen.contains(e.key())) free_pairs.push_back(e);
      }
    }
    Shuffle(free_pairs, rng);
    edges.insert(edges.end(), free_pairs.begin(),
                 free_pairs.begin() + remaining);
  } else {
    while (static_cast<std::int64_t>(edges.size()) < params.m) {
      const auto a = static_cast<VertexId>(rng.UniformIndex(n));
      const auto b = static_cast<VertexId>(rng.UniformIndex(n));
      if (a == b) continue;
      const Edge e = *Edge::Create(a, b, n);
      if (chosen.insert(e.key()).second) edges.push_back(e);
    }
  }
  Shuffle(edges, rng);

  EdgeStream stream;
  stream.n = n;
  stream.updates.reserve(edges.size());
  for (const Edge& e : edges) stream.updates.push_back(Update::Insert(e));
  return stream;
}

}  // namespace dpdsg
