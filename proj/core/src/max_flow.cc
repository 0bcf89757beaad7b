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

#include "dpdsg/max_flow.h"

#include <algorithm>
#include <limits>

namespace dpdsg {

MaxFlow::MaxFlow(int num_nodes) : num_nodes_(num_nodes) {}

int MaxFlow::AddArcPair(int u, int v, std::int64_t forward,
                        std::int64_t backward) {
  built_ = false;
  pair_u_.push_back(u);
  pair_v_.push_back(v);
  pair_forward_.push_back(forward);
  pair_backward_.push_back(backward);
  return static_cast<int>(pair_u_.size()) - 1;
}

void MaxFlow::SetCapacities(int handle, std::int64_t forward,
                            std::int64_t backward) {
  pair_forward_[handle] = forward;
  pair_backward_[handle] = backward;
}

void MaxFlow::Build() {
  const std::size_t pairs = pair_u_.size();
  offset_.assign(num_nodes_ + 1, 0);
  for (std::size_t p = 0; p < pairs; ++p) {
    ++offset_[pair_u_[p] + 1];
    ++offset_[pair_v_[p] + 1];
  }
  for (int i = 0; i < num_nodes_; ++i) offset_[i + 1] += offset_[i];
  std::vector<int> fill(offset_.begin(), offset_.end() - 1);
  head_.assign(2 * pairs, 0);
  reverse_.assign(2 * pairs, 0);
  residual_.assign(2 * pairs, 0);
  pair_pos_.assign(pairs, 0);
  for (std::size_t p = 0; p < pairs; ++p) {
    const int a = fill[pair_u_[p]]++;
    const int b = fill[pair_v_[p]]++;
    head_[a] = pair_v_[p];
    head_[b] = pair_u_[p];
    reverse_[a] = b;
    reverse_[b] = a;
    pair_pos_[p] = a;
  }
  level_.assign(num_nodes_, -1);
  next_arc_.assign(num_nodes_, 0);
  built_ = true;
}

bool MaxFlow::Levelize(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::vector<int> queue;
  queue.reserve(num_nodes_);
  queue.push_back(source);
  level_[source] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int v = queue[qi];
    for (int a = offset_[v]; a < offset_[v + 1]; ++a) {
      const int w = head_[a];
      if (residual_[a] > 0 && level_[w] < 0) {
        level_[w] = level_[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return level_[sink] >= 0;
}

std::int64_t MaxFlow::Push(int v, int sink, std::int64_t limit) {
  if (v == sink) return limit;
  std::int64_t pushed = 0;
  for (int& a = next_arc_[v]; a < offset_[v + 1]; ++a) {
    const int w = head_[a];
    if (residual_[a] <= 0 || level_[w] != level_[v] + 1) continue;
    const std::int64_t d =
        Push(w, sink, std::min(limit - pushed, residual_[a]));
    if (d > 0) {
      residual_[a] -= d;
      residual_[reverse_[a]] += d;
      pushed += d;
      if (pushed == limit) return pushed;
    }
  }
  level_[v] = -1;  // Saturated; prune from this phase.
  return pushed;
}

std::int64_t MaxFlow::Solve(int source, int sink) {
  if (!built_) Build();
  for (std::size_t p = 0; p < pair_pos_.size(); ++p) {
    const int a = pair_pos_[p];
    residual_[a] = pair_forward_[p];
    residual_[reverse_[a]] = pair_backward_[p];
  }
  std::int64_t flow = 0;
  while (Levelize(source, sink)) {
    std::copy(offset_.begin(), offset_.end() - 1, next_arc_.begin());
    flow += Push(source, sink, std::numeric_limits<std::int64_t>::max());
  }
  return flow;
}

std::vector<char> MaxFlow::ReachableFrom(int source) const {
  std::vector<char> seen(num_nodes_, 0);
  std::vector<int> stack = {source};
  seen[source] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int a = offset_[v]; a < offset_[v + 1]; ++a) {
      const int w = head_[a];
      if (residual_[a] > 0 && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<char> MaxFlow::CanReach(int sink) const {
  std::vector<char> seen(num_nodes_, 0);
  std::vector<int> stack = {sink};
  seen[sink] = 1;
  while (!stack.empty()) {
    const int w = stack.back();
    stack.pop_back();
    // Arc v->w lives at reverse_[a] for each arc a = w->v.
    for (int a = offset_[w]; a < offset_[w + 1]; ++a) {
      const int v = head_[a];
      if (!seen[v] && residual_[reverse_[a]] > 0) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace dpdsg
