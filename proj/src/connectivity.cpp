// Copyright 2026 The convergence Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "convergence/connectivity.hpp"

#include <algorithm>
#include <deque>

#include "convergence/constructions.hpp"
#include "convergence/paths.hpp"

namespace convergence {
namespace {

// x ~ y iff y ∈ V(x) or x ∈ V(y).
std::vector<std::vector<PointId>> symmetric_adjacency(const LimitSpace& space) {
  std::vector<std::vector<PointId>> adj(space.size());
  for (PointId x = 0; x < space.size(); ++x) {
    for (PointId y : space.vmax(x)) {
      if (y == x) continue;
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

}  // namespace

LocalCover unit_ball_cover(const LimitSpace& space) {
  LocalCover c;
  for (PointId x = 0; x < space.size(); ++x) {
    if (std::find(c.sets.begin(), c.sets.end(), space.vmax(x)) == c.sets.end()) {
      c.sets.push_back(space.vmax(x));
    }
  }
  c.scope = space.carrier()->all();
  return c;
}

std::optional<CoverWitness> local_cover_defect(const LimitSpace& space,
                                               const LocalCover& cover) {
  for (PointId x : cover.scope) {
    // Every convergent [A] at x has A ⊆ V(x); a member containing V(x)
    // contains them all, and A = V(x) needs exactly that.
    const PointSet& vx = space.vmax(x);
    const bool covered = std::any_of(cover.sets.begin(), cover.sets.end(),
                                     [&](const PointSet& u) { return vx.is_subset_of(u); });
    if (!covered) return CoverWitness{x, vx};
  }
  return std::nullopt;
}

std::optional<CoverWitness> cover_base_defect(const LimitSpace& space,
                                              const CoverBase& base) {
  for (PointId x : base.scope) {
    // For H = V(x) the only coarser convergent filter is [V(x)] itself, and
    // taking A = V(x) forces a base member B with V(x) ⊆ B ⊆ V(x).
    const PointSet& vx = space.vmax(x);
    if (std::find(base.sets.begin(), base.sets.end(), vx) == base.sets.end()) {
      return CoverWitness{x, vx};
    }
  }
  return std::nullopt;
}

std::vector<PointSet> components(const LimitSpace& space) {
  const auto adj = symmetric_adjacency(space);
  std::vector<bool> seen(space.size(), false);
  std::vector<PointSet> out;
  for (PointId s = 0; s < space.size(); ++s) {
    if (seen[s]) continue;
    PointSet comp;
    std::deque<PointId> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      PointId x = queue.front();
      queue.pop_front();
      comp.insert(x);
      for (PointId y : adj[x]) {
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::optional<Partition> disconnection(const LimitSpace& space) {
  auto comps = components(space);
  if (comps.size() <= 1) return std::nullopt;
  Partition p{comps.front(), {}};
  for (std::size_t i = 1; i < comps.size(); ++i) p.second |= comps[i];
  return p;
}

std::optional<std::vector<std::size_t>> chain_between(const LimitSpace& space,
                                                      PointId x, PointId y,
                                                      const LocalCover& cover) {
  LocalCover whole{cover.sets, space.carrier()->all()};
  if (auto w = local_cover_defect(space, whole)) {
    throw Error(ErrorCode::kInvalidArgument,
                "not a covering system: nothing contains V(" + space.name(w->point) + ")");
  }
  const std::size_t k = cover.sets.size();
  std::vector<std::size_t> parent(k, k);
  std::vector<bool> seen(k, false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < k; ++i) {
    if (cover.sets[i].contains(x)) {
      seen[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    if (cover.sets[i].contains(y)) {
      std::vector<std::size_t> chain;
      for (std::size_t j = i; j != k; j = parent[j]) chain.push_back(j);
      std::reverse(chain.begin(), chain.end());
      return chain;
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (!seen[j] && cover.sets[i].intersects(cover.sets[j])) {
        seen[j] = true;
        parent[j] = i;
        queue.push_back(j);
      }
    }
  }
  return std::nullopt;
}

LocalConnectivity locally_connected(const LimitSpace& space) {
  LocalConnectivity out;
  for (PointId x = 0; x < space.size(); ++x) {
    if (!is_connected(subspace(space, space.vmax(x)).space)) {
      out.counterexample = x;
      out.base.clear();
      return out;
    }
    out.base.push_back(space.vmax(x));
  }
  out.holds = true;
  return out;
}

LocalConnectivity locally_path_connected(const LimitSpace& space) {
  LocalConnectivity out;
  for (PointId x = 0; x < space.size(); ++x) {
    if (path_components(subspace(space, space.vmax(x)).space).size() > 1) {
      out.counterexample = x;
      out.base.clear();
      return out;
    }
    out.base.push_back(space.vmax(x));
  }
  out.holds = true;
  return out;
}

}  // namespace convergence
