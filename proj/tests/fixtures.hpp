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

#pragma once

// Covering-space fixtures shared by the covering tests and the acceptance
// runner.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>

#include "convergence/covering.hpp"
#include "support.hpp"

namespace convergence::testing {

inline std::vector<PointId> mod_table(std::size_t up, std::size_t down) {
  std::vector<PointId> t(up);
  for (std::size_t k = 0; k < up; ++k) t[k] = static_cast<PointId>(k % down);
  return t;
}

// Charts over the unit balls of the down-cycle; sheet s of chart i is the arc
// through i + s*down.
inline CoveringAtlas cycle_atlas(const LimitSpace& e, const LimitSpace& b) {
  const std::size_t up = e.size();
  const std::size_t down = b.size();
  CoveringAtlas a{PointMap(e, b, mod_table(up, down)), {}, {}};
  for (std::size_t s = 0; s < up / down; ++s) a.fiber.push_back(std::to_string(s));
  for (PointId i = 0; i < down; ++i) {
    Chart c{b.vmax(i), {}};
    for (PointId k : a.projection.preimage(c.set)) {
      c.entries.push_back({k, k % static_cast<PointId>(down), ((k + up - i + 1) % up) / down});
    }
    a.charts.push_back(std::move(c));
  }
  return a;
}

inline CoveringAtlas identity_atlas(const LimitSpace& s) {
  CoveringAtlas a{PointMap::identity(s), {"0"}, {}};
  Chart c{s.carrier()->all(), {}};
  for (PointId x = 0; x < s.size(); ++x) c.entries.push_back({x, x, 0});
  a.charts.push_back(std::move(c));
  return a;
}

// B × F → B with one chart over all of B and the points of E shuffled.
inline CoveringAtlas trivial_bundle(const LimitSpace& b, const LimitSpace& f, std::mt19937_64& rng) {
  const LimitSpace fs[] = {b, f};
  const ProductSpace prod = product(fs);
  const std::size_t n = prod.space.size();
  std::vector<PointId> perm(n);  // product index -> E index
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<PointSet> v(n);
  std::vector<std::string> names(n);
  for (PointId k = 0; k < n; ++k) {
    names[perm[k]] = prod.space.name(k);
    PointSet img;
    for (PointId y : prod.space.vmax(k)) img.insert(perm[y]);
    v[perm[k]] = img;
  }
  const LimitSpace e(make_carrier(names), v);
  std::vector<PointId> table(n);
  Chart c{b.carrier()->all(), {}};
  for (PointId k = 0; k < n; ++k) table[perm[k]] = prod.projections[0](k);
  for (PointId k = 0; k < n; ++k) {
    const auto it = std::find(perm.begin(), perm.end(), k);
    const PointId src = static_cast<PointId>(it - perm.begin());
    c.entries.push_back({k, prod.projections[0](src), prod.projections[1](src)});
  }
  CoveringAtlas a{PointMap(e, b, table), {}, {std::move(c)}};
  for (PointId i = 0; i < f.size(); ++i) a.fiber.push_back(f.name(i));
  return a;
}

// Unique lifting by walks: no two distinct walks of length <= 2 with the
// same start have the same image.
inline bool unique_lifting_by_walks(const CoveringAtlas& a) {
  const LimitSpace& e = a.total();
  for (PointId x = 0; x < e.size(); ++x) {
    std::map<std::vector<PointId>, std::vector<PointId>> seen;  // image -> walk points
    for (std::size_t len = 0; len <= 2; ++len) {
      bool clash = false;
      for_each_walk(e, x, len, [&](const Walk& w) {
        const auto image = pushforward(w, a.projection).points();
        auto [it, fresh] = seen.emplace(image, w.points());
        if (!fresh && it->second != w.points()) clash = true;
      });
      if (clash) return false;
    }
  }
  return true;
}

// Lift by scanning neighbours of the current point in the next fiber.
inline std::optional<Walk> lift_by_neighbours(const CoveringAtlas& a, const Walk& w, PointId e0) {
  const LimitSpace& e = a.total();
  std::vector<PointId> pts{e0};
  for (std::size_t i = 0; i < w.length(); ++i) {
    std::vector<PointId> next;
    for (PointId y = 0; y < e.size(); ++y) {
      if (a.projection(y) == w.points()[i + 1] &&
          step_valid(e, pts.back(), y, w.flags()[i])) {
        next.push_back(y);
      }
    }
    if (next.size() != 1) return std::nullopt;
    pts.push_back(next.front());
  }
  return Walk(pts, w.flags());
}

inline Walk winding_loop(const LimitSpace& c) {
  std::vector<PointId> pts;
  for (PointId i = 0; i <= c.size(); ++i) pts.push_back(i % c.size());
  return Walk::through(c, pts);
}

// Two cycles o,a1..ak and o,b1..bk sharing o.
inline LimitSpace figure_eight(std::size_t k) {
  const std::size_t n = 2 * k + 1;
  std::vector<std::string> names{"o"};
  for (std::size_t i = 1; i <= k; ++i) names.push_back("a" + std::to_string(i));
  for (std::size_t i = 1; i <= k; ++i) names.push_back("b" + std::to_string(i));
  std::vector<PointSet> v(n);
  for (PointId x = 0; x < n; ++x) v[x].insert(x);
  auto edge = [&](PointId x, PointId y) {
    v[x].insert(y);
    v[y].insert(x);
  };
  for (PointId base : {PointId{1}, static_cast<PointId>(k + 1)}) {
    edge(0, base);
    for (PointId i = 0; i + 1 < k; ++i) edge(base + i, base + i + 1);
    edge(base + static_cast<PointId>(k) - 1, 0);
  }
  return LimitSpace(make_carrier(names), v);
}

}  // namespace convergence::testing
