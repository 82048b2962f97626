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

#include <optional>
#include <vector>

#include "convergence/core_space.hpp"

namespace convergence {

// A family of sets claimed to meet every convergent filter at each point of
// `scope`, i.e. every V(x) with x in scope sits inside some member.
struct LocalCover {
  std::vector<PointSet> sets;
  PointSet scope;
};

// Same data, read as a covering system base.
struct CoverBase {
  std::vector<PointSet> sets;
  PointSet scope;
};

// {V(x) : x} scoped over the whole carrier, duplicates removed.
LocalCover unit_ball_cover(const LimitSpace& space);

// A point of the scope together with a convergent generator that defeats the
// family.
struct CoverWitness {
  PointId point;
  PointSet generator;
};

std::optional<CoverWitness> local_cover_defect(const LimitSpace& space,
                                               const LocalCover& cover);
inline bool is_local_cover(const LimitSpace& space, const LocalCover& cover) {
  return !local_cover_defect(space, cover).has_value();
}

std::optional<CoverWitness> cover_base_defect(const LimitSpace& space,
                                              const CoverBase& base);
inline bool is_cover_base(const LimitSpace& space, const CoverBase& base) {
  return !cover_base_defect(space, base).has_value();
}

struct Partition {
  PointSet first;
  PointSet second;
};

// A separating partition if the space is disconnected. {A, B} is then itself a
// covering system with every member inside one side.
std::optional<Partition> disconnection(const LimitSpace& space);
inline bool is_connected(const LimitSpace& space) {
  return !disconnection(space).has_value();
}

// Maximal connected subsets, ordered by smallest member.
std::vector<PointSet> components(const LimitSpace& space);

// Indices into cover.sets of U_1, ..., U_n with x ∈ U_1, y ∈ U_n and
// consecutive members intersecting; nullopt if there is none. Throws
// Error(kInvalidArgument) unless `cover` is a covering system of the carrier.
std::optional<std::vector<std::size_t>> chain_between(const LimitSpace& space,
                                                      PointId x, PointId y,
                                                      const LocalCover& cover);

struct LocalConnectivity {
  bool holds = false;
  std::vector<PointSet> base;             // per point, V(x) when it holds
  std::optional<PointId> counterexample;  // first point whose V(x) fails
};

LocalConnectivity locally_connected(const LimitSpace& space);
LocalConnectivity locally_path_connected(const LimitSpace& space);

}  // namespace convergence
