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

#include <span>
#include <vector>

#include "convergence/core_space.hpp"

namespace convergence {

inline constexpr std::size_t kDefaultMaxPoints = 1'000'000;
inline constexpr std::size_t kDefaultMaxMaps = 100'000;

struct ProductSpace {
  LimitSpace space;
  std::vector<PointMap> projections;
};

// Initial structure for the projections: V((x_i)) = Π V(x_i). Points are
// named "(a,b,...)". The empty product is the one-point space "()".
// Throws Error(kResourceLimit) when the carrier would exceed max_points.
ProductSpace product(std::span<const LimitSpace> factors,
                     std::size_t max_points = kDefaultMaxPoints);

struct Subspace {
  LimitSpace space;
  PointMap inclusion;
};

// V_M(x) = V(x) ∩ M, points keep their names and relative order.
Subspace subspace(const LimitSpace& space, const PointSet& members);

struct DisjointUnion {
  LimitSpace space;
  std::vector<PointMap> injections;
};

// Points of summand i are named "i:name".
DisjointUnion disjoint_union(std::span<const LimitSpace> summands);

struct QuotientSpec {
  LimitSpace source;
  CarrierPtr target;
  std::vector<PointId> projection;  // source point -> target point
};

// [A] → y iff A ⊆ q(B_1) ∪ ... ∪ q(B_n) for convergent B_k at points of
// q⁻¹(y). Throws Error(kNotSurjective) if q misses a target point.
LimitSpace quotient_limit(const QuotientSpec& spec);
// [A] → y iff every ultrafilter [a], a ∈ A, is the image of a filter
// converging to some point of q⁻¹(y). Coincides with quotient_limit on
// finite carriers.
LimitSpace quotient_pstop(const QuotientSpec& spec);

// The quotient map from the source to the quotient space.
PointMap quotient_map(const QuotientSpec& spec, const LimitSpace& quotient);

struct InitialSource {
  std::vector<PointId> table;  // carrier point -> target point
  LimitSpace target;
};

// Coarsest structure making every map continuous:
// V(x) = ⋂_i f_i⁻¹(V_i(f_i(x))). An empty family gives the indiscrete space.
LimitSpace initial_structure(CarrierPtr carrier,
                             std::span<const InitialSource> sources);

struct FunctionSpace {
  LimitSpace domain;
  LimitSpace codomain;
  std::vector<std::vector<PointId>> maps;  // all continuous maps, lexicographic
  LimitSpace structure;                    // continuous limit structure on maps

  PointMap map(PointId f) const { return PointMap(domain, codomain, maps.at(f)); }
};

// C(X, Y) with the continuous limit structure: H → f iff for every x,
// {h(v) : h ∈ H, v ∈ V(x)} ⊆ V(f(x)). Map points are named "[a->x,b->y]".
// Throws Error(kResourceLimit) when |Y|^|X| exceeds max_maps.
FunctionSpace function_space(const LimitSpace& x, const LimitSpace& y,
                             std::size_t max_maps = kDefaultMaxMaps);

// Evaluation ω(f, x) = f(x) as a map on product(C(X,Y), X).
PointMap evaluation_map(const FunctionSpace& fs, const ProductSpace& fs_times_x);

// Both modifications are the identity on closed finite structures; on raw
// tables they agree with close().
LimitSpace modification_pstop(const LimitSpace& space);
LimitSpace modification_pstop(const RawConvergenceTable& raw);
LimitSpace modification_pretop(const LimitSpace& space);
LimitSpace modification_pretop(const RawConvergenceTable& raw);

}  // namespace convergence
