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
#include <span>
#include <string>
#include <vector>

#include "convergence/constructions.hpp"
#include "convergence/homotopy.hpp"

namespace convergence {

// Φ_U(e) = (b, fiber).
struct ChartEntry {
  PointId e;
  PointId b;
  std::size_t fiber;

  friend bool operator==(const ChartEntry&, const ChartEntry&) = default;
};

// A trivialization over the base set `set`, listing one entry per point of
// p⁻¹(set) in ascending order of e.
struct Chart {
  PointSet set;
  std::vector<ChartEntry> entries;

  friend bool operator==(const Chart&, const Chart&) = default;
};

// A candidate covering map with its charts. The chart sets form the cover of
// the base; the fiber index set is shared by every chart and carries the
// discrete structure.
struct CoveringAtlas {
  PointMap projection;
  std::vector<std::string> fiber;
  std::vector<Chart> charts;

  const LimitSpace& total() const noexcept { return projection.domain(); }
  const LimitSpace& base() const noexcept { return projection.codomain(); }
  LocalCover cover() const;
};

struct AtlasReport {
  bool ok = true;
  std::vector<std::string> defects;
};

// Surjective continuous projection, chart sets a covering system of the base,
// each chart a homeomorphism p⁻¹(U) → U × F over U, discrete fibers.
AtlasReport verify_atlas(const CoveringAtlas& atlas);

// Charts over the distinct V(b), one sheet per component of the preimage.
// Throws Error(kNotSurjective / kNotContinuous) on a bad projection.
std::optional<CoveringAtlas> search_atlas(const PointMap& p);

// Which chart carries a step when several contain it.
enum class ChartChoice { kFirst, kLast };

// Throws Error(kEndpointMismatch) unless p(e0) = w.start() and
// Error(kAtlasDefect) when no chart contains a step.
Walk lift_path(const CoveringAtlas& atlas, const Walk& w, PointId e0,
               ChartChoice choice = ChartChoice::kFirst);

// Transports the moves upstairs chart by chart, starting from lift1, and
// returns the lift of the final walk. Throws Error(kInvalidArgument) if lift1
// or a move does not fit and Error(kAtlasDefect) if a move fits in no chart or
// the result differs from the direct lift.
Walk lift_homotopy(const CoveringAtlas& atlas, std::span<const Move> moves,
                   const Walk& lift1);

// No fiber holds two points joined by a valid step.
bool has_unique_path_lifting(const CoveringAtlas& atlas);

enum class LiftOutcome { kLifted, kObstructed, kIndeterminate };

struct LiftMapResult {
  LiftOutcome outcome = LiftOutcome::kIndeterminate;
  std::optional<PointMap> lift;
  std::optional<Walk> obstruction;  // loop at y0 whose image does not lift to a loop
  std::string message;
};

// A lift f′ of f: Y → B through the atlas with f′(y0) = e0. Homotopy of the
// obstruction loop is decided with the atlas cover as the system. Throws
// Error(kInvalidArgument) for a disconnected Y or p(e0) ≠ f(y0).
LiftMapResult lift_map(const CoveringAtlas& atlas, const PointMap& f, PointId y0,
                       PointId e0, std::size_t budget = kDefaultMoveBudget);

}  // namespace convergence
