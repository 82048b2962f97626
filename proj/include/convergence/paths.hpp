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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include <boost/rational.hpp>

#include "convergence/core_space.hpp"

namespace convergence {

// Which side of a jump the path takes at the cut itself.
//   kLeft:  value at the cut is the earlier point p, needs q ∈ V(p).
//   kRight: value at the cut is the later point q, needs p ∈ V(q).
enum class Flag : std::uint8_t { kLeft, kRight };

inline Flag opposite(Flag f) { return f == Flag::kLeft ? Flag::kRight : Flag::kLeft; }

bool step_valid(const LimitSpace& space, PointId from, PointId to, Flag flag);
// kLeft when valid, otherwise kRight when valid, otherwise nullopt.
std::optional<Flag> canonical_flag(const LimitSpace& space, PointId from, PointId to);
// Some flag makes the step valid: from ∈ V(to) or to ∈ V(from).
bool adjacent(const LimitSpace& space, PointId from, PointId to);

// The reparametrization-free core of a step path: its point sequence and the
// flag at each jump. Consecutive points are distinct.
class Walk {
 public:
  Walk() = default;
  // Throws Error(kMalformedPath) on size mismatch or a repeated neighbor.
  Walk(std::vector<PointId> points, std::vector<Flag> flags);

  static Walk constant(PointId p) { return Walk({p}, {}); }
  // Canonical flags at every step; throws if some step is not valid.
  static Walk through(const LimitSpace& space, std::vector<PointId> points);

  const std::vector<PointId>& points() const noexcept { return points_; }
  const std::vector<Flag>& flags() const noexcept { return flags_; }
  std::size_t length() const noexcept { return flags_.size(); }
  bool is_constant() const noexcept { return flags_.empty(); }
  PointId start() const { return points_.front(); }
  PointId end() const { return points_.back(); }

  // Sub-walk over points [first, last].
  Walk segment(std::size_t first, std::size_t last) const;

  friend bool operator==(const Walk&, const Walk&) = default;

 private:
  std::vector<PointId> points_;
  std::vector<Flag> flags_;
};

// Shorter first, then points lexicographically, then flags with kLeft first.
std::strong_ordering canonical_order(const Walk& a, const Walk& b);

// 1-based index of the first jump whose flag condition fails.
std::optional<std::size_t> invalid_step(const Walk& w, const LimitSpace& space);
inline bool is_valid(const Walk& w, const LimitSpace& space) {
  return !invalid_step(w, space).has_value();
}

using Cut = boost::rational<std::int64_t>;

// A step function I → X: value points[i] on the open interval between cuts
// i and i+1, value at cut i picked by flags[i-1].
class StepPath {
 public:
  // Throws Error(kMalformedPath) unless 0 < cut_1 < ... < cut_k < 1 and the
  // counts match.
  StepPath(Walk walk, std::vector<Cut> cuts);

  // Evenly spaced cuts i/(k+1).
  static StepPath uniform(Walk walk);

  const Walk& walk() const noexcept { return walk_; }
  const std::vector<Cut>& cuts() const noexcept { return cuts_; }
  PointId at(const Cut& t) const;

 private:
  Walk walk_;
  std::vector<Cut> cuts_;
};

// Continuity of the step path: at cut i the image of every neighborhood filter
// is [{p_{i-1}, p_i}], which must converge to the value taken at the cut.
// Returns the 1-based index of the first failing cut.
std::optional<std::size_t> validate(const StepPath& path, const LimitSpace& space);

Walk to_walk(const StepPath& path);

// Throws Error(kEndpointMismatch) unless p ends where q starts.
Walk concat(const Walk& p, const Walk& q);
Walk reverse(const Walk& w);
// Pointwise image with equal neighbors merged.
Walk pushforward(const Walk& w, const PointMap& m);

// Classes of "joined by a valid one-step walk", closed transitively.
std::vector<PointSet> path_components(const LimitSpace& space);

// "a,b,c" plus ";LR" when some flag differs from canonical.
std::string to_string(const Walk& w, const LimitSpace& space);

}  // namespace convergence
