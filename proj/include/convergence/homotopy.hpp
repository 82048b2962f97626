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
#include <vector>

#include "convergence/connectivity.hpp"
#include "convergence/paths.hpp"

namespace convergence {

inline constexpr std::size_t kDefaultMoveBudget = 1000;

// A space with a designated covering system whose members are stipulated to
// have all their loops contractible in the whole space (the semi-locally
// simply connected witness). Homotopy of walks is decided relative to it.
class HomotopySystem {
 public:
  // Throws Error(kInvalidArgument) unless `cover` is a covering system of the
  // whole carrier.
  HomotopySystem(LimitSpace space, LocalCover cover,
                 std::size_t budget = kDefaultMoveBudget, bool flag_moves = true);

  // Cover {V(x)}.
  static HomotopySystem unit_balls(const LimitSpace& space,
                                   std::size_t budget = kDefaultMoveBudget);

  const LimitSpace& space() const noexcept { return space_; }
  const LocalCover& cover() const noexcept { return cover_; }
  std::size_t budget() const noexcept { return budget_; }
  bool flag_moves() const noexcept { return flag_moves_; }
  // Indices of cover members containing p, ascending.
  const std::vector<std::size_t>& sets_containing(PointId p) const {
    return containing_.at(p);
  }

 private:
  LimitSpace space_;
  LocalCover cover_;
  std::size_t budget_;
  bool flag_moves_;
  std::vector<std::vector<std::size_t>> containing_;
};

// Walks never repeat a point across a jump, so stutter insertion/deletion is
// absorbed by the representation and never appears as a move.
enum class MoveKind {
  kBacktrack,   // p,q,p -> p with q ∈ V(p)
  kFlagChange,  // same points, other valid flag at one jump
  kCoverFill,   // sub-walk inside a cover member -> other sub-walk inside it
};

// Replace `removed` (which starts at point index `position`) by `inserted`.
// Both have the same endpoints.
struct Move {
  MoveKind kind;
  std::size_t position;
  Walk removed;
  Walk inserted;
  std::optional<std::size_t> cover_set;

  friend bool operator==(const Move&, const Move&) = default;
};

Move inverse(const Move& m);
// Throws Error(kInvalidArgument) if the walk does not contain m.removed at
// m.position.
Walk apply(const Walk& w, const Move& m);
Walk apply(Walk w, std::span<const Move> moves);

struct Normalization {
  Walk normal_form;
  bool certified = false;  // false: budget ran out, normal_form is just the last walk reached
  std::vector<Move> trace;  // from the input to normal_form
  std::size_t work = 0;
};

// Rewrites toward the shortest, then lexicographically least, representative.
// Throws Error(kMalformedPath) if w is not a valid walk in the system's space.
Normalization normalize(const Walk& w, const HomotopySystem& sys);

enum class Verdict { kYes, kNo, kUnknown };

struct HomotopyResult {
  Verdict verdict = Verdict::kUnknown;
  std::vector<Move> certificate;  // w1 -> w2 when kYes
};

// Homotopy rel endpoints. kNo only when both normal forms are certified and
// differ. Throws Error(kEndpointMismatch) for different endpoints.
HomotopyResult homotopic(const Walk& w1, const Walk& w2, const HomotopySystem& sys);

}  // namespace convergence
