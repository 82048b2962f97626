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

#include <cstddef>
#include <string>
#include <vector>

#include "convergence/covering.hpp"
#include "convergence/homotopy.hpp"

namespace convergence {

// A homotopy class of walks from the basepoint, named by its normal form.
struct WalkClass {
  Walk normal_form;
  bool certified = false;
  std::size_t depth = 0;  // BFS distance from the constant class
};

// The classes reachable from the constant walk in at most radius + 1 steps.
// Certified classes at depth ≤ radius form the interior; the ones at depth
// radius + 1 and the uncertified ones are never expanded.
struct CoverFragment {
  LimitSpace space;
  PointId base = 0;
  HomotopySystem system;
  std::size_t radius = 0;
  std::vector<WalkClass> classes;
  // V([γ]) = {[γ]} ∪ {[γ·(x→y)] : y ∈ V(x)} with x the end of γ, restricted
  // to the fragment. Classes are named by their normal forms.
  LimitSpace structure;
  PointMap projection;  // class -> endpoint
  PointSet interior;
  PointSet boundary;
  PointSet uncertified;
};

// Throws Error(kInvalidArgument) for a basepoint outside the carrier. Level
// expansion is spread over `threads` workers and merged in a fixed order, so
// the result does not depend on the thread count.
CoverFragment build_fragment(const LimitSpace& space, PointId x0, const HomotopySystem& sys,
                             std::size_t radius, std::size_t threads = 1);

// The endpoint projection restricted to the interior.
PointMap phi_bar(const CoverFragment& frag);

inline constexpr std::size_t kDefaultLoopLength = 16;

struct UniversalReport {
  std::size_t charts_checked = 0;
  std::size_t charts_skipped = 0;  // sheet leaves the interior
  bool atlas_ok = true;
  std::vector<std::string> defects;
  bool fibers_discrete = true;
  bool sheets_disjoint = true;
  std::size_t loops_checked = 0;
  bool simply_connected = true;
  bool path_connected = true;
  std::vector<std::string> stipulations;
  std::size_t uncertified = 0;

  bool passed() const {
    return atlas_ok && fibers_discrete && sheets_disjoint && simply_connected &&
           path_connected;
  }
};

// Checks every sheet B★ over a cover member as a one-chart atlas, sheet
// disjointness, discrete fibers, that closed walks of classes at the base class
// up to max_loop_length are null-homotopic, and path-connectedness of the
// interior. Throws Error(kInvalidArgument) for an empty interior.
UniversalReport verify_universal(const CoverFragment& frag,
                                 std::size_t max_loop_length = kDefaultLoopLength);

enum class Pi1Verdict { kTrivial, kInfiniteCyclicCompatible, kInconclusive };

struct Pi1Report {
  std::vector<Walk> loop_classes;  // certified normal forms of loops at x0, ascending
  std::vector<Walk> generators;
  Pi1Verdict verdict = Pi1Verdict::kInconclusive;
  // Fiber classes g^-a, ..., g^b in shift order when the verdict is cyclic.
  std::vector<Walk> shift_evidence;
  std::size_t uncertified = 0;
  std::vector<std::string> stipulations;
};

Pi1Report pi1_probe(const LimitSpace& space, PointId x0, const HomotopySystem& sys,
                    std::size_t max_len, std::size_t threads = 1);

struct TransportEntry {
  Walk from;  // loop class at the start of the walk
  Walk to;    // [w⁻¹·from·w]
  bool certified = false;
};

// Conjugation of the fragment's loop classes at its basepoint along w. Throws
// Error(kEndpointMismatch) unless w starts at the basepoint.
std::vector<TransportEntry> basepoint_transport(const CoverFragment& frag, const Walk& w);

// Cover members whose induced graph has a cycle, phrased as stipulations.
std::vector<std::string> cycle_stipulations(const HomotopySystem& sys);

}  // namespace convergence
