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

#include "convergence/homotopy.hpp"

#include <deque>
#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace convergence {

HomotopySystem::HomotopySystem(LimitSpace space, LocalCover cover,
                               std::size_t budget, bool flag_moves)
    : space_(std::move(space)),
      cover_(std::move(cover)),
      budget_(budget),
      flag_moves_(flag_moves),
      containing_(space_.size()) {
  cover_.scope = space_.carrier()->all();
  for (const PointSet& u : cover_.sets) {
    if (!u.empty() && u.back() >= space_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "cover member leaves the carrier");
    }
  }
  if (auto w = local_cover_defect(space_, cover_)) {
    throw Error(ErrorCode::kInvalidArgument,
                "homotopy cover is not a covering system at '" +
                    space_.name(w->point) + "'");
  }
  for (std::size_t i = 0; i < cover_.sets.size(); ++i) {
    for (PointId p : cover_.sets[i]) containing_[p].push_back(i);
  }
}

HomotopySystem HomotopySystem::unit_balls(const LimitSpace& space, std::size_t budget) {
  return HomotopySystem(space, unit_ball_cover(space), budget);
}

Move inverse(const Move& m) {
  return Move{m.kind, m.position, m.inserted, m.removed, m.cover_set};
}

Walk apply(const Walk& w, const Move& m) {
  const std::size_t last = m.position + m.removed.length();
  if (last >= w.points().size() || w.segment(m.position, last) != m.removed) {
    throw Error(ErrorCode::kInvalidArgument, "move does not match the walk");
  }
  std::vector<PointId> pts(w.points().begin(), w.points().begin() + m.position);
  pts.insert(pts.end(), m.inserted.points().begin(), m.inserted.points().end());
  pts.insert(pts.end(), w.points().begin() + last + 1, w.points().end());
  std::vector<Flag> flags(w.flags().begin(), w.flags().begin() + m.position);
  flags.insert(flags.end(), m.inserted.flags().begin(), m.inserted.flags().end());
  flags.insert(flags.end(), w.flags().begin() + last, w.flags().end());
  return Walk(std::move(pts), std::move(flags));
}

Walk apply(Walk w, std::span<const Move> moves) {
  for (const Move& m : moves) w = apply(w, m);
  return w;
}

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();
// Alternatives enumerated per segment during the lateral search.
constexpr std::size_t kMaxAlternatives = 64;
// How far above a local minimum the lateral search may climb.
constexpr std::size_t kDetourSlack = 2;

struct WalkLess {
  bool operator()(const Walk& a, const Walk& b) const {
    return canonical_order(a, b) < 0;
  }
};

class Engine {
 public:
  explicit Engine(const HomotopySystem& sys) : sys_(sys), space_(sys.space()) {}

  std::size_t used = 0;

  bool spend() { return ++used <= sys_.budget(); }

  // Length-reducing moves only, or also same-length lexicographic ones.
  std::optional<Move> reducing_move(const Walk& w, bool length_only) {
    const auto& pts = w.points();
    if (!length_only && sys_.flag_moves()) {
      for (std::size_t i = 0; i < w.length(); ++i) {
        const Flag best = *canonical_flag(space_, pts[i], pts[i + 1]);
        if (w.flags()[i] != best) {
          Walk removed = w.segment(i, i + 1);
          Walk inserted({pts[i], pts[i + 1]}, {best});
          return Move{MoveKind::kFlagChange, i, std::move(removed), std::move(inserted),
                      std::nullopt};
        }
      }
    }
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
      if (pts[i] == pts[i + 2] && space_.vmax(pts[i]).contains(pts[i + 1])) {
        return Move{MoveKind::kBacktrack, i, w.segment(i, i + 2), Walk::constant(pts[i]),
                    std::nullopt};
      }
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      for (std::size_t u : sys_.sets_containing(pts[i])) {
        const PointSet& set = sys_.cover().sets[u];
        std::size_t jmax = i;
        while (jmax + 1 < pts.size() && set.contains(pts[jmax + 1])) ++jmax;
        for (std::size_t j = jmax; j > i; --j) {
          const Walk& best = shortest(u, pts[i], pts[j]);
          const std::size_t len = j - i;
          if (best.length() < len ||
              (!length_only && best.length() == len &&
               canonical_order(best, w.segment(i, j)) < 0)) {
            return Move{MoveKind::kCoverFill, i, w.segment(i, j), best, u};
          }
        }
      }
    }
    return std::nullopt;
  }

  // Every length-reducing backtrack or cover fill, not just the first.
  std::vector<Move> shrinking_moves(const Walk& w) {
    std::vector<Move> out;
    const auto& pts = w.points();
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
      if (pts[i] == pts[i + 2] && space_.vmax(pts[i]).contains(pts[i + 1])) {
        out.push_back(Move{MoveKind::kBacktrack, i, w.segment(i, i + 2), Walk::constant(pts[i]),
                           std::nullopt});
      }
    }
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
      for (std::size_t u : sys_.sets_containing(pts[i])) {
        const PointSet& set = sys_.cover().sets[u];
        for (std::size_t j = i + 1; j < pts.size() && set.contains(pts[j]); ++j) {
          const Walk& best = shortest(u, pts[i], pts[j]);
          if (best.length() < j - i) {
            out.push_back(Move{MoveKind::kCoverFill, i, w.segment(i, j), best, u});
          }
        }
      }
    }
    return out;
  }

  // Moves that lengthen w by one (a step a,b detoured through a third
  // point of a member holding both) or two (an inserted backtrack).
  std::vector<Move> detour_moves(const Walk& w, std::size_t room) {
    std::vector<Move> out;
    const auto& pts = w.points();
    if (room >= 1) {
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const PointId a = pts[i];
        const PointId b = pts[i + 1];
        for (std::size_t u : sys_.sets_containing(a)) {
          const PointSet& set = sys_.cover().sets[u];
          if (!set.contains(b)) continue;
          for (PointId c : set) {
            if (c == a || c == b || !adjacent(space_, a, c) || !adjacent(space_, c, b)) continue;
            std::vector<PointId> via{a, c, b};
            Walk inserted(via, canonical_flags(via));
            out.push_back(Move{MoveKind::kCoverFill, i, w.segment(i, i + 1), std::move(inserted), u});
          }
        }
      }
    }
    if (room >= 2) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (PointId q : space_.vmax(pts[i])) {
          if (q == pts[i]) continue;
          std::vector<PointId> via{pts[i], q, pts[i]};
          Walk inserted(via, canonical_flags(via));
          out.push_back(Move{MoveKind::kBacktrack, i, Walk::constant(pts[i]), std::move(inserted),
                             std::nullopt});
        }
      }
    }
    return out;
  }

  // Swaps of a shortest in-member segment for another shortest one.
  std::vector<Move> lateral_moves(const Walk& w) {
    std::vector<Move> out;
    const auto& pts = w.points();
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
      for (std::size_t u : sys_.sets_containing(pts[i])) {
        const PointSet& set = sys_.cover().sets[u];
        std::size_t jmax = i;
        while (jmax + 1 < pts.size() && set.contains(pts[jmax + 1])) ++jmax;
        for (std::size_t j = i + 2; j <= jmax; ++j) {
          const Walk current = w.segment(i, j);
          for (Walk& alt : all_shortest(u, pts[i], pts[j])) {
            if (alt.length() == current.length() && alt != current) {
              out.push_back(Move{MoveKind::kCoverFill, i, current, std::move(alt), u});
            }
          }
        }
      }
    }
    return out;
  }

 private:
  // Undirected distances to `to` inside member u.
  const std::vector<std::size_t>& distances(std::size_t u, PointId to) {
    auto key = std::make_pair(u, to);
    auto it = dist_cache_.find(key);
    if (it != dist_cache_.end()) return it->second;
    const PointSet& set = sys_.cover().sets[u];
    std::vector<std::size_t> dist(space_.size(), kUnreachable);
    std::deque<PointId> queue{to};
    dist[to] = 0;
    while (!queue.empty()) {
      const PointId x = queue.front();
      queue.pop_front();
      for (PointId y : set) {
        if (dist[y] == kUnreachable && y != x && adjacent(space_, x, y)) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    return dist_cache_.emplace(key, std::move(dist)).first->second;
  }

  std::vector<Flag> canonical_flags(const std::vector<PointId>& pts) const {
    std::vector<Flag> flags;
    for (std::size_t k = 1; k < pts.size(); ++k) {
      flags.push_back(*canonical_flag(space_, pts[k - 1], pts[k]));
    }
    return flags;
  }

  // Lexicographically least shortest walk from a to b inside member u, with
  // canonical flags. Both endpoints lie in u and are joined inside it.
  const Walk& shortest(std::size_t u, PointId a, PointId b) {
    auto key = std::make_tuple(u, a, b);
    auto it = shortest_cache_.find(key);
    if (it != shortest_cache_.end()) return it->second;
    const auto& dist = distances(u, b);
    std::vector<PointId> pts{a};
    PointId cur = a;
    while (cur != b) {
      for (PointId y : sys_.cover().sets[u]) {
        if (dist[y] + 1 == dist[cur] && adjacent(space_, cur, y)) {
          cur = y;
          break;
        }
      }
      pts.push_back(cur);
    }
    Walk w(pts, canonical_flags(pts));
    return shortest_cache_.emplace(key, std::move(w)).first->second;
  }

  std::vector<Walk> all_shortest(std::size_t u, PointId a, PointId b) {
    const auto& dist = distances(u, b);
    std::vector<Walk> out;
    std::vector<PointId> pts{a};
    auto dfs = [&](auto& self, PointId cur) -> void {
      if (out.size() >= kMaxAlternatives) return;
      if (cur == b) {
        out.emplace_back(pts, canonical_flags(pts));
        return;
      }
      for (PointId y : sys_.cover().sets[u]) {
        if (dist[y] + 1 == dist[cur] && adjacent(space_, cur, y)) {
          pts.push_back(y);
          self(self, y);
          pts.pop_back();
        }
      }
    };
    if (dist[a] != kUnreachable) dfs(dfs, a);
    return out;
  }

  const HomotopySystem& sys_;
  const LimitSpace& space_;
  std::map<std::pair<std::size_t, PointId>, std::vector<std::size_t>> dist_cache_;
  std::map<std::tuple<std::size_t, PointId, PointId>, Walk> shortest_cache_;
};

struct LateralNode {
  Walk walk;
  std::size_t parent;
  std::optional<Move> via;
};

void append_path(const std::vector<LateralNode>& nodes, std::size_t k,
                 std::vector<Move>& trace) {
  std::vector<Move> rev;
  for (; nodes[k].via; k = nodes[k].parent) rev.push_back(*nodes[k].via);
  trace.insert(trace.end(), rev.rbegin(), rev.rend());
}

}  // namespace

Normalization normalize(const Walk& w, const HomotopySystem& sys) {
  if (auto bad = invalid_step(w, sys.space())) {
    throw Error(ErrorCode::kMalformedPath,
                "walk is not continuous at jump " + std::to_string(*bad));
  }
  Engine engine(sys);
  Normalization out{w, false, {}, 0};
  Walk& cur = out.normal_form;

  while (true) {
    while (auto mv = engine.reducing_move(cur, false)) {
      if (!engine.spend()) {
        out.work = engine.used;
        return out;
      }
      cur = apply(cur, *mv);
      out.trace.push_back(std::move(*mv));
    }

    // `cur` is a local minimum. Search the walks reachable by same-length
    // swaps and short detours for a shorter or smaller one.
    const std::size_t floor = cur.length();
    std::vector<LateralNode> nodes{{cur, 0, std::nullopt}};
    std::set<Walk, WalkLess> seen{cur};
    std::size_t best = 0;
    std::optional<std::size_t> shortcut;
    for (std::size_t k = 0; k < nodes.size() && !shortcut; ++k) {
      if (!engine.spend()) {
        out.work = engine.used;
        return out;
      }
      const Walk here = nodes[k].walk;
      if (here.length() == floor && canonical_order(here, nodes[best].walk) < 0) best = k;
      std::vector<Move> moves = engine.lateral_moves(here);
      for (Move& mv : engine.shrinking_moves(here)) moves.push_back(std::move(mv));
      for (Move& mv : engine.detour_moves(here, floor + kDetourSlack - here.length())) {
        moves.push_back(std::move(mv));
      }
      for (Move& mv : moves) {
        Walk next = apply(here, mv);
        if (!seen.insert(next).second) continue;
        const bool shorter = next.length() < floor;
        nodes.push_back({std::move(next), k, std::move(mv)});
        if (shorter) {
          shortcut = nodes.size() - 1;
          break;
        }
      }
    }
    const std::size_t target = shortcut.value_or(best);
    append_path(nodes, target, out.trace);
    cur = nodes[target].walk;
    if (!shortcut) break;
  }
  out.certified = true;
  out.work = engine.used;
  return out;
}

HomotopyResult homotopic(const Walk& w1, const Walk& w2, const HomotopySystem& sys) {
  if (w1.start() != w2.start() || w1.end() != w2.end()) {
    throw Error(ErrorCode::kEndpointMismatch, "homotopy rel endpoints needs equal endpoints");
  }
  if (w1 == w2) return {Verdict::kYes, {}};
  const Normalization n1 = normalize(w1, sys);
  const Normalization n2 = normalize(w2, sys);
  if (n1.normal_form == n2.normal_form) {
    HomotopyResult r{Verdict::kYes, n1.trace};
    for (auto it = n2.trace.rbegin(); it != n2.trace.rend(); ++it) {
      r.certificate.push_back(inverse(*it));
    }
    return r;
  }
  if (n1.certified && n2.certified) return {Verdict::kNo, {}};
  return {Verdict::kUnknown, {}};
}

}  // namespace convergence
