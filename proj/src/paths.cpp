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

#include "convergence/paths.hpp"

#include <algorithm>
#include <deque>

namespace convergence {

bool step_valid(const LimitSpace& space, PointId from, PointId to, Flag flag) {
  return flag == Flag::kLeft ? space.vmax(from).contains(to)
                             : space.vmax(to).contains(from);
}

std::optional<Flag> canonical_flag(const LimitSpace& space, PointId from, PointId to) {
  if (step_valid(space, from, to, Flag::kLeft)) return Flag::kLeft;
  if (step_valid(space, from, to, Flag::kRight)) return Flag::kRight;
  return std::nullopt;
}

bool adjacent(const LimitSpace& space, PointId from, PointId to) {
  return canonical_flag(space, from, to).has_value();
}

Walk::Walk(std::vector<PointId> points, std::vector<Flag> flags)
    : points_(std::move(points)), flags_(std::move(flags)) {
  if (points_.empty() || flags_.size() + 1 != points_.size()) {
    throw Error(ErrorCode::kMalformedPath, "walk needs one more point than flags");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i] == points_[i - 1]) {
      throw Error(ErrorCode::kMalformedPath, "walk repeats a point across a jump");
    }
  }
}

Walk Walk::through(const LimitSpace& space, std::vector<PointId> points) {
  std::vector<Flag> flags;
  for (std::size_t i = 1; i < points.size(); ++i) {
    auto f = canonical_flag(space, points[i - 1], points[i]);
    if (!f) {
      throw Error(ErrorCode::kMalformedPath,
                  "no valid step from '" + space.name(points[i - 1]) + "' to '" +
                      space.name(points[i]) + "'");
    }
    flags.push_back(*f);
  }
  return Walk(std::move(points), std::move(flags));
}

Walk Walk::segment(std::size_t first, std::size_t last) const {
  return Walk(std::vector<PointId>(points_.begin() + first, points_.begin() + last + 1),
              std::vector<Flag>(flags_.begin() + first, flags_.begin() + last));
}

std::strong_ordering canonical_order(const Walk& a, const Walk& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(
          a.points().begin(), a.points().end(), b.points().begin(), b.points().end());
      c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(a.flags().begin(), a.flags().end(),
                                                b.flags().begin(), b.flags().end());
}

std::optional<std::size_t> invalid_step(const Walk& w, const LimitSpace& space) {
  for (PointId p : w.points()) {
    if (p >= space.size()) {
      throw Error(ErrorCode::kMalformedPath, "walk leaves the carrier");
    }
  }
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (!step_valid(space, w.points()[i], w.points()[i + 1], w.flags()[i])) {
      return i + 1;
    }
  }
  return std::nullopt;
}

StepPath::StepPath(Walk walk, std::vector<Cut> cuts)
    : walk_(std::move(walk)), cuts_(std::move(cuts)) {
  if (cuts_.size() != walk_.length()) {
    throw Error(ErrorCode::kMalformedPath, "one cut per jump is required");
  }
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (cuts_[i] <= Cut(0) || cuts_[i] >= Cut(1)) {
      throw Error(ErrorCode::kMalformedPath, "cuts must lie strictly inside (0,1)");
    }
    if (i > 0 && cuts_[i] <= cuts_[i - 1]) {
      throw Error(ErrorCode::kMalformedPath, "cuts must be strictly increasing");
    }
  }
}

StepPath StepPath::uniform(Walk walk) {
  std::vector<Cut> cuts;
  const auto k = static_cast<std::int64_t>(walk.length());
  for (std::int64_t i = 1; i <= k; ++i) cuts.emplace_back(i, k + 1);
  return StepPath(std::move(walk), std::move(cuts));
}

PointId StepPath::at(const Cut& t) const {
  if (t < Cut(0) || t > Cut(1)) {
    throw Error(ErrorCode::kInvalidArgument, "parameter outside [0,1]");
  }
  const auto& pts = walk_.points();
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (t < cuts_[i]) return pts[i];
    if (t == cuts_[i]) return walk_.flags()[i] == Flag::kLeft ? pts[i] : pts[i + 1];
  }
  return pts.back();
}

std::optional<std::size_t> validate(const StepPath& path, const LimitSpace& space) {
  return invalid_step(path.walk(), space);
}

Walk to_walk(const StepPath& path) { return path.walk(); }

Walk concat(const Walk& p, const Walk& q) {
  if (p.end() != q.start()) {
    throw Error(ErrorCode::kEndpointMismatch, "walks do not meet");
  }
  std::vector<PointId> pts = p.points();
  pts.insert(pts.end(), q.points().begin() + 1, q.points().end());
  std::vector<Flag> flags = p.flags();
  flags.insert(flags.end(), q.flags().begin(), q.flags().end());
  return Walk(std::move(pts), std::move(flags));
}

Walk reverse(const Walk& w) {
  std::vector<PointId> pts(w.points().rbegin(), w.points().rend());
  std::vector<Flag> flags;
  flags.reserve(w.length());
  for (auto it = w.flags().rbegin(); it != w.flags().rend(); ++it) {
    flags.push_back(opposite(*it));
  }
  return Walk(std::move(pts), std::move(flags));
}

Walk pushforward(const Walk& w, const PointMap& m) {
  std::vector<PointId> pts{m(w.start())};
  std::vector<Flag> flags;
  for (std::size_t i = 0; i < w.length(); ++i) {
    const PointId next = m(w.points()[i + 1]);
    if (next == pts.back()) continue;
    pts.push_back(next);
    flags.push_back(w.flags()[i]);
  }
  return Walk(std::move(pts), std::move(flags));
}

std::vector<PointSet> path_components(const LimitSpace& space) {
  const std::size_t n = space.size();
  std::vector<bool> seen(n, false);
  std::vector<PointSet> out;
  for (PointId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    PointSet comp;
    std::deque<PointId> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const PointId x = queue.front();
      queue.pop_front();
      comp.insert(x);
      for (PointId y = 0; y < n; ++y) {
        if (!seen[y] && y != x && adjacent(space, x, y)) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::string to_string(const Walk& w, const LimitSpace& space) {
  std::string s;
  bool canonical = true;
  for (std::size_t i = 0; i < w.points().size(); ++i) {
    if (i) s += ',';
    s += space.name(w.points()[i]);
    if (i < w.length() &&
        canonical_flag(space, w.points()[i], w.points()[i + 1]) != w.flags()[i]) {
      canonical = false;
    }
  }
  if (!canonical) {
    s += ';';
    for (Flag f : w.flags()) s += (f == Flag::kLeft ? 'L' : 'R');
  }
  return s;
}

}  // namespace convergence
