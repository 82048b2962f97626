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

#include "convergence/covering.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "convergence/connectivity.hpp"

namespace convergence {
namespace {

std::size_t rank_of(const PointSet& s, PointId p) {
  return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), p) - s.begin());
}

std::string set_names(const LimitSpace& space, const PointSet& s) {
  std::string out = "{";
  for (PointId p : s) {
    if (out.size() > 1) out += ",";
    out += space.name(p);
  }
  return out + "}";
}

const ChartEntry* entry_for(const Chart& chart, PointId e) {
  auto it = std::lower_bound(chart.entries.begin(), chart.entries.end(), e,
                             [](const ChartEntry& c, PointId v) { return c.e < v; });
  return it != chart.entries.end() && it->e == e ? &*it : nullptr;
}

const ChartEntry* entry_at(const Chart& chart, PointId b, std::size_t fiber) {
  for (const ChartEntry& c : chart.entries) {
    if (c.b == b && c.fiber == fiber) return &c;
  }
  return nullptr;
}

// The sheet-preserving image of `down` starting above down.start() at `from`.
Walk lift_in_chart(const Chart& chart, const Walk& down, PointId from) {
  const ChartEntry* start = entry_for(chart, from);
  if (start == nullptr || start->b != down.start()) {
    throw Error(ErrorCode::kAtlasDefect, "chart does not contain the start of the lift");
  }
  std::vector<PointId> pts{from};
  for (std::size_t i = 1; i < down.points().size(); ++i) {
    const ChartEntry* next = entry_at(chart, down.points()[i], start->fiber);
    if (next == nullptr) {
      throw Error(ErrorCode::kAtlasDefect, "chart has no point over the sheet");
    }
    pts.push_back(next->e);
  }
  return Walk(std::move(pts), down.flags());
}

bool chart_is_homeomorphism(const CoveringAtlas& atlas, const Chart& chart,
                            const PointSet& pre) {
  const Subspace up = subspace(atlas.total(), pre);
  const Subspace over = subspace(atlas.base(), chart.set);
  const LimitSpace fibers = LimitSpace::discrete(make_carrier(atlas.fiber));
  const LimitSpace factors[] = {over.space, fibers};
  const ProductSpace prod = product(factors);
  std::vector<PointId> table;
  table.reserve(chart.entries.size());
  for (const ChartEntry& c : chart.entries) {
    table.push_back(static_cast<PointId>(rank_of(chart.set, c.b) * atlas.fiber.size() +
                                         c.fiber));
  }
  return is_homeomorphism(PointMap(up.space, prod.space, std::move(table)));
}

}  // namespace

LocalCover CoveringAtlas::cover() const {
  LocalCover c;
  for (const Chart& chart : charts) c.sets.push_back(chart.set);
  c.scope = base().carrier()->all();
  return c;
}

AtlasReport verify_atlas(const CoveringAtlas& atlas) {
  AtlasReport r;
  auto defect = [&r](std::string msg) {
    r.ok = false;
    r.defects.push_back(std::move(msg));
  };
  const LimitSpace& e_space = atlas.total();
  const LimitSpace& b_space = atlas.base();
  const PointMap& p = atlas.projection;

  if (auto w = continuity_defect(p)) {
    defect("projection is not continuous at '" + e_space.name(w->point) + "'");
  }
  for (PointId b = 0; b < b_space.size(); ++b) {
    if (p.preimage(PointSet::singleton(b)).empty()) {
      defect("projection misses '" + b_space.name(b) + "'");
    }
  }
  if (std::set<std::string>(atlas.fiber.begin(), atlas.fiber.end()).size() !=
      atlas.fiber.size()) {
    defect("fiber index names repeat");
  }

  bool sets_in_base = true;
  for (std::size_t k = 0; k < atlas.charts.size(); ++k) {
    const PointSet& s = atlas.charts[k].set;
    if (!s.empty() && s.back() >= b_space.size()) {
      defect("chart " + std::to_string(k) + " leaves the base");
      sets_in_base = false;
    }
  }
  if (sets_in_base) {
    if (auto w = local_cover_defect(b_space, atlas.cover())) {
      defect("chart sets miss the convergent set " + set_names(b_space, w->generator) +
             " at '" + b_space.name(w->point) + "'");
    }
  }

  for (std::size_t k = 0; k < atlas.charts.size() && sets_in_base; ++k) {
    const Chart& chart = atlas.charts[k];
    const std::string tag = "chart " + std::to_string(k);
    const PointSet pre = p.preimage(chart.set);
    std::vector<PointId> listed;
    for (const ChartEntry& c : chart.entries) listed.push_back(c.e);
    if (!std::equal(listed.begin(), listed.end(), pre.begin(), pre.end())) {
      defect(tag + " does not list the preimage of its set in order");
      continue;
    }
    bool entries_ok = true;
    std::set<std::pair<PointId, std::size_t>> hit;
    for (const ChartEntry& c : chart.entries) {
      if (c.b != p(c.e)) {
        defect(tag + ": q1 after the chart differs from the projection at '" +
               e_space.name(c.e) + "'");
        entries_ok = false;
      } else if (c.fiber >= atlas.fiber.size()) {
        defect(tag + ": fiber index out of range at '" + e_space.name(c.e) + "'");
        entries_ok = false;
      } else {
        hit.emplace(c.b, c.fiber);
      }
    }
    if (!entries_ok) continue;
    if (hit.size() != chart.entries.size() ||
        hit.size() != chart.set.size() * atlas.fiber.size()) {
      defect(tag + " is not a bijection onto its set times the fiber");
      continue;
    }
    if (!chart_is_homeomorphism(atlas, chart, pre)) {
      defect(tag + " is not a homeomorphism");
    }
  }

  for (PointId b = 0; b < b_space.size(); ++b) {
    const PointSet fib = p.preimage(PointSet::singleton(b));
    for (PointId e : fib) {
      if ((e_space.vmax(e) & fib) != PointSet::singleton(e)) {
        defect("fiber over '" + b_space.name(b) + "' is not discrete at '" +
               e_space.name(e) + "'");
      }
    }
  }
  return r;
}

std::optional<CoveringAtlas> search_atlas(const PointMap& p) {
  if (!is_continuous(p)) {
    throw Error(ErrorCode::kNotContinuous, "projection is not continuous");
  }
  if (!p.is_surjective()) {
    throw Error(ErrorCode::kNotSurjective, "projection is not surjective");
  }
  const LimitSpace& e_space = p.domain();
  const LimitSpace& b_space = p.codomain();

  std::vector<PointSet> candidates;
  for (PointId b = 0; b < b_space.size(); ++b) {
    const PointSet& u = b_space.vmax(b);
    if (std::find(candidates.begin(), candidates.end(), u) == candidates.end()) {
      candidates.push_back(u);
    }
  }

  // Charts keyed by sheet count, in candidate order.
  std::map<std::size_t, std::vector<Chart>> by_count;
  for (const PointSet& u : candidates) {
    const PointSet pre = p.preimage(u);
    const Subspace sub = subspace(e_space, pre);
    const Subspace over = subspace(b_space, u);
    Chart chart{u, {}};
    bool good = true;
    const auto comps = components(sub.space);
    std::vector<std::size_t> sheet(e_space.size(), 0);
    for (std::size_t c = 0; c < comps.size() && good; ++c) {
      PointSet comp;
      for (PointId local : comps[c]) comp.insert(sub.inclusion(local));
      if (p.image(comp) != u || comp.size() != u.size()) {
        good = false;
        break;
      }
      const Subspace piece = subspace(e_space, comp);
      std::vector<PointId> table;
      for (PointId e : comp) {
        table.push_back(static_cast<PointId>(rank_of(u, p(e))));
        sheet[e] = c;
      }
      good = is_homeomorphism(PointMap(piece.space, over.space, std::move(table)));
    }
    if (!good) continue;
    for (PointId e : pre) chart.entries.push_back({e, p(e), sheet[e]});
    by_count[comps.size()].push_back(std::move(chart));
  }

  if (b_space.size() == 0) {
    return CoveringAtlas{p, {}, {}};
  }
  for (auto& [count, charts] : by_count) {
    CoveringAtlas atlas{p, {}, std::move(charts)};
    for (std::size_t i = 0; i < count; ++i) atlas.fiber.push_back(std::to_string(i));
    if (!is_local_cover(b_space, atlas.cover())) continue;
    if (verify_atlas(atlas).ok) return atlas;
  }
  return std::nullopt;
}

Walk lift_path(const CoveringAtlas& atlas, const Walk& w, PointId e0, ChartChoice choice) {
  if (auto bad = invalid_step(w, atlas.base())) {
    throw Error(ErrorCode::kMalformedPath,
                "walk is not continuous at jump " + std::to_string(*bad));
  }
  if (e0 >= atlas.total().size() || atlas.projection(e0) != w.start()) {
    throw Error(ErrorCode::kEndpointMismatch, "start point does not lie over the walk");
  }
  std::vector<PointId> pts{e0};
  const std::size_t n = atlas.charts.size();
  for (std::size_t i = 0; i < w.length(); ++i) {
    const PointId a = w.points()[i];
    const PointId b = w.points()[i + 1];
    const Chart* chart = nullptr;
    for (std::size_t k = 0; k < n && chart == nullptr; ++k) {
      const Chart& c = atlas.charts[choice == ChartChoice::kFirst ? k : n - 1 - k];
      if (c.set.contains(a) && c.set.contains(b)) chart = &c;
    }
    if (chart == nullptr) {
      throw Error(ErrorCode::kAtlasDefect, "no chart contains the step '" +
                                               atlas.base().name(a) + "' -> '" +
                                               atlas.base().name(b) + "'");
    }
    pts.push_back(lift_in_chart(*chart, w.segment(i, i + 1), pts.back()).end());
  }
  Walk lift(std::move(pts), w.flags());
  if (!is_valid(lift, atlas.total())) {
    throw Error(ErrorCode::kAtlasDefect, "lifted step is not continuous");
  }
  return lift;
}

Walk lift_homotopy(const CoveringAtlas& atlas, std::span<const Move> moves,
                   const Walk& lift1) {
  if (!is_valid(lift1, atlas.total())) {
    throw Error(ErrorCode::kInvalidArgument, "initial lift is not a valid walk");
  }
  Walk down = pushforward(lift1, atlas.projection);
  if (down.length() != lift1.length()) {
    throw Error(ErrorCode::kInvalidArgument, "initial lift stalls in a fiber");
  }
  Walk up = lift1;
  for (const Move& m : moves) {
    const Walk next_down = apply(down, m);
    PointSet touched(m.removed.points().begin(), m.removed.points().end());
    touched |= PointSet(m.inserted.points().begin(), m.inserted.points().end());
    const Chart* chart = nullptr;
    for (const Chart& c : atlas.charts) {
      if (touched.is_subset_of(c.set)) {
        chart = &c;
        break;
      }
    }
    if (chart == nullptr) {
      throw Error(ErrorCode::kAtlasDefect, "move at position " + std::to_string(m.position) +
                                               " fits in no chart");
    }
    const PointId from = up.points()[m.position];
    const PointId to = up.points()[m.position + m.removed.length()];
    const Walk inserted = lift_in_chart(*chart, m.inserted, from);
    if (inserted.end() != to) {
      throw Error(ErrorCode::kAtlasDefect, "move at position " + std::to_string(m.position) +
                                               " changes sheet");
    }
    up = apply(up, Move{m.kind, m.position, up.segment(m.position, m.position + m.removed.length()),
                        inserted, std::nullopt});
    down = next_down;
  }
  if (up != lift_path(atlas, down, lift1.start())) {
    throw Error(ErrorCode::kAtlasDefect, "transported lift differs from the direct lift");
  }
  return up;
}

bool has_unique_path_lifting(const CoveringAtlas& atlas) {
  const LimitSpace& e_space = atlas.total();
  for (PointId b = 0; b < atlas.base().size(); ++b) {
    const PointSet fib = atlas.projection.preimage(PointSet::singleton(b));
    for (PointId e : fib) {
      for (PointId e2 : fib) {
        if (e != e2 && adjacent(e_space, e, e2)) return false;
      }
    }
  }
  return true;
}

LiftMapResult lift_map(const CoveringAtlas& atlas, const PointMap& f, PointId y0,
                       PointId e0, std::size_t budget) {
  const LimitSpace& y_space = f.domain();
  if (!same_carrier(f.codomain().carrier(), atlas.base().carrier())) {
    throw Error(ErrorCode::kCarrierMismatch, "map does not land in the base");
  }
  if (y0 >= y_space.size() || e0 >= atlas.total().size()) {
    throw Error(ErrorCode::kInvalidArgument, "basepoint outside the carrier");
  }
  if (!is_connected(y_space)) {
    throw Error(ErrorCode::kInvalidArgument, "domain is not connected");
  }
  if (atlas.projection(e0) != f(y0)) {
    throw Error(ErrorCode::kInvalidArgument, "basepoints do not match under the projection");
  }
  if (!is_continuous(f)) {
    throw Error(ErrorCode::kNotContinuous, "map is not continuous");
  }
  const std::size_t n = y_space.size();
  constexpr PointId kNone = static_cast<PointId>(-1);

  // Lift of the image of the step y -> y2 starting at e.
  auto step_lift = [&](PointId y, PointId y2, PointId e) {
    if (f(y) == f(y2)) return e;
    return lift_path(atlas, Walk::through(atlas.base(), {f(y), f(y2)}), e).end();
  };

  std::vector<PointId> parent(n, kNone);
  std::vector<PointId> lifted(n, kNone);
  std::deque<PointId> queue{y0};
  lifted[y0] = e0;
  parent[y0] = y0;
  while (!queue.empty()) {
    const PointId y = queue.front();
    queue.pop_front();
    for (PointId y2 = 0; y2 < n; ++y2) {
      if (parent[y2] == kNone && adjacent(y_space, y, y2)) {
        parent[y2] = y;
        lifted[y2] = step_lift(y, y2, lifted[y]);
        queue.push_back(y2);
      }
    }
  }
  auto tree_walk = [&](PointId y) {
    std::vector<PointId> pts;
    for (PointId v = y; v != y0; v = parent[v]) pts.push_back(v);
    pts.push_back(y0);
    std::reverse(pts.begin(), pts.end());
    return Walk::through(y_space, std::move(pts));
  };

  LiftMapResult out;
  for (PointId y = 0; y < n; ++y) {
    for (PointId y2 = y + 1; y2 < n; ++y2) {
      if (!adjacent(y_space, y, y2) || step_lift(y, y2, lifted[y]) == lifted[y2]) continue;
      const Walk loop = Walk::through(
          y_space, concat(concat(tree_walk(y), Walk::through(y_space, {y, y2})),
                          reverse(tree_walk(y2)))
                       .points());
      const HomotopySystem sys(atlas.base(), atlas.cover(), budget);
      const Walk image = pushforward(loop, f);
      const HomotopyResult h = homotopic(image, Walk::constant(f(y0)), sys);
      out.obstruction = loop;
      if (h.verdict == Verdict::kNo) {
        out.outcome = LiftOutcome::kObstructed;
        out.message = "image of the loop does not lift to a loop";
      } else if (h.verdict == Verdict::kUnknown) {
        out.outcome = LiftOutcome::kIndeterminate;
        out.message = "homotopy budget exhausted on the difference loop";
      } else {
        out.outcome = LiftOutcome::kIndeterminate;
        out.message = "difference loop is null-homotopic but its lift is open";
      }
      return out;
    }
  }

  PointMap lift(y_space, atlas.total(), lifted);
  if (compose(atlas.projection, lift).table() != f.table() || !is_continuous(lift)) {
    out.outcome = LiftOutcome::kIndeterminate;
    out.message = "assembled lift is not a continuous lift";
    return out;
  }
  out.outcome = LiftOutcome::kLifted;
  out.lift = std::move(lift);
  return out;
}

}  // namespace convergence
