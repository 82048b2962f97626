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

#include "convergence/universal_cover.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <map>
#include <set>
#include <thread>

#include "convergence/connectivity.hpp"
#include "convergence/constructions.hpp"

namespace convergence {
namespace {

// Stop enumerating closed walks past this many.
constexpr std::size_t kMaxLoops = 500'000;

struct WalkLess {
  bool operator()(const Walk& a, const Walk& b) const {
    return canonical_order(a, b) < 0;
  }
};

std::vector<Normalization> normalize_all(const std::vector<Walk>& walks,
                                         const HomotopySystem& sys, std::size_t threads) {
  std::vector<Normalization> out(walks.size());
  const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), walks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < walks.size(); ++i) out[i] = normalize(walks[i], sys);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < walks.size(); i = next++) {
          out[i] = normalize(walks[i], sys);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string set_names(const LimitSpace& space, const PointSet& s) {
  std::string out = "{";
  for (PointId p : s) {
    if (out.size() > 1) out += ",";
    out += space.name(p);
  }
  return out + "}";
}

}  // namespace

CoverFragment build_fragment(const LimitSpace& space, PointId x0, const HomotopySystem& sys,
                             std::size_t radius, std::size_t threads) {
  if (!(space == sys.space())) {
    throw Error(ErrorCode::kCarrierMismatch, "system belongs to another space");
  }
  if (x0 >= space.size()) {
    throw Error(ErrorCode::kInvalidArgument, "basepoint outside the carrier");
  }
  const std::size_t n = space.size();
  std::vector<WalkClass> classes{{Walk::constant(x0), true, 0}};
  std::map<Walk, std::size_t, WalkLess> index{{classes[0].normal_form, 0}};
  // ext[c][y]: class of c extended by the step to y, when computed.
  std::vector<std::map<PointId, std::size_t>> ext(1);

  auto extensions = [&](std::size_t c, bool only_balls) {
    std::vector<std::pair<PointId, Walk>> out;
    const Walk& nf = classes[c].normal_form;
    const PointId x = nf.end();
    for (PointId y = 0; y < n; ++y) {
      if (y == x) continue;
      if (only_balls ? !space.vmax(x).contains(y) : !adjacent(space, x, y)) continue;
      out.emplace_back(y, concat(nf, Walk::through(space, {x, y})));
    }
    return out;
  };

  std::vector<std::size_t> frontier{0};
  for (std::size_t depth = 0; depth <= radius && !frontier.empty(); ++depth) {
    std::vector<std::pair<std::size_t, PointId>> origin;
    std::vector<Walk> walks;
    for (std::size_t c : frontier) {
      for (auto& [y, w] : extensions(c, false)) {
        origin.emplace_back(c, y);
        walks.push_back(std::move(w));
      }
    }
    const auto results = normalize_all(walks, sys, threads);
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const Normalization& r = results[i];
      auto [it, fresh] = index.try_emplace(r.normal_form, classes.size());
      if (fresh) {
        classes.push_back({r.normal_form, r.certified, depth + 1});
        ext.emplace_back();
        if (r.certified && depth + 1 <= radius) next.push_back(it->second);
      }
      ext[origin[i].first][origin[i].second] = it->second;
    }
    frontier = std::move(next);
  }

  // Classes never expanded only see the neighbors already present.
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!ext[c].empty() || (classes[c].certified && classes[c].depth <= radius)) continue;
    for (auto& [y, w] : extensions(c, true)) {
      auto it = index.find(normalize(w, sys).normal_form);
      if (it != index.end()) ext[c][y] = it->second;
    }
  }

  std::vector<std::string> names;
  std::vector<PointSet> vmax;
  std::vector<PointId> proj;
  PointSet interior, boundary, uncertified;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const WalkClass& k = classes[c];
    names.push_back(to_string(k.normal_form, space));
    const PointId x = k.normal_form.end();
    PointSet v = PointSet::singleton(static_cast<PointId>(c));
    for (auto [y, target] : ext[c]) {
      if (space.vmax(x).contains(y)) v.insert(static_cast<PointId>(target));
    }
    vmax.push_back(std::move(v));
    proj.push_back(x);
    const auto id = static_cast<PointId>(c);
    if (!k.certified) {
      uncertified.insert(id);
    } else if (k.depth <= radius) {
      interior.insert(id);
    } else {
      boundary.insert(id);
    }
  }
  LimitSpace structure(make_carrier(std::move(names)), std::move(vmax));
  PointMap projection(structure, space, std::move(proj));
  return CoverFragment{space,     x0,       sys,      radius,   std::move(classes),
                       structure, projection, interior, boundary, uncertified};
}

PointMap phi_bar(const CoverFragment& frag) {
  const Subspace sub = subspace(frag.structure, frag.interior);
  return compose(frag.projection, sub.inclusion);
}

std::vector<std::string> cycle_stipulations(const HomotopySystem& sys) {
  std::vector<std::string> out;
  const LimitSpace& space = sys.space();
  for (const PointSet& set : sys.cover().sets) {
    const Subspace sub = subspace(space, set);
    std::size_t edges = 0;
    for (PointId a = 0; a < sub.space.size(); ++a) {
      for (PointId b = a + 1; b < sub.space.size(); ++b) {
        if (adjacent(sub.space, a, b)) ++edges;
      }
    }
    if (edges + components(sub.space).size() > set.size()) {
      out.push_back("cover member " + set_names(space, set) +
                    " contains a cycle; its contractibility is stipulated");
    }
  }
  return out;
}

UniversalReport verify_universal(const CoverFragment& frag, std::size_t max_loop_length) {
  if (frag.interior.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "fragment interior is empty");
  }
  UniversalReport r;
  const LimitSpace& e_space = frag.structure;
  const LimitSpace& x_space = frag.space;
  const HomotopySystem& sys = frag.system;
  auto end_of = [&](PointId c) { return frag.projection(c); };

  // Sheet of c over member u: classes reached from c through classes lying
  // over the member. `leaves` reports contact with non-interior classes.
  auto sheet = [&](PointId c, const PointSet& member, bool& leaves) {
    PointSet seen = PointSet::singleton(c);
    std::deque<PointId> queue{c};
    leaves = false;
    while (!queue.empty()) {
      const PointId a = queue.front();
      queue.pop_front();
      for (PointId b = 0; b < e_space.size(); ++b) {
        if (seen.contains(b) || !member.contains(end_of(b)) || !adjacent(e_space, a, b)) {
          continue;
        }
        if (!frag.interior.contains(b)) {
          leaves = true;
          continue;
        }
        seen.insert(b);
        queue.push_back(b);
      }
    }
    return seen;
  };

  std::map<std::size_t, std::vector<PointSet>> sheets;
  std::vector<PointSet> fragment_cover;
  for (PointId c : frag.interior) {
    for (std::size_t u : sys.sets_containing(end_of(c))) {
      const PointSet& member = sys.cover().sets[u];
      bool leaves = false;
      const PointSet s = sheet(c, member, leaves);
      if (std::find(fragment_cover.begin(), fragment_cover.end(), s) == fragment_cover.end()) {
        fragment_cover.push_back(s);
      }
      if (leaves) {
        ++r.charts_skipped;
        continue;
      }
      ++r.charts_checked;
      sheets[u].push_back(s);
      const Subspace up = subspace(e_space, s);
      const Subspace down = subspace(x_space, member);
      std::vector<PointId> table;
      Chart chart{down.space.carrier()->all(), {}};
      for (PointId e : s) {
        const auto b = static_cast<PointId>(
            std::lower_bound(member.begin(), member.end(), end_of(e)) - member.begin());
        chart.entries.push_back({static_cast<PointId>(table.size()), b, 0});
        table.push_back(b);
      }
      const CoveringAtlas atlas{PointMap(up.space, down.space, std::move(table)), {"0"},
                                {std::move(chart)}};
      const AtlasReport ar = verify_atlas(atlas);
      if (!ar.ok) {
        r.atlas_ok = false;
        r.defects.push_back("sheet of '" + e_space.name(c) + "' over " +
                            set_names(x_space, member) + ": " + ar.defects.front());
      }
    }
  }

  for (const auto& [u, list] : sheets) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (list[i] != list[j] && list[i].intersects(list[j])) {
          r.sheets_disjoint = false;
          r.defects.push_back("sheets over " + set_names(x_space, sys.cover().sets[u]) +
                              " overlap");
        }
      }
    }
  }

  for (PointId x = 0; x < x_space.size(); ++x) {
    const PointSet fib = frag.projection.preimage(PointSet::singleton(x)) & frag.interior;
    for (PointId c : fib) {
      if ((e_space.vmax(c) & fib) != PointSet::singleton(c)) {
        r.fibers_discrete = false;
        r.defects.push_back("fiber over '" + x_space.name(x) + "' is not discrete at '" +
                            e_space.name(c) + "'");
      }
    }
  }

  const Subspace inner = subspace(e_space, frag.interior);
  r.path_connected = path_components(inner.space).size() == 1;
  if (!r.path_connected) r.defects.push_back("interior is not path-connected");

  // Closed walks at the constant class, checked downstairs and against the
  // fragment's own sheets.
  LocalCover local;
  for (const PointSet& s : fragment_cover) {
    PointSet l;
    for (PointId c : s) {
      l.insert(static_cast<PointId>(
          std::lower_bound(frag.interior.begin(), frag.interior.end(), c) -
          frag.interior.begin()));
    }
    local.sets.push_back(std::move(l));
  }
  std::optional<HomotopySystem> upstairs;
  try {
    upstairs.emplace(inner.space, local, sys.budget());
  } catch (const Error& e) {
    r.simply_connected = false;
    r.defects.push_back(std::string("sheets do not cover the interior: ") + e.what());
  }
  const PointMap down = compose(frag.projection, inner.inclusion);
  const PointId start = 0;  // the constant class is first in the interior
  std::vector<PointId> pts{start};
  bool capped = false;
  auto check_loop = [&] {
    ++r.loops_checked;
    const Walk loop = Walk::through(inner.space, pts);
    const Normalization below = normalize(pushforward(loop, down), sys);
    if (!below.certified || !below.normal_form.is_constant()) {
      r.simply_connected = false;
      r.defects.push_back("loop " + to_string(loop, inner.space) +
                          " does not project to a null-homotopic loop");
      return;
    }
    if (upstairs) {
      const Normalization above = normalize(loop, *upstairs);
      if (!above.certified || !above.normal_form.is_constant()) {
        r.simply_connected = false;
        r.defects.push_back("loop " + to_string(loop, inner.space) +
                            " does not contract in the fragment");
      }
    }
  };
  auto dfs = [&](auto& self) -> void {
    if (capped || !r.simply_connected) return;
    const PointId cur = pts.back();
    if (pts.size() > 1 && cur == start) {
      check_loop();
      if (r.loops_checked >= kMaxLoops) capped = true;
    }
    if (pts.size() > max_loop_length) return;
    for (PointId nb = 0; nb < inner.space.size(); ++nb) {
      if (nb == cur || !adjacent(inner.space, cur, nb)) continue;
      pts.push_back(nb);
      self(self);
      pts.pop_back();
    }
  };
  dfs(dfs);
  if (capped) {
    r.stipulations.push_back("loop enumeration stopped after " + std::to_string(kMaxLoops) +
                             " loops");
  }

  for (std::string& s : cycle_stipulations(sys)) r.stipulations.push_back(std::move(s));
  r.uncertified = frag.uncertified.size();
  return r;
}

Pi1Report pi1_probe(const LimitSpace& space, PointId x0, const HomotopySystem& sys,
                    std::size_t max_len, std::size_t threads) {
  const CoverFragment frag = build_fragment(space, x0, sys, max_len, threads);
  Pi1Report r;
  r.uncertified = frag.uncertified.size();
  r.stipulations = cycle_stipulations(sys);

  std::set<Walk, WalkLess> loops;
  for (PointId c : frag.interior) {
    if (frag.projection(c) == x0) loops.insert(frag.classes[c].normal_form);
  }
  r.loop_classes.assign(loops.begin(), loops.end());
  const Walk unit = Walk::constant(x0);

  // Certified class of a product, if it is one of the enumerated loops.
  auto times = [&](const Walk& a, const Walk& b) -> std::optional<Walk> {
    const Normalization n = normalize(concat(a, b), sys);
    if (!n.certified || !loops.contains(n.normal_form)) return std::nullopt;
    return n.normal_form;
  };

  std::set<Walk, WalkLess> generated{unit};
  std::vector<Walk> letters;
  for (const Walk& l : r.loop_classes) {
    if (generated.contains(l)) continue;
    r.generators.push_back(l);
    letters.push_back(l);
    letters.push_back(normalize(reverse(l), sys).normal_form);
    std::deque<Walk> queue(generated.begin(), generated.end());
    while (!queue.empty()) {
      const Walk h = queue.front();
      queue.pop_front();
      for (const Walk& s : letters) {
        if (auto p = times(h, s); p && generated.insert(*p).second) queue.push_back(*p);
      }
    }
  }

  if (r.uncertified > 0) {
    r.verdict = Pi1Verdict::kInconclusive;
  } else if (r.generators.empty()) {
    r.verdict = Pi1Verdict::kTrivial;
  } else if (r.generators.size() == 1) {
    const Walk& g = r.generators.front();
    const Walk g_inv = normalize(reverse(g), sys).normal_form;
    std::set<Walk, WalkLess> seen{unit};
    bool torsion = false;
    auto powers = [&](const Walk& step) {
      std::vector<Walk> out;
      Walk cur = unit;
      while (auto p = times(cur, step)) {
        if (!seen.insert(*p).second) {
          torsion = true;
          break;
        }
        out.push_back(*p);
        cur = *p;
      }
      return out;
    };
    const std::vector<Walk> up = powers(g);
    const std::vector<Walk> down = powers(g_inv);
    if (!torsion && !up.empty() && !down.empty() && seen.size() == loops.size()) {
      r.shift_evidence.assign(down.rbegin(), down.rend());
      r.shift_evidence.push_back(unit);
      r.shift_evidence.insert(r.shift_evidence.end(), up.begin(), up.end());
      r.verdict = Pi1Verdict::kInfiniteCyclicCompatible;
    }
  }
  return r;
}

std::vector<TransportEntry> basepoint_transport(const CoverFragment& frag, const Walk& w) {
  if (w.start() != frag.base) {
    throw Error(ErrorCode::kEndpointMismatch, "transport walk must start at the basepoint");
  }
  if (auto bad = invalid_step(w, frag.space)) {
    throw Error(ErrorCode::kMalformedPath,
                "walk is not continuous at jump " + std::to_string(*bad));
  }
  std::vector<TransportEntry> out;
  for (PointId c : frag.interior) {
    if (frag.projection(c) != frag.base) continue;
    const Walk& loop = frag.classes[c].normal_form;
    const Normalization n = normalize(concat(concat(reverse(w), loop), w), frag.system);
    out.push_back({loop, n.normal_form, n.certified});
  }
  return out;
}

}  // namespace convergence
