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

// Builders and brute-force reference implementations shared by the unit
// tests and the acceptance runner. Everything here works on bitmasks and
// avoids the library's own algorithms.

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "convergence/constructions.hpp"
#include "convergence/core_space.hpp"
#include "convergence/paths.hpp"

namespace convergence::testing {

using Mask = std::uint64_t;

inline std::vector<std::string> point_names(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

inline LimitSpace from_masks(const std::vector<Mask>& v, const std::string& prefix = "p") {
  std::vector<PointSet> sets;
  for (Mask m : v) sets.push_back(PointSet::from_mask(m));
  return LimitSpace(make_carrier(point_names(v.size(), prefix)), std::move(sets));
}

inline LimitSpace from_masks(const CarrierPtr& carrier, const std::vector<Mask>& v) {
  std::vector<PointSet> sets;
  for (Mask m : v) sets.push_back(PointSet::from_mask(m));
  return LimitSpace(carrier, std::move(sets));
}

inline std::vector<Mask> masks_of(const LimitSpace& s) {
  std::vector<Mask> out;
  for (PointId x = 0; x < s.size(); ++x) out.push_back(s.vmax(x).to_mask());
  return out;
}

// V(v_i) = {v_{i-1}, v_i, v_{i+1}}, names prefix0 .. prefix{n-1}, optionally
// zero padded to `width` digits.
inline LimitSpace cycle(std::size_t n, const std::string& prefix = "v", int width = 1) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    std::string d = std::to_string(i);
    names.push_back(prefix + std::string(width > static_cast<int>(d.size())
                                             ? width - d.size()
                                             : 0,
                                         '0') +
                    d);
  }
  std::vector<PointSet> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back({static_cast<PointId>((i + n - 1) % n), static_cast<PointId>(i),
                 static_cast<PointId>((i + 1) % n)});
  }
  return LimitSpace(make_carrier(std::move(names)), std::move(v));
}

// Centre "c" joined to leaves l1 .. lk.
inline LimitSpace star(std::size_t leaves) {
  std::vector<std::string> names{"c"};
  std::vector<PointSet> v{PointSet::first_n(leaves + 1)};
  for (std::size_t i = 1; i <= leaves; ++i) {
    names.push_back("l" + std::to_string(i));
    v.push_back({0, static_cast<PointId>(i)});
  }
  return LimitSpace(make_carrier(std::move(names)), std::move(v));
}

// Calls f on every closed structure of an n-point carrier (V(x) ∋ x).
inline void for_each_structure(std::size_t n, const std::function<void(const std::vector<Mask>&)>& f) {
  const Mask per = Mask{1} << (n == 0 ? 0 : n - 1);
  std::vector<Mask> choice(n, 0), v(n, 0);
  while (true) {
    for (std::size_t x = 0; x < n; ++x) {
      // Spread the n-1 free bits around bit x.
      const Mask low = choice[x] & ((Mask{1} << x) - 1);
      const Mask high = (choice[x] >> x) << (x + 1);
      v[x] = low | high | (Mask{1} << x);
    }
    f(v);
    std::size_t k = 0;
    while (k < n && ++choice[k] == per) choice[k++] = 0;
    if (k == n) break;
  }
}

inline std::vector<Mask> random_structure(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<Mask> v(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    v[x] = Mask{1} << x;
    for (std::size_t y = 0; y < n; ++y) {
      if (coin(rng)) v[x] |= Mask{1} << y;
    }
  }
  return v;
}

inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Convergent generators at each point as a set of masks, closed under the
// three axioms by fixpoint iteration over all 2^n - 1 generators.
inline std::vector<std::set<Mask>> closure_fixpoint(std::size_t n,
                                                    const std::vector<std::vector<Mask>>& raw) {
  std::vector<std::set<Mask>> conv(n);
  for (std::size_t x = 0; x < n; ++x) {
    conv[x].insert(Mask{1} << x);
    conv[x].insert(raw[x].begin(), raw[x].end());
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Mask> cur(conv[x].begin(), conv[x].end());
      for (Mask a : cur) {
        for (Mask b : cur) {
          if (conv[x].insert(a | b).second) changed = true;
        }
        for (Mask s = a; s != 0; s = (s - 1) & a) {
          if (conv[x].insert(s).second) changed = true;
        }
      }
    }
  }
  return conv;
}

// Definitional continuity: every convergent generator, not just V(x).
inline bool continuous_brute(const std::vector<Mask>& dom, const std::vector<Mask>& cod,
                             const std::vector<std::size_t>& f) {
  for (std::size_t x = 0; x < dom.size(); ++x) {
    for (Mask a = dom[x]; a != 0; a = (a - 1) & dom[x]) {
      Mask img = 0;
      for (std::size_t y = 0; y < dom.size(); ++y) {
        if (a >> y & 1) img |= Mask{1} << f[y];
      }
      if (!subset(img, cod[f[x]])) return false;
    }
  }
  return true;
}

// Partition search: disconnected iff some 2-partition {A, B} has every
// convergent generator inside one side.
inline bool connected_brute(const std::vector<Mask>& v) {
  const std::size_t n = v.size();
  if (n <= 1) return true;
  const Mask all = (Mask{1} << n) - 1;
  for (Mask a = 1; a < all; a += 2) {  // sides containing point 0
    bool separates = true;
    for (std::size_t x = 0; x < n && separates; ++x) {
      separates = subset(v[x], a) || subset(v[x], all & ~a);
    }
    if (separates) return false;
  }
  return true;
}

// Covering system: every V(x) inside a member.
inline bool covers_brute(const std::vector<Mask>& v, const std::vector<Mask>& family) {
  for (Mask vx : v) {
    bool ok = false;
    for (Mask u : family) ok = ok || subset(vx, u);
    if (!ok) return false;
  }
  return true;
}

// Chain of intersecting members from x to y.
inline bool chain_brute(const std::vector<Mask>& family, std::size_t x, std::size_t y) {
  Mask reached = Mask{1} << x;
  std::vector<bool> used(family.size(), false);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (!used[i] && (family[i] & reached)) {
        used[i] = true;
        reached |= family[i];
        grew = true;
      }
    }
  }
  bool any = false;
  for (std::size_t i = 0; i < family.size(); ++i) any = any || (used[i] && (family[i] >> y & 1));
  return any;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Parts as sorted masks, computed with union-find over x ~ y iff y ∈ V(x).
inline std::set<Mask> components_uf(const std::vector<Mask>& v) {
  UnionFind uf(v.size());
  for (std::size_t x = 0; x < v.size(); ++x) {
    for (std::size_t y = 0; y < v.size(); ++y) {
      if (v[x] >> y & 1) uf.unite(x, y);
    }
  }
  std::map<std::size_t, Mask> parts;
  for (std::size_t x = 0; x < v.size(); ++x) parts[uf.find(x)] |= Mask{1} << x;
  std::set<Mask> out;
  for (auto& [r, m] : parts) out.insert(m);
  return out;
}

inline std::set<Mask> as_masks(const std::vector<PointSet>& parts) {
  std::set<Mask> out;
  for (const PointSet& p : parts) out.insert(p.to_mask());
  return out;
}

// Signed number of turns of a walk on the n-cycle v0 .. v{n-1}, scaled by n.
inline long displacement(const Walk& w, std::size_t n) {
  long d = 0;
  for (std::size_t i = 0; i < w.length(); ++i) {
    const long step = (static_cast<long>(w.points()[i + 1]) - static_cast<long>(w.points()[i]) +
                       static_cast<long>(n)) %
                      static_cast<long>(n);
    d += step == 1 ? 1 : -1;
  }
  return d;
}

// All point sequences from `start` of length exactly len with adjacent
// consecutive points, flags canonical.
inline void for_each_walk(const LimitSpace& s, PointId start, std::size_t len,
                          const std::function<void(const Walk&)>& f) {
  std::vector<PointId> pts{start};
  std::function<void()> rec = [&] {
    if (pts.size() == len + 1) {
      f(Walk::through(s, pts));
      return;
    }
    for (PointId y = 0; y < s.size(); ++y) {
      if (y != pts.back() && (s.vmax(y).contains(pts.back()) || s.vmax(pts.back()).contains(y))) {
        pts.push_back(y);
        rec();
        pts.pop_back();
      }
    }
  };
  rec();
}

}  // namespace convergence::testing
