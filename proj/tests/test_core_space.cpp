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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convergence/core_space.hpp"
#include "support.hpp"

using namespace convergence;
using namespace convergence::testing;

namespace {

RawConvergenceTable raw_from(std::size_t n, const std::vector<std::vector<Mask>>& gens) {
  RawConvergenceTable raw(make_carrier(point_names(n)));
  for (std::size_t x = 0; x < n; ++x) {
    for (Mask g : gens[x]) raw.add(static_cast<PointId>(x), PointSet::from_mask(g));
  }
  return raw;
}

}  // namespace

TEST_CASE("carrier rejects duplicate names and resolves indices") {
  CHECK_THROWS_AS(Carrier({"a", "a"}), Error);
  Carrier c({"b", "a"});
  CHECK(c.index("a") == 1);
  CHECK_FALSE(c.find("z").has_value());
}

TEST_CASE("filters need a nonempty generator inside the carrier") {
  auto c = make_carrier({"a", "b"});
  CHECK_THROWS_AS(PrincipalFilter(c, {}), Error);
  CHECK_THROWS_AS(PrincipalFilter(c, {2}), Error);
  const PrincipalFilter ab(c, {0, 1});
  const PrincipalFilter a(c, {0});
  CHECK(is_finer(a, ab));
  CHECK_FALSE(is_finer(ab, a));
  CHECK(filter_meet(a, PrincipalFilter(c, {1})).generator() == PointSet{0, 1});
}

TEST_CASE("limit space requires x in V(x)") {
  auto c = make_carrier({"a", "b"});
  CHECK_THROWS_AS(LimitSpace(c, {{1}, {1}}), Error);
  CHECK_NOTHROW(LimitSpace(c, {{0}, {0, 1}}));
  const LimitSpace empty;
  CHECK(empty.size() == 0);
  CHECK(is_pretopological(empty));
  CHECK(is_pseudotopological(empty));
}

TEST_CASE("neighborhood equals the intersection of all convergent filters") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for_each_structure(n, [&](const std::vector<Mask>& v) {
      const LimitSpace s = from_masks(v);
      for (PointId x = 0; x < n; ++x) {
        Mask meet = 0;  // union of generators = intersection of filters
        for (Mask a = 1; a < (Mask{1} << n); ++a) {
          if (converges(s, PrincipalFilter(s.carrier(), PointSet::from_mask(a)), x)) meet |= a;
        }
        REQUIRE(neighborhood(s, x).generator().to_mask() == meet);
      }
    });
  }
  const LimitSpace iso = from_masks({0b01, 0b10});
  CHECK(neighborhood(iso, 0).generator() == PointSet{0});
  const LimitSpace pair = from_masks({0b11, 0b10});
  CHECK(neighborhood(pair, 0).generator() == PointSet{0, 1});
  const LimitSpace whole = from_masks({0b1111, 0b0010, 0b0100, 0b1000});
  CHECK(neighborhood(whole, 0).generator() == PointSet{0, 1, 2, 3});
}

TEST_CASE("close agrees with the axiom fixpoint on every small raw table") {
  // n <= 2 exhaustively: each point picks any family of generators.
  for (std::size_t n = 1; n <= 2; ++n) {
    const Mask gens = (Mask{1} << n) - 1;  // number of nonempty subsets
    const Mask families = Mask{1} << gens;
    std::vector<Mask> pick(n, 0);
    while (true) {
      std::vector<std::vector<Mask>> table(n);
      for (std::size_t x = 0; x < n; ++x) {
        for (Mask g = 1; g <= gens; ++g) {
          if (pick[x] >> (g - 1) & 1) table[x].push_back(g);
        }
      }
      const auto oracle = closure_fixpoint(n, table);
      const LimitSpace s = close(raw_from(n, table));
      for (std::size_t x = 0; x < n; ++x) {
        REQUIRE(s.vmax(static_cast<PointId>(x)).to_mask() == *oracle[x].rbegin());
      }
      std::size_t k = 0;
      while (k < n && ++pick[k] == families) pick[k++] = 0;
      if (k == n) break;
    }
  }
}

TEST_CASE("close is idempotent and matches the oracle on sampled tables up to 4 points") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + trial % 4;
    std::uniform_int_distribution<Mask> gen(1, (Mask{1} << n) - 1);
    std::uniform_int_distribution<int> count(0, 3);
    std::vector<std::vector<Mask>> table(n);
    for (auto& t : table) {
      for (int k = count(rng); k > 0; --k) t.push_back(gen(rng));
    }
    const LimitSpace s = close(raw_from(n, table));
    const auto oracle = closure_fixpoint(n, table);
    for (std::size_t x = 0; x < n; ++x) {
      const Mask v = s.vmax(static_cast<PointId>(x)).to_mask();
      REQUIRE(v == *oracle[x].rbegin());
      // The oracle family is exactly the nonempty subsets of V(x).
      REQUIRE(oracle[x].size() == (Mask{1} << std::popcount(v)) - 1);
    }
    REQUIRE(close(to_raw(s)) == s);
  }
}

TEST_CASE("a filter converges iff its meet with the point filter does") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const CarrierPtr carrier = make_carrier(point_names(n));
    std::vector<PrincipalFilter> filters;
    for (Mask a = 1; a < (Mask{1} << n); ++a) {
      filters.emplace_back(carrier, PointSet::from_mask(a));
    }
    for_each_structure(n, [&](const std::vector<Mask>& v) {
      const LimitSpace s = from_masks(carrier, v);
      bool agree = true;
      for (PointId x = 0; x < n; ++x) {
        const PrincipalFilter& px = filters[(Mask{1} << x) - 1];
        for (const PrincipalFilter& f : filters) {
          agree = agree && converges(s, f, x) == converges(s, filter_meet(f, px), x);
        }
      }
      REQUIRE(agree);
    });
  }
}

namespace {

bool pretop_brute(const LimitSpace& s) {
  const std::size_t n = s.size();
  for (PointId x = 0; x < n; ++x) {
    Mask meet = 0;
    for (Mask a = 1; a < (Mask{1} << n); ++a) {
      if (subset(a, s.vmax(x).to_mask())) meet |= a;
    }
    if (!subset(meet, s.vmax(x).to_mask())) return false;
  }
  return true;
}

bool pseudo_brute(const LimitSpace& s) {
  const std::size_t n = s.size();
  for (PointId x = 0; x < n; ++x) {
    for (Mask a = 1; a < (Mask{1} << n); ++a) {
      bool points = true;
      for (std::size_t y = 0; y < n; ++y) {
        if (a >> y & 1) points = points && s.vmax(x).contains(static_cast<PointId>(y));
      }
      if (points && !subset(a, s.vmax(x).to_mask())) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("every closed structure is pretopological and pseudotopological") {
  for (std::size_t n = 0; n <= 4; ++n) {
    for_each_structure(n, [&](const std::vector<Mask>& v) {
      const LimitSpace s = from_masks(v);
      REQUIRE(is_pretopological(s));
      REQUIRE(is_pseudotopological(s));
      REQUIRE(pretop_brute(s));
      REQUIRE(pseudo_brute(s));
    });
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const LimitSpace s = from_masks(random_structure(rng, 10, 0.3));
    REQUIRE(is_pretopological(s));
    REQUIRE(is_pseudotopological(s));
  }
}

TEST_CASE("continuity agrees with the all-filters check on endomaps of 4-point spaces") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t maps = static_cast<std::size_t>(std::pow(n, n));
    for_each_structure(n, [&](const std::vector<Mask>& v) {
      const LimitSpace s = from_masks(v);
      std::vector<std::size_t> f(n);
      std::vector<PointId> table(n);
      for (std::size_t code = 0; code < maps; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= n) {
          f[i] = c % n;
          table[i] = static_cast<PointId>(f[i]);
        }
        REQUIRE(is_continuous(PointMap(s, s, table)) == continuous_brute(v, v, f));
      }
    });
  }
}

TEST_CASE("continuity witness, identity, constants and composition") {
  const LimitSpace joined = from_masks({0b11, 0b10});
  const LimitSpace apart = from_masks({0b01, 0b10});
  const PointMap m(joined, apart, {0, 1});
  const auto w = continuity_defect(m);
  REQUIRE(w.has_value());
  CHECK(w->point == 0);
  CHECK(w->filter.generator() == PointSet{0, 1});
  CHECK(is_continuous(PointMap::identity(joined)));
  CHECK(is_continuous(PointMap::constant(joined, apart, 1)));
  CHECK_FALSE(is_homeomorphism(PointMap(apart, joined, {0, 1})));
  CHECK(is_homeomorphism(PointMap(joined, from_masks({0b01, 0b11}), {1, 0})));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 2000; ++trial) {
    const LimitSpace a = from_masks(random_structure(rng, 3, 0.4));
    const LimitSpace b = from_masks(random_structure(rng, 3, 0.4));
    const LimitSpace c = from_masks(random_structure(rng, 3, 0.4));
    std::uniform_int_distribution<PointId> pick(0, 2);
    const PointMap f(a, b, {pick(rng), pick(rng), pick(rng)});
    const PointMap g(b, c, {pick(rng), pick(rng), pick(rng)});
    if (is_continuous(f) && is_continuous(g)) REQUIRE(is_continuous(compose(g, f)));
  }
  CHECK_THROWS_AS(compose(m, PointMap::identity(from_masks({0b001, 0b010, 0b100}))), Error);
}

TEST_CASE("filter image and maps") {
  const LimitSpace s = from_masks({0b011, 0b010, 0b100});
  const PointMap q(s, from_masks({0b1}), {0, 0, 0});
  CHECK(filter_image(PrincipalFilter(s.carrier(), {0, 2}), q).generator() == PointSet{0});
  CHECK(q.is_surjective());
  CHECK(q.preimage({0}) == PointSet{0, 1, 2});
  CHECK_THROWS_AS(PointMap(s, s, {0, 1}), Error);
  CHECK_THROWS_AS(PointMap(s, s, {0, 1, 3}), Error);
}
