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

#include "convergence/core_space.hpp"

#include <string>

namespace convergence {
namespace {

void require_in_carrier(const PointSet& s, std::size_t n, const char* what) {
  if (!s.empty() && s.back() >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " leaves the carrier");
  }
}

void require_same_carrier(const CarrierPtr& a, const CarrierPtr& b) {
  if (!same_carrier(a, b)) {
    throw Error(ErrorCode::kCarrierMismatch, "filters live on different carriers");
  }
}

}  // namespace

PrincipalFilter::PrincipalFilter(CarrierPtr carrier, PointSet generator)
    : carrier_(std::move(carrier)), generator_(std::move(generator)) {
  if (generator_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "filter generator must be nonempty");
  }
  require_in_carrier(generator_, carrier_->size(), "filter generator");
}

RawConvergenceTable::RawConvergenceTable(CarrierPtr carrier)
    : carrier_(std::move(carrier)), gens_(carrier_->size()) {}

void RawConvergenceTable::add(PointId x, PointSet generator) {
  if (x >= carrier_->size()) {
    throw Error(ErrorCode::kInvalidArgument, "point outside the carrier");
  }
  if (generator.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "the empty set does not generate a filter");
  }
  require_in_carrier(generator, carrier_->size(), "listed subset");
  gens_[x].push_back(std::move(generator));
}

LimitSpace::LimitSpace()
    : carrier_(make_carrier({})),
      vmax_(std::make_shared<const std::vector<PointSet>>()) {}

LimitSpace::LimitSpace(CarrierPtr carrier, std::vector<PointSet> vmax)
    : carrier_(std::move(carrier)) {
  if (vmax.size() != carrier_->size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "convergence table size differs from carrier size");
  }
  for (PointId x = 0; x < vmax.size(); ++x) {
    require_in_carrier(vmax[x], carrier_->size(), "maximal convergent set");
    if (!vmax[x].contains(x)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "[x] must converge to x (point '" + carrier_->name(x) + "')");
    }
  }
  vmax_ = std::make_shared<const std::vector<PointSet>>(std::move(vmax));
}

LimitSpace LimitSpace::discrete(CarrierPtr carrier) {
  std::vector<PointSet> v;
  v.reserve(carrier->size());
  for (PointId x = 0; x < carrier->size(); ++x) v.push_back(PointSet::singleton(x));
  return LimitSpace(std::move(carrier), std::move(v));
}

LimitSpace LimitSpace::indiscrete(CarrierPtr carrier) {
  std::vector<PointSet> v(carrier->size(), carrier->all());
  return LimitSpace(std::move(carrier), std::move(v));
}

PointMap::PointMap(LimitSpace domain, LimitSpace codomain,
                   std::vector<PointId> table)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      table_(std::move(table)) {
  if (table_.size() != domain_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "map table is not total on the domain");
  }
  for (PointId y : table_) {
    if (y >= codomain_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "map image leaves the codomain");
    }
  }
}

PointMap PointMap::identity(const LimitSpace& space) {
  std::vector<PointId> t(space.size());
  for (PointId x = 0; x < t.size(); ++x) t[x] = x;
  return PointMap(space, space, std::move(t));
}

PointMap PointMap::constant(const LimitSpace& domain, const LimitSpace& codomain,
                            PointId value) {
  return PointMap(domain, codomain, std::vector<PointId>(domain.size(), value));
}

PointSet PointMap::image(const PointSet& s) const {
  PointSet r;
  for (PointId x : s) r.insert(table_.at(x));
  return r;
}

PointSet PointMap::preimage(const PointSet& s) const {
  PointSet r;
  for (PointId x = 0; x < table_.size(); ++x) {
    if (s.contains(table_[x])) r.insert(x);
  }
  return r;
}

bool PointMap::is_surjective() const {
  return image(domain_.carrier()->all()).size() == codomain_.size();
}

PointMap compose(const PointMap& g, const PointMap& f) {
  if (!same_carrier(f.codomain().carrier(), g.domain().carrier())) {
    throw Error(ErrorCode::kCarrierMismatch, "maps are not composable");
  }
  std::vector<PointId> t(f.table().size());
  for (PointId x = 0; x < t.size(); ++x) t[x] = g(f(x));
  return PointMap(f.domain(), g.codomain(), std::move(t));
}

PrincipalFilter filter_meet(const PrincipalFilter& f1, const PrincipalFilter& f2) {
  require_same_carrier(f1.carrier(), f2.carrier());
  // F ∩ G as families is generated by the union of the generators.
  return PrincipalFilter(f1.carrier(), f1.generator() | f2.generator());
}

PrincipalFilter filter_image(const PrincipalFilter& f, const PointMap& m) {
  require_same_carrier(f.carrier(), m.domain().carrier());
  return PrincipalFilter(m.codomain().carrier(), m.image(f.generator()));
}

bool is_finer(const PrincipalFilter& f1, const PrincipalFilter& f2) {
  require_same_carrier(f1.carrier(), f2.carrier());
  return f1.generator().is_subset_of(f2.generator());
}

LimitSpace close(const RawConvergenceTable& raw) {
  const auto& carrier = raw.carrier();
  std::vector<PointSet> v;
  v.reserve(carrier->size());
  for (PointId x = 0; x < carrier->size(); ++x) {
    PointSet vx = PointSet::singleton(x);
    for (const PointSet& g : raw.generators(x)) vx |= g;
    v.push_back(std::move(vx));
  }
  return LimitSpace(carrier, std::move(v));
}

RawConvergenceTable to_raw(const LimitSpace& space) {
  RawConvergenceTable raw(space.carrier());
  for (PointId x = 0; x < space.size(); ++x) raw.add(x, space.vmax(x));
  return raw;
}

bool converges(const LimitSpace& space, const PrincipalFilter& f, PointId x) {
  require_same_carrier(space.carrier(), f.carrier());
  return f.generator().is_subset_of(space.vmax(x));
}

PrincipalFilter neighborhood(const LimitSpace& space, PointId x) {
  return PrincipalFilter(space.carrier(), space.vmax(x));
}

bool is_pretopological(const LimitSpace& space) {
  for (PointId x = 0; x < space.size(); ++x) {
    if (!converges(space, neighborhood(space, x), x)) return false;
  }
  return true;
}

bool is_pseudotopological(const LimitSpace& space) {
  // Ultrafilters on a finite set are the point filters [y]. The largest A all
  // of whose ultrafilters converge to x is the set of such y; every other
  // candidate is a subset of it, so it is the only set that must be checked.
  for (PointId x = 0; x < space.size(); ++x) {
    PointSet detected;
    for (PointId y = 0; y < space.size(); ++y) {
      if (converges(space, PrincipalFilter(space.carrier(), PointSet::singleton(y)), x)) {
        detected.insert(y);
      }
    }
    if (!converges(space, PrincipalFilter(space.carrier(), detected), x)) return false;
  }
  return true;
}

std::optional<ContinuityWitness> continuity_defect(const PointMap& m) {
  const LimitSpace& dom = m.domain();
  const LimitSpace& cod = m.codomain();
  for (PointId x = 0; x < dom.size(); ++x) {
    // Finer filters at x follow from the maximal one by refinement closure.
    if (!m.image(dom.vmax(x)).is_subset_of(cod.vmax(m(x)))) {
      return ContinuityWitness{x, PrincipalFilter(dom.carrier(), dom.vmax(x))};
    }
  }
  return std::nullopt;
}

bool is_homeomorphism(const PointMap& m) {
  const std::size_t n = m.domain().size();
  if (n != m.codomain().size() || !m.is_surjective()) return false;
  std::vector<PointId> inverse(n);
  for (PointId x = 0; x < n; ++x) inverse[m(x)] = x;
  return is_continuous(m) &&
         is_continuous(PointMap(m.codomain(), m.domain(), std::move(inverse)));
}

}  // namespace convergence
