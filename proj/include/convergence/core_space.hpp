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

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "convergence/carrier.hpp"
#include "convergence/error.hpp"
#include "convergence/point_set.hpp"

namespace convergence {

// The filter [A] = { S : S ⊇ A } for a nonempty generator A.
class PrincipalFilter {
 public:
  PrincipalFilter(CarrierPtr carrier, PointSet generator);

  const CarrierPtr& carrier() const noexcept { return carrier_; }
  const PointSet& generator() const noexcept { return generator_; }

  friend bool operator==(const PrincipalFilter& a, const PrincipalFilter& b) {
    return same_carrier(a.carrier_, b.carrier_) && a.generator_ == b.generator_;
  }

 private:
  CarrierPtr carrier_;
  PointSet generator_;
};

// Per-point families of generators as given, before any axiom is enforced.
class RawConvergenceTable {
 public:
  explicit RawConvergenceTable(CarrierPtr carrier);

  // Throws if `generator` is empty or leaves the carrier.
  void add(PointId x, PointSet generator);

  const CarrierPtr& carrier() const noexcept { return carrier_; }
  const std::vector<PointSet>& generators(PointId x) const {
    return gens_.at(x);
  }

 private:
  CarrierPtr carrier_;
  std::vector<std::vector<PointSet>> gens_;
};

// A closed finite limit structure. [A] → x iff ∅ ≠ A ⊆ V(x), so the maximal
// convergent generator V(x) at each point determines everything. Copies share
// the immutable state.
class LimitSpace {
 public:
  LimitSpace();

  // Throws unless every V(x) lies in the carrier and contains x.
  LimitSpace(CarrierPtr carrier, std::vector<PointSet> vmax);

  static LimitSpace discrete(CarrierPtr carrier);
  static LimitSpace indiscrete(CarrierPtr carrier);

  const CarrierPtr& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_->size(); }
  const PointSet& vmax(PointId x) const { return (*vmax_).at(x); }
  const std::vector<PointSet>& vmax_table() const noexcept { return *vmax_; }
  const std::string& name(PointId x) const { return carrier_->name(x); }

  friend bool operator==(const LimitSpace& a, const LimitSpace& b) {
    return same_carrier(a.carrier_, b.carrier_) &&
           (a.vmax_ == b.vmax_ || *a.vmax_ == *b.vmax_);
  }

 private:
  CarrierPtr carrier_;
  std::shared_ptr<const std::vector<PointSet>> vmax_;
};

// A total function between the carriers of two spaces.
class PointMap {
 public:
  PointMap(LimitSpace domain, LimitSpace codomain, std::vector<PointId> table);

  static PointMap identity(const LimitSpace& space);
  static PointMap constant(const LimitSpace& domain, const LimitSpace& codomain,
                           PointId value);

  const LimitSpace& domain() const noexcept { return domain_; }
  const LimitSpace& codomain() const noexcept { return codomain_; }
  const std::vector<PointId>& table() const noexcept { return table_; }
  PointId operator()(PointId x) const { return table_.at(x); }

  PointSet image(const PointSet& s) const;
  PointSet preimage(const PointSet& s) const;
  bool is_surjective() const;

 private:
  LimitSpace domain_;
  LimitSpace codomain_;
  std::vector<PointId> table_;
};

// g ∘ f. Throws on carrier mismatch between f's codomain and g's domain.
PointMap compose(const PointMap& g, const PointMap& f);

PrincipalFilter filter_meet(const PrincipalFilter& f1, const PrincipalFilter& f2);
PrincipalFilter filter_image(const PrincipalFilter& f, const PointMap& m);
// f1 finer than f2, i.e. f1 ⊇ f2 as families, i.e. gen(f1) ⊆ gen(f2).
bool is_finer(const PrincipalFilter& f1, const PrincipalFilter& f2);

// Smallest limit structure containing the table: V(x) = {x} ∪ ⋃ gens(x).
LimitSpace close(const RawConvergenceTable& raw);
// One generator per point, V(x). close(to_raw(s)) == s.
RawConvergenceTable to_raw(const LimitSpace& space);

bool converges(const LimitSpace& space, const PrincipalFilter& f, PointId x);
// 𝒰(x): the intersection of all filters converging to x.
PrincipalFilter neighborhood(const LimitSpace& space, PointId x);

bool is_pretopological(const LimitSpace& space);
bool is_pseudotopological(const LimitSpace& space);

struct ContinuityWitness {
  PointId point;
  PrincipalFilter filter;  // converges to `point`, image does not converge
};

std::optional<ContinuityWitness> continuity_defect(const PointMap& m);
inline bool is_continuous(const PointMap& m) {
  return !continuity_defect(m).has_value();
}

// Continuous bijection with continuous inverse.
bool is_homeomorphism(const PointMap& m);

}  // namespace convergence
