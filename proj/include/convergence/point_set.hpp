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

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <boost/container/small_vector.hpp>

namespace convergence {

using PointId = std::uint32_t;

// A finite set of point ids kept sorted and duplicate-free.
//
// Every filter on a finite carrier is principal, so filter algebra is done
// entirely on these sets. Small sets stay inline.
class PointSet {
 public:
  using Storage = boost::container::small_vector<PointId, 8>;
  using const_iterator = Storage::const_iterator;
  using value_type = PointId;

  PointSet() = default;
  PointSet(std::initializer_list<PointId> ids) : ids_(ids) { normalize(); }

  template <std::input_iterator It>
  PointSet(It first, It last) : ids_(first, last) {
    normalize();
  }

  static PointSet singleton(PointId p) {
    PointSet s;
    s.ids_.push_back(p);
    return s;
  }

  // {0, 1, ..., n-1}
  static PointSet first_n(std::size_t n) {
    PointSet s;
    s.ids_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.ids_.push_back(static_cast<PointId>(i));
    return s;
  }

  // Bit i of mask selects point i. Handy for exhaustive enumeration.
  static PointSet from_mask(std::uint64_t mask) {
    PointSet s;
    for (PointId i = 0; mask != 0; ++i, mask >>= 1) {
      if (mask & 1u) s.ids_.push_back(i);
    }
    return s;
  }

  std::uint64_t to_mask() const {
    std::uint64_t m = 0;
    for (PointId p : ids_) m |= std::uint64_t{1} << p;
    return m;
  }

  bool empty() const noexcept { return ids_.empty(); }
  std::size_t size() const noexcept { return ids_.size(); }
  const_iterator begin() const noexcept { return ids_.begin(); }
  const_iterator end() const noexcept { return ids_.end(); }
  PointId front() const { return ids_.front(); }
  PointId back() const { return ids_.back(); }

  bool contains(PointId p) const {
    return std::binary_search(ids_.begin(), ids_.end(), p);
  }

  bool is_subset_of(const PointSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                         ids_.end());
  }

  bool intersects(const PointSet& other) const {
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
      if (*a == *b) return true;
      if (*a < *b) {
        ++a;
      } else {
        ++b;
      }
    }
    return false;
  }

  void insert(PointId p) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), p);
    if (it == ids_.end() || *it != p) ids_.insert(it, p);
  }

  void erase(PointId p) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), p);
    if (it != ids_.end() && *it == p) ids_.erase(it);
  }

  friend PointSet operator|(const PointSet& a, const PointSet& b) {
    PointSet r;
    r.ids_.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(r.ids_));
    return r;
  }

  friend PointSet operator&(const PointSet& a, const PointSet& b) {
    PointSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(r.ids_));
    return r;
  }

  friend PointSet operator-(const PointSet& a, const PointSet& b) {
    PointSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(r.ids_));
    return r;
  }

  PointSet& operator|=(const PointSet& other) { return *this = *this | other; }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }

  friend std::strong_ordering operator<=>(const PointSet& a,
                                          const PointSet& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(),
                                                  b.begin(), b.end());
  }

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  Storage ids_;
};

}  // namespace convergence
