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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "convergence/point_set.hpp"

namespace convergence {

// The underlying finite set of a space: distinct opaque identifiers in a
// fixed iteration order. Ids are positions in that order.
class Carrier {
 public:
  Carrier() = default;
  explicit Carrier(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(PointId p) const { return names_.at(p); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<PointId> find(std::string_view name) const;
  // Throws Error(kInvalidArgument) for unknown names.
  PointId index(std::string_view name) const;

  PointSet all() const { return PointSet::first_n(names_.size()); }

  friend bool operator==(const Carrier& a, const Carrier& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, PointId> index_;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

inline CarrierPtr make_carrier(std::vector<std::string> names) {
  return std::make_shared<const Carrier>(std::move(names));
}

// Same identifiers in the same order.
inline bool same_carrier(const CarrierPtr& a, const CarrierPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace convergence
