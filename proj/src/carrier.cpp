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

#include "convergence/carrier.hpp"

#include "convergence/error.hpp"

namespace convergence {

Carrier::Carrier(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    auto [it, inserted] = index_.emplace(names_[i], static_cast<PointId>(i));
    if (!inserted) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate point identifier '" + names_[i] + "'");
    }
  }
}

std::optional<PointId> Carrier::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PointId Carrier::index(std::string_view name) const {
  if (auto p = find(name)) return *p;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown point '" + std::string(name) + "'");
}

}  // namespace convergence
