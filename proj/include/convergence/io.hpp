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

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>
#include <json.hpp>

#include "convergence/connectivity.hpp"
#include "convergence/covering.hpp"

namespace convergence::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// A parsed space document before any axiom is enforced: exactly one of
// `vmax` (closed form) and `raw` (generator lists) is set.
struct SpaceDocument {
  CarrierPtr carrier;
  std::optional<std::vector<PointSet>> vmax;
  std::optional<RawConvergenceTable> raw;
  Json metadata;  // null when absent
};

// All parsers throw Error(kParse) on schema violations, naming the field.
SpaceDocument parse_space_document(const Json& j);
// Closed form goes through the LimitSpace constructor, raw form through close().
LimitSpace to_space(const SpaceDocument& doc);
LimitSpace parse_space(const Json& j);

// Points sorted by name, each V(x) listed sorted.
Json space_to_json(const LimitSpace& space, const Json& metadata = nullptr);

// "table" maps every domain point to a codomain point. "domain" and
// "codomain" optionally embed space documents; when the caller supplies a
// space it must agree with an embedded one.
struct MapDocument {
  std::optional<LimitSpace> domain;
  std::optional<LimitSpace> codomain;
  std::vector<std::pair<std::string, std::string>> table;
};
MapDocument parse_map_document(const Json& j);
PointMap to_map(const MapDocument& doc, const LimitSpace& domain, const LimitSpace& codomain);
Json map_to_json(const PointMap& m, bool embed_spaces = true);

LocalCover parse_cover(const Json& j, const LimitSpace& space);
Json cover_to_json(const LocalCover& cover, const LimitSpace& space);

CoveringAtlas parse_atlas(const Json& j);
Json atlas_to_json(const CoveringAtlas& atlas);

// "a,b,c" with an optional ";LR..." flag suffix; canonical flags otherwise.
Walk parse_walk(const std::string& text, const LimitSpace& space);

// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

// Throws Error(kParse) for unreadable files or malformed JSON.
Json read_json_file(const std::string& path);

// One point per line: identifier followed by decimal coordinates, comma
// separated. Blank lines and lines starting with '#' are skipped.
struct CloudPoint {
  std::string id;
  std::vector<std::string> coords;
};
std::vector<CloudPoint> parse_cloud_csv(std::istream& in);

// V(x) = {y : d(x, y) ≤ r}, Euclidean. Decimal inputs with at most 12
// fractional digits compare exactly; anything else compares as double.
// Throws Error(kParse) for malformed numbers, mixed dimensions or r < 0.
LimitSpace from_cloud(const std::vector<CloudPoint>& cloud, const std::string& scale);

enum class EdgeMode { kDirected, kSymmetric };

// "a b" declares the edge a → b, a lone "a" declares a vertex. When any vertex
// is declared, edges must stay within the declared ones.
struct EdgeList {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};
EdgeList parse_edges(std::istream& in);

// Directed: a → b puts a into V(b). Symmetric: also b into V(a).
LimitSpace from_edges(const EdgeList& list, EdgeMode mode);

}  // namespace convergence::io
