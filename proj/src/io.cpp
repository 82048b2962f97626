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

#include "convergence/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <boost/multiprecision/cpp_int.hpp>

namespace convergence::io {
namespace {

using boost::multiprecision::cpp_int;

constexpr int kExactDigits = 12;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kParse, msg); }

void check_header(const Json& j, const std::string& format,
                  std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(format + " document must be a JSON object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (k != "format" && k != "version" && !keys.contains(k)) {
      fail("unexpected field '" + k + "' in " + format + " document");
    }
  }
  if (!j.contains("format") || j["format"] != format) {
    fail("field 'format' must be \"" + format + "\"");
  }
  if (!j.contains("version") || j["version"] != kFormatVersion) {
    fail("unsupported version in " + format + " document");
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j[key];
}

std::string as_name(const Json& j, const std::string& where) {
  if (!j.is_string()) fail("expected a point name in '" + where + "'");
  return j.get<std::string>();
}

PointId lookup(const Carrier& c, const std::string& name, const std::string& where) {
  auto id = c.find(name);
  if (!id) fail("unknown point '" + name + "' in '" + where + "'");
  return *id;
}

PointSet as_set(const Json& j, const Carrier& c, const std::string& where) {
  if (!j.is_array()) fail("expected a list of points in '" + where + "'");
  PointSet s;
  for (const Json& e : j) s.insert(lookup(c, as_name(e, where), where));
  return s;
}

CarrierPtr as_carrier(const Json& j, const std::string& where) {
  if (!j.is_array()) fail("field '" + where + "' must be a list of names");
  std::vector<std::string> names;
  for (const Json& e : j) names.push_back(as_name(e, where));
  try {
    return make_carrier(std::move(names));
  } catch (const Error& e) {
    fail(e.what());
  }
}

// Carrier ids in name order.
std::vector<PointId> by_name(const Carrier& c) {
  std::vector<PointId> order(c.size());
  std::iota(order.begin(), order.end(), PointId{0});
  std::sort(order.begin(), order.end(),
            [&](PointId a, PointId b) { return c.name(a) < c.name(b); });
  return order;
}

Json names_of(const Carrier& c, const PointSet& s) {
  std::vector<std::string> names;
  for (PointId p : s) names.push_back(c.name(p));
  std::sort(names.begin(), names.end());
  return Json(names);
}

LimitSpace embedded_space(const Json& j, const char* key) {
  try {
    return parse_space(field(j, key));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    fail(std::string("embedded space '") + key + "': " + e.what());
  }
}

struct Decimal {
  bool exact = false;
  cpp_int scaled;  // value · 10^12 when exact
  double value = 0.0;
};

Decimal parse_decimal(std::string text) {
  static const std::regex kNumber(R"(^([+-]?)(\d*)(?:\.(\d*))?([eE][+-]?\d+)?$)");
  text.erase(0, text.find_first_not_of(" \t\r"));
  text.erase(text.find_last_not_of(" \t\r") + 1);
  std::smatch m;
  if (!std::regex_match(text, m, kNumber) || (m[2].length() == 0 && m[3].length() == 0)) {
    fail("malformed number '" + text + "'");
  }
  Decimal d;
  try {
    d.value = std::stod(text);
  } catch (const std::exception&) {
    fail("malformed number '" + text + "'");
  }
  if (!std::isfinite(d.value)) fail("number out of range '" + text + "'");
  if (!m[4].matched && m[3].length() <= kExactDigits) {
    std::string digits = m[2].str() + m[3].str() + std::string(kExactDigits - m[3].length(), '0');
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    d.scaled = cpp_int(digits);
    if (m[1] == "-") d.scaled = -d.scaled;
    d.exact = true;
  }
  return d;
}

}  // namespace

SpaceDocument parse_space_document(const Json& j) {
  check_header(j, "limit-space", {"points", "vmax", "convergence", "metadata"});
  SpaceDocument doc;
  doc.carrier = as_carrier(field(j, "points"), "points");
  const Carrier& c = *doc.carrier;
  if (j.contains("metadata")) doc.metadata = j["metadata"];
  if (j.contains("vmax") == j.contains("convergence")) {
    fail("exactly one of 'vmax' and 'convergence' must be present");
  }
  if (j.contains("vmax")) {
    const Json& v = j["vmax"];
    if (!v.is_object()) fail("field 'vmax' must be an object");
    std::vector<std::optional<PointSet>> sets(c.size());
    for (const auto& [k, val] : v.items()) {
      sets[lookup(c, k, "vmax")] = as_set(val, c, "vmax." + k);
    }
    std::vector<PointSet> out;
    for (PointId x = 0; x < c.size(); ++x) {
      if (!sets[x]) fail("'vmax' has no entry for '" + c.name(x) + "'");
      out.push_back(std::move(*sets[x]));
    }
    doc.vmax = std::move(out);
  } else {
    const Json& g = j["convergence"];
    if (!g.is_object()) fail("field 'convergence' must be an object");
    RawConvergenceTable raw(doc.carrier);
    for (const auto& [k, val] : g.items()) {
      const PointId x = lookup(c, k, "convergence");
      if (!val.is_array()) fail("'convergence." + k + "' must be a list of generators");
      for (const Json& gen : val) {
        PointSet s = as_set(gen, c, "convergence." + k);
        if (s.empty()) fail("empty generator in 'convergence." + k + "'");
        raw.add(x, std::move(s));
      }
    }
    doc.raw = std::move(raw);
  }
  return doc;
}

LimitSpace to_space(const SpaceDocument& doc) {
  if (doc.vmax) return LimitSpace(doc.carrier, *doc.vmax);
  return close(*doc.raw);
}

LimitSpace parse_space(const Json& j) { return to_space(parse_space_document(j)); }

Json space_to_json(const LimitSpace& space, const Json& metadata) {
  const Carrier& c = *space.carrier();
  const auto order = by_name(c);
  Json j;
  j["format"] = "limit-space";
  j["version"] = kFormatVersion;
  Json pts = Json::array();
  Json vmax = Json::object();
  for (PointId x : order) {
    pts.push_back(c.name(x));
    vmax[c.name(x)] = names_of(c, space.vmax(x));
  }
  j["points"] = std::move(pts);
  j["vmax"] = std::move(vmax);
  if (!metadata.is_null()) j["metadata"] = metadata;
  return j;
}

MapDocument parse_map_document(const Json& j) {
  check_header(j, "point-map", {"domain", "codomain", "table"});
  MapDocument doc;
  if (j.contains("domain")) doc.domain = embedded_space(j, "domain");
  if (j.contains("codomain")) doc.codomain = embedded_space(j, "codomain");
  const Json& t = field(j, "table");
  if (!t.is_object()) fail("field 'table' must be an object");
  for (const auto& [k, v] : t.items()) doc.table.emplace_back(k, as_name(v, "table." + k));
  return doc;
}

PointMap to_map(const MapDocument& doc, const LimitSpace& domain, const LimitSpace& codomain) {
  if (doc.domain && !(*doc.domain == domain)) fail("embedded domain differs from the given space");
  if (doc.codomain && !(*doc.codomain == codomain)) {
    fail("embedded codomain differs from the given space");
  }
  constexpr PointId kUnset = static_cast<PointId>(-1);
  std::vector<PointId> table(domain.size(), kUnset);
  for (const auto& [from, to] : doc.table) {
    const PointId x = lookup(*domain.carrier(), from, "table");
    if (table[x] != kUnset) fail("'table' maps '" + from + "' twice");
    table[x] = lookup(*codomain.carrier(), to, "table." + from);
  }
  for (PointId x = 0; x < domain.size(); ++x) {
    if (table[x] == kUnset) fail("'table' has no entry for '" + domain.name(x) + "'");
  }
  return PointMap(domain, codomain, std::move(table));
}

Json map_to_json(const PointMap& m, bool embed_spaces) {
  Json j;
  j["format"] = "point-map";
  j["version"] = kFormatVersion;
  if (embed_spaces) {
    j["domain"] = space_to_json(m.domain());
    j["codomain"] = space_to_json(m.codomain());
  }
  Json t = Json::object();
  for (PointId x : by_name(*m.domain().carrier())) {
    t[m.domain().name(x)] = m.codomain().name(m(x));
  }
  j["table"] = std::move(t);
  return j;
}

LocalCover parse_cover(const Json& j, const LimitSpace& space) {
  check_header(j, "cover", {"sets", "scope"});
  const Carrier& c = *space.carrier();
  LocalCover cover;
  const Json& sets = field(j, "sets");
  if (!sets.is_array()) fail("field 'sets' must be a list");
  for (const Json& s : sets) cover.sets.push_back(as_set(s, c, "sets"));
  cover.scope = j.contains("scope") ? as_set(j["scope"], c, "scope") : c.all();
  return cover;
}

Json cover_to_json(const LocalCover& cover, const LimitSpace& space) {
  const Carrier& c = *space.carrier();
  std::vector<Json> sets;
  for (const PointSet& s : cover.sets) sets.push_back(names_of(c, s));
  std::sort(sets.begin(), sets.end());
  Json j;
  j["format"] = "cover";
  j["version"] = kFormatVersion;
  j["sets"] = Json(sets);
  j["scope"] = names_of(c, cover.scope);
  return j;
}

CoveringAtlas parse_atlas(const Json& j) {
  check_header(j, "covering-atlas", {"total", "base", "map", "fiber", "charts"});
  const LimitSpace total = embedded_space(j, "total");
  const LimitSpace base = embedded_space(j, "base");
  MapDocument md;
  const Json& m = field(j, "map");
  if (!m.is_object()) fail("field 'map' must be an object");
  for (const auto& [k, v] : m.items()) md.table.emplace_back(k, as_name(v, "map." + k));
  CoveringAtlas atlas{to_map(md, total, base), {}, {}};

  const Json& fiber = field(j, "fiber");
  if (!fiber.is_array()) fail("field 'fiber' must be a list of names");
  for (const Json& f : fiber) atlas.fiber.push_back(as_name(f, "fiber"));
  const CarrierPtr fiber_carrier = as_carrier(fiber, "fiber");

  const Json& charts = field(j, "charts");
  if (!charts.is_array()) fail("field 'charts' must be a list");
  for (const Json& ch : charts) {
    if (!ch.is_object()) fail("chart must be an object");
    for (const auto& [k, v] : ch.items()) {
      if (k != "set" && k != "table") fail("unexpected field '" + k + "' in chart");
    }
    Chart chart{as_set(field(ch, "set"), *base.carrier(), "charts.set"), {}};
    const Json& t = field(ch, "table");
    if (!t.is_object()) fail("chart 'table' must be an object");
    for (const auto& [k, v] : t.items()) {
      if (!v.is_array() || v.size() != 2) {
        fail("chart entry '" + k + "' must be [base point, fiber index]");
      }
      chart.entries.push_back({lookup(*total.carrier(), k, "charts.table"),
                               lookup(*base.carrier(), as_name(v[0], "charts.table"),
                                      "charts.table." + k),
                               lookup(*fiber_carrier, as_name(v[1], "charts.table"),
                                      "charts.table." + k)});
    }
    std::sort(chart.entries.begin(), chart.entries.end(),
              [](const ChartEntry& a, const ChartEntry& b) { return a.e < b.e; });
    for (std::size_t i = 1; i < chart.entries.size(); ++i) {
      if (chart.entries[i].e == chart.entries[i - 1].e) fail("chart lists a point twice");
    }
    atlas.charts.push_back(std::move(chart));
  }
  return atlas;
}

Json atlas_to_json(const CoveringAtlas& atlas) {
  const Carrier& ec = *atlas.total().carrier();
  const Carrier& bc = *atlas.base().carrier();
  Json j;
  j["format"] = "covering-atlas";
  j["version"] = kFormatVersion;
  j["total"] = space_to_json(atlas.total());
  j["base"] = space_to_json(atlas.base());
  j["map"] = map_to_json(atlas.projection, false)["table"];
  j["fiber"] = Json(atlas.fiber);
  Json charts = Json::array();
  for (const Chart& chart : atlas.charts) {
    std::vector<const ChartEntry*> entries;
    for (const ChartEntry& c : chart.entries) entries.push_back(&c);
    std::sort(entries.begin(), entries.end(), [&](const ChartEntry* a, const ChartEntry* b) {
      return ec.name(a->e) < ec.name(b->e);
    });
    Json t = Json::object();
    for (const ChartEntry* c : entries) {
      t[ec.name(c->e)] = Json::array({bc.name(c->b), atlas.fiber.at(c->fiber)});
    }
    Json cj;
    cj["set"] = names_of(bc, chart.set);
    cj["table"] = std::move(t);
    charts.push_back(std::move(cj));
  }
  j["charts"] = std::move(charts);
  return j;
}

Walk parse_walk(const std::string& text, const LimitSpace& space) {
  const auto semi = text.find(';');
  const std::string body = text.substr(0, semi);
  std::vector<PointId> pts;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) pts.push_back(lookup(*space.carrier(), item, "walk"));
  if (pts.empty()) fail("walk needs at least one point");
  if (semi == std::string::npos) return Walk::through(space, std::move(pts));
  const std::string flags_text = text.substr(semi + 1);
  std::vector<Flag> flags;
  for (char ch : flags_text) {
    if (ch == 'L') {
      flags.push_back(Flag::kLeft);
    } else if (ch == 'R') {
      flags.push_back(Flag::kRight);
    } else {
      fail("walk flags must be L or R");
    }
  }
  if (flags.size() + 1 != pts.size()) fail("walk needs one flag per step");
  return Walk(std::move(pts), std::move(flags));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<CloudPoint> parse_cloud_csv(std::istream& in) {
  std::vector<CloudPoint> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    CloudPoint p;
    bool have_id = false;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t\r"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      if (!have_id) {
        if (cell.empty()) fail("line " + std::to_string(lineno) + ": empty identifier");
        p.id = cell;
        have_id = true;
      } else {
        p.coords.push_back(cell);
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

LimitSpace from_cloud(const std::vector<CloudPoint>& cloud, const std::string& scale) {
  const Decimal r = parse_decimal(scale);
  if (r.value < 0 || (r.exact && r.scaled < 0)) fail("scale must be nonnegative");
  std::vector<std::string> names;
  std::vector<std::vector<Decimal>> coords;
  bool exact = r.exact;
  for (const CloudPoint& p : cloud) {
    if (!coords.empty() && p.coords.size() != coords.front().size()) {
      fail("point '" + p.id + "' has a different dimension");
    }
    names.push_back(p.id);
    std::vector<Decimal> row;
    for (const std::string& c : p.coords) {
      row.push_back(parse_decimal(c));
      exact = exact && row.back().exact;
    }
    coords.push_back(std::move(row));
  }
  CarrierPtr carrier;
  try {
    carrier = make_carrier(std::move(names));
  } catch (const Error& e) {
    fail(e.what());
  }
  const std::size_t n = coords.size();
  std::vector<PointSet> vmax(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      bool within;
      if (exact) {
        cpp_int d2 = 0;
        for (std::size_t k = 0; k < coords[a].size(); ++k) {
          const cpp_int diff = coords[a][k].scaled - coords[b][k].scaled;
          d2 += diff * diff;
        }
        within = d2 <= r.scaled * r.scaled;
      } else {
        double d2 = 0.0;
        for (std::size_t k = 0; k < coords[a].size(); ++k) {
          const double diff = coords[a][k].value - coords[b][k].value;
          d2 += diff * diff;
        }
        within = d2 <= r.value * r.value;
      }
      if (within || a == b) vmax[a].insert(static_cast<PointId>(b));
    }
  }
  return LimitSpace(carrier, std::move(vmax));
}

EdgeList parse_edges(std::istream& in) {
  EdgeList list;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::stringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string t; ss >> t;) tokens.push_back(t);
    if (tokens.size() == 1) {
      list.vertices.push_back(tokens[0]);
    } else if (tokens.size() == 2) {
      list.edges.emplace_back(tokens[0], tokens[1]);
    } else {
      fail("line " + std::to_string(lineno) + ": expected one or two vertex names");
    }
  }
  return list;
}

LimitSpace from_edges(const EdgeList& list, EdgeMode mode) {
  std::vector<std::string> names = list.vertices;
  if (names.empty()) {
    std::set<std::string> seen;
    for (const auto& [a, b] : list.edges) {
      for (const std::string* v : {&a, &b}) {
        if (seen.insert(*v).second) names.push_back(*v);
      }
    }
  }
  CarrierPtr carrier;
  try {
    carrier = make_carrier(std::move(names));
  } catch (const Error& e) {
    fail(e.what());
  }
  std::vector<PointSet> vmax;
  for (PointId x = 0; x < carrier->size(); ++x) vmax.push_back(PointSet::singleton(x));
  for (const auto& [a, b] : list.edges) {
    const PointId from = lookup(*carrier, a, "edge");
    const PointId to = lookup(*carrier, b, "edge");
    vmax[to].insert(from);
    if (mode == EdgeMode::kSymmetric) vmax[from].insert(to);
  }
  return LimitSpace(carrier, std::move(vmax));
}

}  // namespace convergence::io
