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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "convergence/io.hpp"
#include "support.hpp"

using namespace convergence;
using namespace convergence::testing;
namespace io = convergence::io;
using io::Json;

namespace {

std::string data(const std::string& file) { return std::string(CONVERGENCE_DATA_DIR) + "/" + file; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInvalidArgument;
}

Json space_doc(const std::string& text) { return Json::parse(text); }

std::vector<io::CloudPoint> cloud_of(const std::vector<std::vector<double>>& pts, int digits) {
  std::vector<io::CloudPoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    io::CloudPoint p{"p" + std::to_string(i), {}};
    for (double c : pts[i]) {
      std::ostringstream os;
      os << std::fixed << std::setprecision(digits) << c;
      p.coords.push_back(os.str());
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

TEST_CASE("space documents round trip canonically") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 7;
    std::vector<std::string> names = point_names(n, "q");
    std::shuffle(names.begin(), names.end(), rng);
    const LimitSpace s = from_masks(make_carrier(names), random_structure(rng, n, 0.3));
    const std::string text = io::dump(io::space_to_json(s));
    const LimitSpace back = io::parse_space(Json::parse(text));
    REQUIRE(io::dump(io::space_to_json(back)) == text);
    for (PointId x = 0; x < n; ++x) {
      const PointId y = *back.carrier()->find(s.name(x));
      std::set<std::string> a, b;
      for (PointId z : s.vmax(x)) a.insert(s.name(z));
      for (PointId z : back.vmax(y)) b.insert(back.name(z));
      REQUIRE(a == b);
    }
  }
  const Json messy = space_doc(R"({"format":"limit-space","version":1,"points":["b","a"],
      "vmax":{"b":["b","a"],"a":["a"]},"metadata":{"note":"x"}})");
  const io::SpaceDocument doc = io::parse_space_document(messy);
  REQUIRE(doc.vmax.has_value());
  CHECK(doc.metadata["note"] == "x");
  const Json out = io::space_to_json(io::to_space(doc), doc.metadata);
  CHECK(out["points"] == Json::array({"a", "b"}));
  CHECK(out["vmax"]["b"] == Json::array({"a", "b"}));
  CHECK(out["metadata"]["note"] == "x");
  CHECK(io::dump(out).back() == '\n');
}

TEST_CASE("raw documents are closed") {
  const Json raw = io::read_json_file(data("raw3.json"));
  const io::SpaceDocument doc = io::parse_space_document(raw);
  REQUIRE(doc.raw.has_value());
  CHECK(io::to_space(doc) == close(*doc.raw));
  const Json j = space_doc(R"({"format":"limit-space","version":1,"points":["x","y"],
      "convergence":{"x":[["y"]],"y":[]}})");
  const LimitSpace s = io::parse_space(j);
  CHECK(s.vmax(0) == PointSet{0, 1});
  CHECK(s.vmax(1) == PointSet{1});
}

TEST_CASE("malformed space documents") {
  auto parse = [](const std::string& t) { return [t] { io::parse_space(Json::parse(t)); }; };
  CHECK(code_of(parse(R"({"format":"limit-space","version":2,"points":[],"vmax":{}})")) == ErrorCode::kParse);
  CHECK(code_of(parse(R"({"format":"space","version":1,"points":[],"vmax":{}})")) == ErrorCode::kParse);
  CHECK(code_of(parse(R"({"format":"limit-space","version":1,"points":["a"],"vmax":{"a":["a"]},"extra":1})")) == ErrorCode::kParse);
  CHECK(code_of(parse(R"({"format":"limit-space","version":1,"points":["a"]})")) == ErrorCode::kParse);
  CHECK(code_of(parse(R"({"format":"limit-space","version":1,"points":["a","a"],"vmax":{"a":["a"]}})")) == ErrorCode::kParse);
  CHECK(code_of(parse(R"({"format":"limit-space","version":1,"points":["a","b"],"vmax":{"a":["a"]}})")) == ErrorCode::kParse);
  CHECK(code_of(parse(R"({"format":"limit-space","version":1,"points":["a"],"vmax":{"a":["z"]}})")) == ErrorCode::kParse);
  CHECK(code_of(parse(R"({"format":"limit-space","version":1,"points":["a"],"convergence":{"a":[[]]}})")) == ErrorCode::kParse);
  CHECK(code_of(parse(R"([1,2])")) == ErrorCode::kParse);
  // V(a) without a violates the point axiom.
  CHECK_THROWS_AS(io::parse_space(Json::parse(R"({"format":"limit-space","version":1,"points":["a","b"],"vmax":{"a":["b"],"b":["b"]}})")), Error);
  CHECK(code_of([] { io::read_json_file(data("does-not-exist.json")); }) == ErrorCode::kParse);
}

TEST_CASE("maps, covers and atlases") {
  const Json m = io::read_json_file(data("cycle16_to_cycle8.json"));
  const io::MapDocument doc = io::parse_map_document(m);
  REQUIRE(doc.domain.has_value());
  REQUIRE(doc.codomain.has_value());
  const PointMap p = io::to_map(doc, *doc.domain, *doc.codomain);
  CHECK(is_continuous(p));
  CHECK(io::dump(io::map_to_json(io::to_map(io::parse_map_document(io::map_to_json(p)), p.domain(),
                                            p.codomain()))) == io::dump(io::map_to_json(p)));
  CHECK(code_of([&] { io::to_map(doc, cycle(8), cycle(8)); }) == ErrorCode::kParse);

  const Json only_table = io::read_json_file(data("cycle8_mod4.json"));
  const io::MapDocument partial = io::parse_map_document(only_table);
  CHECK_FALSE(partial.domain.has_value());
  Json broken = only_table;
  broken["table"].erase(broken["table"].begin().key());
  const io::MapDocument short_doc = io::parse_map_document(broken);
  const LimitSpace c8 = io::parse_space(io::read_json_file(data("cycle8.json")));
  const LimitSpace c4 = io::parse_space(io::read_json_file(data("cycle4.json")));
  CHECK(code_of([&] { io::to_map(short_doc, c8, c4); }) == ErrorCode::kParse);
  CHECK(is_continuous(io::to_map(partial, c8, c4)));

  const LocalCover balls = io::parse_cover(io::read_json_file(data("cycle8_balls.json")), c8);
  CHECK(balls.sets == unit_ball_cover(c8).sets);
  auto sorted_sets = [](std::vector<PointSet> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(sorted_sets(io::parse_cover(io::cover_to_json(balls, c8), c8).sets) ==
        sorted_sets(balls.sets));

  const Json aj = io::read_json_file(data("cycle16_atlas.json"));
  const CoveringAtlas atlas = io::parse_atlas(aj);
  CHECK(verify_atlas(atlas).ok);
  CHECK(io::dump(io::atlas_to_json(atlas)) == io::dump(aj));
  Json bad_chart = aj;
  bad_chart["charts"][0]["extra"] = 1;
  CHECK(code_of([&] { io::parse_atlas(bad_chart); }) == ErrorCode::kParse);
}

TEST_CASE("walk syntax") {
  const LimitSpace c8 = cycle(8);
  CHECK(io::parse_walk("v0,v1,v2", c8) == Walk::through(c8, {0, 1, 2}));
  CHECK(io::parse_walk("v3", c8) == Walk::constant(3));
  CHECK(io::parse_walk("v0,v1;R", c8) == Walk({0, 1}, {Flag::kRight}));
  CHECK(io::parse_walk(to_string(Walk({0, 1, 2}, {Flag::kRight, Flag::kLeft}), c8), c8) ==
        Walk({0, 1, 2}, {Flag::kRight, Flag::kLeft}));
  CHECK(code_of([&] { io::parse_walk("v0,x", c8); }) == ErrorCode::kParse);
  CHECK(code_of([&] { io::parse_walk("v0,v1;LL", c8); }) == ErrorCode::kParse);
  CHECK(code_of([&] { io::parse_walk("v0,v1;Q", c8); }) == ErrorCode::kParse);
  CHECK(code_of([&] { io::parse_walk("", c8); }) == ErrorCode::kParse);
  CHECK_THROWS_AS(io::parse_walk("v0,v2", c8), Error);
}

TEST_CASE("point clouds") {
  std::ifstream in(data("circle8.csv"));
  const auto cloud = io::parse_cloud_csv(in);
  REQUIRE(cloud.size() == 8);
  const LimitSpace c8 = io::from_cloud(cloud, "1.0");
  CHECK(masks_of(c8) == masks_of(cycle(8)));
  CHECK(c8.name(3) == "v3");
  CHECK(masks_of(io::from_cloud(cloud, "0")) == masks_of(from_masks(std::vector<Mask>{1, 2, 4, 8, 16, 32, 64, 128})));
  CHECK(io::from_cloud(cloud, "100") == LimitSpace::indiscrete(c8.carrier()));

  // Exact boundary: |(0,0)-(3,4)| = 5.
  const std::vector<io::CloudPoint> pair{{"a", {"0", "0"}}, {"b", {"3", "4"}}};
  CHECK(io::from_cloud(pair, "5").vmax(0) == PointSet{0, 1});
  CHECK(io::from_cloud(pair, "4.999999999999").vmax(0) == PointSet{0});
  CHECK(io::from_cloud(pair, "5e0").vmax(0) == PointSet{0, 1});
  const std::vector<io::CloudPoint> tenths{{"a", {"0.1", "0.2"}}, {"b", {"0.4", "0.6"}}};
  CHECK(io::from_cloud(tenths, "0.5").vmax(0) == PointSet{0, 1});  // 0.3² + 0.4² = 0.25 exactly

  CHECK(code_of([&] { io::from_cloud(pair, "-1"); }) == ErrorCode::kParse);
  CHECK(code_of([&] { io::from_cloud(pair, "abc"); }) == ErrorCode::kParse);
  const std::vector<io::CloudPoint> ragged{{"a", {"0"}}, {"b", {"3", "4"}}};
  CHECK(code_of([&] { io::from_cloud(ragged, "1"); }) == ErrorCode::kParse);
  std::istringstream bad("a,1,x\n");
  CHECK(code_of([&] { io::from_cloud(io::parse_cloud_csv(bad), "1"); }) == ErrorCode::kParse);

  // Chord oracle and monotonicity on random clouds.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<double>> pts(2 + trial % 7, std::vector<double>(2));
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    const auto c = cloud_of(pts, 6);
    std::vector<Mask> prev(pts.size(), 0);
    for (const char* r : {"0.5", "1.25", "2", "3.5", "9"}) {
      const LimitSpace s = io::from_cloud(c, r);
      const long double rr = std::stold(r);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Mask expect = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          const long double dx = std::stold(c[i].coords[0]) - std::stold(c[j].coords[0]);
          const long double dy = std::stold(c[i].coords[1]) - std::stold(c[j].coords[1]);
          if (std::sqrt(dx * dx + dy * dy) <= rr) expect |= Mask{1} << j;
        }
        REQUIRE(s.vmax(static_cast<PointId>(i)).to_mask() == expect);
        REQUIRE(subset(prev[i], expect));
        prev[i] = expect;
      }
    }
  }
}

TEST_CASE("edge lists") {
  std::ifstream in(data("cycle8.edges"));
  const LimitSpace c8 = io::from_edges(io::parse_edges(in), io::EdgeMode::kSymmetric);
  CHECK(masks_of(c8) == masks_of(cycle(8)));

  std::istringstream one("a b\n");
  const LimitSpace directed = io::from_edges(io::parse_edges(one), io::EdgeMode::kDirected);
  const PointId a = *directed.carrier()->find("a");
  const PointId b = *directed.carrier()->find("b");
  CHECK(directed.vmax(b) == PointSet{a, b});
  CHECK(directed.vmax(a) == PointSet{a});

  std::istringstream lonely("a\nb\n");
  CHECK(io::from_edges(io::parse_edges(lonely), io::EdgeMode::kSymmetric) ==
        LimitSpace::discrete(make_carrier({"a", "b"})));
  std::istringstream undeclared("a\nb\na c\n");
  const io::EdgeList partial_decl = io::parse_edges(undeclared);
  CHECK(code_of([&] { io::from_edges(partial_decl, io::EdgeMode::kSymmetric); }) ==
        ErrorCode::kParse);
  std::istringstream three("a b c\n");
  CHECK(code_of([&] { io::parse_edges(three); }) == ErrorCode::kParse);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 12;
    std::ostringstream text;
    std::vector<Mask> v(n);
    for (std::size_t x = 0; x < n; ++x) {
      text << "n" << x << "\n";
      v[x] = Mask{1} << x;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t x = rng() % n, y = rng() % n;
      text << "n" << x << " n" << y << "\n";
      v[x] |= Mask{1} << y;
      v[y] |= Mask{1} << x;
    }
    std::istringstream src(text.str());
    const LimitSpace s = io::from_edges(io::parse_edges(src), io::EdgeMode::kSymmetric);
    std::set<std::set<std::string>> got, want;
    for (const PointSet& part : components(s)) {
      std::set<std::string> names;
      for (PointId p : part) names.insert(s.name(p));
      got.insert(names);
    }
    for (Mask part : components_uf(v)) {
      std::set<std::string> names;
      for (std::size_t x = 0; x < n; ++x) {
        if (part >> x & 1) names.insert("n" + std::to_string(x));
      }
      want.insert(names);
    }
    REQUIRE(got == want);
  }
}
