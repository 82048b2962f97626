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

// Command-line front end. Exit codes: 0 success or affirmative verdict,
// 1 negative verdict, 2 undecided within budget, 3 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>
#include <CLI11.hpp>

#include "convergence/connectivity.hpp"
#include "convergence/constructions.hpp"
#include "convergence/covering.hpp"
#include "convergence/homotopy.hpp"
#include "convergence/io.hpp"
#include "convergence/paths.hpp"
#include "convergence/universal_cover.hpp"

namespace cv = convergence;
namespace io = convergence::io;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUnknown = 2;
constexpr int kInputError = 3;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

cv::LimitSpace load_space(const std::string& path) {
  return io::parse_space(io::read_json_file(path));
}

cv::PointId point(const cv::LimitSpace& s, const std::string& name) {
  auto id = s.carrier()->find(name);
  if (!id) throw cv::Error(cv::ErrorCode::kParse, "unknown point '" + name + "'");
  return *id;
}

std::string names(const cv::LimitSpace& s, const cv::PointSet& set) {
  std::vector<std::string> out;
  for (cv::PointId p : set) out.push_back(s.name(p));
  std::sort(out.begin(), out.end());
  std::string joined;
  for (const auto& n : out) joined += (joined.empty() ? "" : ",") + n;
  return "{" + joined + "}";
}

// "unit-balls", "whole" or a cover document.
cv::LocalCover load_cover(const std::string& spec, const cv::LimitSpace& s) {
  if (spec == "unit-balls") return cv::unit_ball_cover(s);
  if (spec == "whole") return cv::LocalCover{{s.carrier()->all()}, s.carrier()->all()};
  return io::parse_cover(io::read_json_file(spec), s);
}

cv::HomotopySystem load_system(const std::string& spec, const cv::LimitSpace& s,
                               std::size_t budget) {
  cv::LocalCover cover = load_cover(spec, s);
  if (!cv::is_local_cover(s, cv::LocalCover{cover.sets, s.carrier()->all()})) {
    throw cv::Error(cv::ErrorCode::kParse, "cover is not a covering system of the space");
  }
  return cv::HomotopySystem(s, std::move(cover), budget);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

void print_components(const cv::LimitSpace& s, const std::vector<cv::PointSet>& comps) {
  std::vector<std::string> lines;
  for (const auto& c : comps) lines.push_back(names(s, c));
  std::sort(lines.begin(), lines.end());
  std::cout << "components: " << comps.size() << "\n";
  for (const auto& l : lines) std::cout << l << "\n";
}

struct Options {
  std::size_t threads = 1;
  std::string file, file2, cover = "unit-balls", map, atlas, walk, start, from, to, base;
  std::string mode, points, scale, basepoints, chart = "first";
  std::vector<std::string> files;
  std::size_t radius = 8, budget = cv::kDefaultMoveBudget, max_len = 16;
  std::size_t loop_length = cv::kDefaultLoopLength;
};

int cmd_validate(const Options& o) {
  const io::SpaceDocument doc = io::parse_space_document(io::read_json_file(o.file));
  cv::LimitSpace s;
  try {
    s = io::to_space(doc);
  } catch (const cv::Error& e) {
    std::cout << "valid: no\nreason: " << e.what() << "\n";
    return kNegative;
  }
  std::cout << "valid: yes\n"
            << "form: " << (doc.vmax ? "closed" : "raw") << "\n"
            << "points: " << s.size() << "\n"
            << "pretopological: " << yes_no(cv::is_pretopological(s)) << "\n"
            << "pseudotopological: " << yes_no(cv::is_pseudotopological(s)) << "\n";
  return kOk;
}

int cmd_close(const Options& o) {
  const io::SpaceDocument doc = io::parse_space_document(io::read_json_file(o.file));
  std::cout << io::dump(io::space_to_json(io::to_space(doc), doc.metadata));
  return kOk;
}

int cmd_product(const Options& o) {
  std::vector<cv::LimitSpace> factors;
  for (const auto& f : o.files) factors.push_back(load_space(f));
  std::cout << io::dump(io::space_to_json(cv::product(factors).space));
  return kOk;
}

int cmd_subspace(const Options& o) {
  const cv::LimitSpace s = load_space(o.file);
  cv::PointSet members;
  for (const auto& n : split(o.points, ',')) members.insert(point(s, n));
  std::cout << io::dump(io::space_to_json(cv::subspace(s, members).space));
  return kOk;
}

int cmd_quotient(const Options& o) {
  const cv::LimitSpace s = load_space(o.file);
  io::MapDocument md = io::parse_map_document(io::read_json_file(o.map));
  if (md.domain && !(*md.domain == s)) {
    throw cv::Error(cv::ErrorCode::kParse, "embedded domain differs from the space");
  }
  // Only the codomain's points matter; its structure is replaced.
  std::vector<std::string> targets;
  if (md.codomain) {
    targets = md.codomain->carrier()->names();
    md.codomain.reset();
  } else {
    for (const auto& [from, to] : md.table) targets.push_back(to);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }
  const cv::CarrierPtr target = cv::make_carrier(targets);
  const cv::PointMap q = io::to_map(md, s, cv::LimitSpace::discrete(target));
  const cv::QuotientSpec spec{s, target, q.table()};
  const cv::LimitSpace out = o.mode == "pstop" ? cv::quotient_pstop(spec) : cv::quotient_limit(spec);
  std::cout << io::dump(io::space_to_json(out));
  return kOk;
}

int cmd_function_space(const Options& o) {
  const cv::FunctionSpace fs = cv::function_space(load_space(o.file), load_space(o.file2));
  std::cout << io::dump(io::space_to_json(fs.structure));
  return kOk;
}

int cmd_components(const Options& o, bool paths) {
  const cv::LimitSpace s = load_space(o.file);
  print_components(s, paths ? cv::path_components(s) : cv::components(s));
  return kOk;
}

int cmd_is_connected(const Options& o) {
  const cv::LimitSpace s = load_space(o.file);
  if (auto p = cv::disconnection(s)) {
    std::cout << "connected: no\nfirst: " << names(s, p->first)
              << "\nsecond: " << names(s, p->second) << "\n";
    return kNegative;
  }
  std::cout << "connected: yes\n";
  return kOk;
}

int cmd_chain(const Options& o) {
  const cv::LimitSpace s = load_space(o.file);
  const cv::LocalCover cover = load_cover(o.cover, s);
  const auto chain = cv::chain_between(s, point(s, o.from), point(s, o.to), cover);
  if (!chain) {
    std::cout << "chain: none\n";
    return kNegative;
  }
  std::cout << "chain: " << chain->size() << "\n";
  for (std::size_t i : *chain) std::cout << names(s, cover.sets[i]) << "\n";
  return kOk;
}

int cmd_is_covering(const Options& o) {
  const cv::CoveringAtlas atlas = io::parse_atlas(io::read_json_file(o.atlas));
  const cv::AtlasReport r = cv::verify_atlas(atlas);
  std::cout << "covering: " << yes_no(r.ok) << "\n";
  for (const auto& d : r.defects) std::cout << "defect: " << d << "\n";
  if (!r.ok) return kNegative;
  std::cout << "sheets: " << atlas.fiber.size() << "\n"
            << "unique path lifting: " << yes_no(cv::has_unique_path_lifting(atlas)) << "\n";
  return kOk;
}

int cmd_search_atlas(const Options& o) {
  const io::MapDocument md = io::parse_map_document(io::read_json_file(o.map));
  if (!md.domain || !md.codomain) {
    throw cv::Error(cv::ErrorCode::kParse, "map document must embed 'domain' and 'codomain'");
  }
  const cv::PointMap p = io::to_map(md, *md.domain, *md.codomain);
  const auto atlas = cv::search_atlas(p);
  if (!atlas) {
    std::cout << "atlas: none\n";
    return kNegative;
  }
  std::cout << io::dump(io::atlas_to_json(*atlas));
  return kOk;
}

int cmd_lift_path(const Options& o) {
  const cv::CoveringAtlas atlas = io::parse_atlas(io::read_json_file(o.atlas));
  const cv::Walk w = io::parse_walk(o.walk, atlas.base());
  const auto choice = o.chart == "last" ? cv::ChartChoice::kLast : cv::ChartChoice::kFirst;
  const cv::Walk lift = cv::lift_path(atlas, w, point(atlas.total(), o.start), choice);
  std::cout << "lift: " << cv::to_string(lift, atlas.total()) << "\n"
            << "end: " << atlas.total().name(lift.end()) << "\n";
  return kOk;
}

int cmd_lift_map(const Options& o) {
  const cv::CoveringAtlas atlas = io::parse_atlas(io::read_json_file(o.atlas));
  const io::MapDocument md = io::parse_map_document(io::read_json_file(o.map));
  if (!md.domain) throw cv::Error(cv::ErrorCode::kParse, "map document must embed 'domain'");
  const cv::PointMap f = io::to_map(md, *md.domain, atlas.base());
  const auto bp = split(o.basepoints, ',');
  if (bp.size() != 2) {
    throw cv::Error(cv::ErrorCode::kParse, "--basepoints takes y0,e0");
  }
  const cv::LiftMapResult r =
      cv::lift_map(atlas, f, point(f.domain(), bp[0]), point(atlas.total(), bp[1]), o.budget);
  switch (r.outcome) {
    case cv::LiftOutcome::kLifted: {
      std::cout << "outcome: lifted\n";
      std::vector<std::string> lines;
      for (cv::PointId y = 0; y < f.domain().size(); ++y) {
        lines.push_back(f.domain().name(y) + " -> " + atlas.total().name((*r.lift)(y)));
      }
      std::sort(lines.begin(), lines.end());
      for (const auto& l : lines) std::cout << l << "\n";
      return kOk;
    }
    case cv::LiftOutcome::kObstructed:
      std::cout << "outcome: obstructed\n"
                << "loop: " << cv::to_string(*r.obstruction, f.domain()) << "\n"
                << "image: " << cv::to_string(cv::pushforward(*r.obstruction, f), atlas.base())
                << "\n";
      return kNegative;
    case cv::LiftOutcome::kIndeterminate:
      std::cout << "outcome: indeterminate\nreason: " << r.message << "\n";
      return kUnknown;
  }
  return kUnknown;
}

int cmd_universal_cover(const Options& o) {
  const cv::LimitSpace s = load_space(o.file);
  const cv::HomotopySystem sys = load_system(o.cover, s, o.budget);
  const cv::CoverFragment frag =
      cv::build_fragment(s, point(s, o.base), sys, o.radius, o.threads);
  const cv::UniversalReport r = cv::verify_universal(frag, o.loop_length);
  std::cout << "classes: " << frag.classes.size() << "\n"
            << "interior: " << frag.interior.size() << "\n"
            << "boundary: " << frag.boundary.size() << "\n"
            << "uncertified: " << frag.uncertified.size() << "\n"
            << "charts checked: " << r.charts_checked << "\n"
            << "charts skipped: " << r.charts_skipped << "\n"
            << "atlas: " << (r.atlas_ok ? "pass" : "fail") << "\n"
            << "fibers discrete: " << yes_no(r.fibers_discrete) << "\n"
            << "sheets disjoint: " << yes_no(r.sheets_disjoint) << "\n"
            << "loops checked: " << r.loops_checked << "\n"
            << "simply connected: " << yes_no(r.simply_connected) << "\n"
            << "path connected: " << yes_no(r.path_connected) << "\n";
  for (const auto& d : r.defects) std::cout << "defect: " << d << "\n";
  for (const auto& n : r.stipulations) std::cout << "stipulation: " << n << "\n";
  if (!r.passed()) return kNegative;
  return frag.uncertified.empty() ? kOk : kUnknown;
}

int cmd_pi1(const Options& o) {
  const cv::LimitSpace s = load_space(o.file);
  const cv::HomotopySystem sys = load_system(o.cover, s, o.budget);
  const cv::Pi1Report r = cv::pi1_probe(s, point(s, o.base), sys, o.max_len, o.threads);
  std::cout << "loop classes: " << r.loop_classes.size() << "\n"
            << "generators: " << r.generators.size() << "\n";
  for (const auto& g : r.generators) std::cout << "generator: " << cv::to_string(g, s) << "\n";
  const char* verdict = r.verdict == cv::Pi1Verdict::kTrivial ? "trivial"
                        : r.verdict == cv::Pi1Verdict::kInfiniteCyclicCompatible
                            ? "infinite-cyclic-compatible"
                            : "inconclusive";
  std::cout << "verdict: " << verdict << "\n";
  if (!r.shift_evidence.empty()) {
    std::cout << "shift orbit: " << r.shift_evidence.size() << "\n";
  }
  std::cout << "uncertified: " << r.uncertified << "\n";
  for (const auto& n : r.stipulations) std::cout << "stipulation: " << n << "\n";
  return r.verdict == cv::Pi1Verdict::kInconclusive ? kUnknown : kOk;
}

int cmd_from_cloud(const Options& o) {
  std::ifstream in(o.file);
  if (!in) throw cv::Error(cv::ErrorCode::kParse, "cannot read '" + o.file + "'");
  std::cout << io::dump(io::space_to_json(io::from_cloud(io::parse_cloud_csv(in), o.scale)));
  return kOk;
}

int cmd_from_edges(const Options& o) {
  std::ifstream in(o.file);
  if (!in) throw cv::Error(cv::ErrorCode::kParse, "cannot read '" + o.file + "'");
  const auto mode = o.mode == "directed" ? io::EdgeMode::kDirected : io::EdgeMode::kSymmetric;
  std::cout << io::dump(io::space_to_json(io::from_edges(io::parse_edges(in), mode)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite convergence spaces: constructions, connectivity, coverings"};
  app.require_subcommand(1);
  Options o;
  int code = kOk;
  app.add_option("--threads", o.threads, "Worker threads for fragment expansion")
      ->check(CLI::PositiveNumber);

  auto file_arg = [&](CLI::App* sub, std::string& target, const char* name = "file") {
    sub->add_option(name, target, "Input file")->required();
  };
  auto run = [&](CLI::App* sub, auto fn) { sub->callback([&, fn] { code = fn(o); }); };

  auto* validate = app.add_subcommand("validate", "Check a space document");
  file_arg(validate, o.file);
  run(validate, cmd_validate);

  auto* close = app.add_subcommand("close", "Print the closed form of a space");
  file_arg(close, o.file);
  run(close, cmd_close);

  auto* product = app.add_subcommand("product", "Product of spaces");
  product->add_option("files", o.files, "Factor documents")->required();
  run(product, cmd_product);

  auto* subspace = app.add_subcommand("subspace", "Subspace on the given points");
  file_arg(subspace, o.file);
  subspace->add_option("--points", o.points, "Comma separated points")->required();
  run(subspace, cmd_subspace);

  auto* quotient = app.add_subcommand("quotient", "Quotient along a point map");
  file_arg(quotient, o.file);
  quotient->add_option("--map", o.map, "Point-map document")->required();
  quotient->add_option("--mode", o.mode, "limit or pstop")
      ->check(CLI::IsMember({"limit", "pstop"}))
      ->default_val("limit");
  run(quotient, cmd_quotient);

  auto* fspace = app.add_subcommand("function-space", "Continuous maps X -> Y");
  file_arg(fspace, o.file, "domain");
  file_arg(fspace, o.file2, "codomain");
  run(fspace, cmd_function_space);

  auto* comps = app.add_subcommand("components", "Connected components");
  file_arg(comps, o.file);
  run(comps, [](const Options& opt) { return cmd_components(opt, false); });

  auto* pcomps = app.add_subcommand("path-components", "Path components");
  file_arg(pcomps, o.file);
  run(pcomps, [](const Options& opt) { return cmd_components(opt, true); });

  auto* conn = app.add_subcommand("is-connected", "Connectedness verdict");
  file_arg(conn, o.file);
  run(conn, cmd_is_connected);

  auto* chain = app.add_subcommand("chain", "Chain of cover sets between two points");
  file_arg(chain, o.file);
  chain->add_option("--from", o.from)->required();
  chain->add_option("--to", o.to)->required();
  chain->add_option("--cover", o.cover, "unit-balls, whole or a cover document");
  run(chain, cmd_chain);

  auto* covering = app.add_subcommand("is-covering", "Verify a covering atlas");
  covering->add_option("--atlas", o.atlas)->required();
  run(covering, cmd_is_covering);

  auto* search = app.add_subcommand("search-atlas", "Search charts for a projection");
  file_arg(search, o.map, "map");
  run(search, cmd_search_atlas);

  auto* lift_path = app.add_subcommand("lift-path", "Lift a walk through an atlas");
  file_arg(lift_path, o.atlas, "atlas");
  lift_path->add_option("--walk", o.walk, "a,b,c with optional ;LR flags")->required();
  lift_path->add_option("--start", o.start)->required();
  lift_path->add_option("--chart", o.chart)->check(CLI::IsMember({"first", "last"}));
  run(lift_path, cmd_lift_path);

  auto* lift_map = app.add_subcommand("lift-map", "Lift a map through an atlas");
  file_arg(lift_map, o.map, "map");
  lift_map->add_option("--atlas", o.atlas)->required();
  lift_map->add_option("--basepoints", o.basepoints, "y0,e0")->required();
  lift_map->add_option("--budget", o.budget);
  run(lift_map, cmd_lift_map);

  auto* ucover = app.add_subcommand("universal-cover", "Build and verify a cover fragment");
  file_arg(ucover, o.file);
  ucover->add_option("--base", o.base)->required();
  ucover->add_option("--cover", o.cover, "unit-balls, whole or a cover document");
  ucover->add_option("--radius", o.radius);
  ucover->add_option("--budget", o.budget);
  ucover->add_option("--loop-length", o.loop_length);
  run(ucover, cmd_universal_cover);

  auto* pi1 = app.add_subcommand("pi1", "Probe loop classes at a basepoint");
  file_arg(pi1, o.file);
  pi1->add_option("--base", o.base)->required();
  pi1->add_option("--cover", o.cover, "unit-balls, whole or a cover document");
  pi1->add_option("--max-len", o.max_len);
  pi1->add_option("--budget", o.budget);
  run(pi1, cmd_pi1);

  auto* cloud = app.add_subcommand("from-cloud", "Space of a scaled point cloud");
  file_arg(cloud, o.file);
  cloud->add_option("--scale", o.scale)->required();
  run(cloud, cmd_from_cloud);

  auto* edges = app.add_subcommand("from-edges", "Space of an edge list");
  file_arg(edges, o.file);
  edges->add_option("--mode", o.mode)
      ->check(CLI::IsMember({"directed", "symmetric"}))
      ->default_val("symmetric");
  run(edges, cmd_from_edges);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  } catch (const cv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
