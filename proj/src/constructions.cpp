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

#include "convergence/constructions.hpp"

#include <string>

namespace convergence {
namespace {

void require_surjective(const QuotientSpec& spec) {
  if (spec.projection.size() != spec.source.size()) {
    throw Error(ErrorCode::kInvalidArgument, "projection is not total on the source");
  }
  std::vector<bool> hit(spec.target->size(), false);
  for (PointId y : spec.projection) {
    if (y >= hit.size()) {
      throw Error(ErrorCode::kInvalidArgument, "projection leaves the target carrier");
    }
    hit[y] = true;
  }
  for (PointId y = 0; y < hit.size(); ++y) {
    if (!hit[y]) {
      throw Error(ErrorCode::kNotSurjective,
                  "projection misses target point '" + spec.target->name(y) + "'");
    }
  }
}

// Mixed-radix index with the last factor varying fastest.
std::vector<std::size_t> strides_for(std::span<const LimitSpace> factors) {
  std::vector<std::size_t> strides(factors.size(), 1);
  for (std::size_t i = factors.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * factors[i].size();
  }
  return strides;
}

}  // namespace

ProductSpace product(std::span<const LimitSpace> factors, std::size_t max_points) {
  std::size_t total = 1;
  for (const LimitSpace& f : factors) {
    if (f.size() != 0 && total > max_points / f.size()) {
      throw Error(ErrorCode::kResourceLimit,
                  "product carrier exceeds " + std::to_string(max_points) + " points");
    }
    total *= f.size();
  }
  if (total > max_points) {
    throw Error(ErrorCode::kResourceLimit,
                "product carrier exceeds " + std::to_string(max_points) + " points");
  }
  const auto strides = strides_for(factors);
  const std::size_t k = factors.size();

  std::vector<std::string> names(total);
  std::vector<std::vector<PointId>> coords(k, std::vector<PointId>(total));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::string name = "(";
    for (std::size_t i = 0; i < k; ++i) {
      const auto c = static_cast<PointId>((idx / strides[i]) % factors[i].size());
      coords[i][idx] = c;
      if (i) name += ',';
      name += factors[i].name(c);
    }
    name += ')';
    names[idx] = std::move(name);
  }

  std::vector<PointSet> vmax(total);
  std::vector<PointId> partial;
  for (std::size_t idx = 0; idx < total; ++idx) {
    // Cartesian product of the coordinate V's, accumulated factor by factor.
    std::vector<std::size_t> acc{0};
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::size_t> next;
      next.reserve(acc.size() * factors[i].vmax(coords[i][idx]).size());
      for (std::size_t base : acc) {
        for (PointId c : factors[i].vmax(coords[i][idx])) {
          next.push_back(base + c * strides[i]);
        }
      }
      acc = std::move(next);
    }
    vmax[idx] = PointSet(acc.begin(), acc.end());
  }

  ProductSpace out{LimitSpace(make_carrier(std::move(names)), std::move(vmax)), {}};
  out.projections.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.projections.emplace_back(out.space, factors[i], std::move(coords[i]));
  }
  return out;
}

Subspace subspace(const LimitSpace& space, const PointSet& members) {
  if (!members.empty() && members.back() >= space.size()) {
    throw Error(ErrorCode::kInvalidArgument, "subspace members leave the carrier");
  }
  std::vector<PointId> local(space.size(), 0);
  std::vector<std::string> names;
  std::vector<PointId> inclusion;
  for (PointId x : members) {
    local[x] = static_cast<PointId>(names.size());
    names.push_back(space.name(x));
    inclusion.push_back(x);
  }
  std::vector<PointSet> vmax;
  vmax.reserve(inclusion.size());
  for (PointId x : members) {
    PointSet v;
    for (PointId y : space.vmax(x) & members) v.insert(local[y]);
    vmax.push_back(std::move(v));
  }
  LimitSpace sub(make_carrier(std::move(names)), std::move(vmax));
  return Subspace{sub, PointMap(sub, space, std::move(inclusion))};
}

DisjointUnion disjoint_union(std::span<const LimitSpace> summands) {
  std::vector<std::string> names;
  std::vector<PointSet> vmax;
  std::vector<PointId> offsets;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const auto offset = static_cast<PointId>(names.size());
    offsets.push_back(offset);
    for (PointId x = 0; x < summands[i].size(); ++x) {
      names.push_back(std::to_string(i) + ":" + summands[i].name(x));
      PointSet v;
      for (PointId y : summands[i].vmax(x)) v.insert(offset + y);
      vmax.push_back(std::move(v));
    }
  }
  DisjointUnion out{LimitSpace(make_carrier(std::move(names)), std::move(vmax)), {}};
  for (std::size_t i = 0; i < summands.size(); ++i) {
    std::vector<PointId> t(summands[i].size());
    for (PointId x = 0; x < t.size(); ++x) t[x] = offsets[i] + x;
    out.injections.emplace_back(summands[i], out.space, std::move(t));
  }
  return out;
}

LimitSpace quotient_limit(const QuotientSpec& spec) {
  require_surjective(spec);
  // Finite families of convergent filters at points of a fiber: the coarsest
  // meet of their images is generated by the union of the q(V(x)).
  std::vector<PointSet> vmax(spec.target->size());
  for (PointId x = 0; x < spec.source.size(); ++x) {
    PointSet& v = vmax[spec.projection[x]];
    for (PointId s : spec.source.vmax(x)) v.insert(spec.projection[s]);
  }
  return LimitSpace(spec.target, std::move(vmax));
}

LimitSpace quotient_pstop(const QuotientSpec& spec) {
  require_surjective(spec);
  const std::size_t m = spec.target->size();
  std::vector<std::vector<PointId>> fibers(m);
  for (PointId x = 0; x < spec.source.size(); ++x) {
    fibers[spec.projection[x]].push_back(x);
  }
  std::vector<PointSet> vmax(m);
  for (PointId y = 0; y < m; ++y) {
    for (PointId a = 0; a < m; ++a) {
      // [a] ⊇ q(H) for some H → x with q(x) = y, i.e. a ∈ q(V(x)).
      bool reached = false;
      for (PointId x : fibers[y]) {
        for (PointId s : spec.source.vmax(x)) {
          if (spec.projection[s] == a) {
            reached = true;
            break;
          }
        }
        if (reached) break;
      }
      if (reached) vmax[y].insert(a);
    }
  }
  return LimitSpace(spec.target, std::move(vmax));
}

PointMap quotient_map(const QuotientSpec& spec, const LimitSpace& quotient) {
  return PointMap(spec.source, quotient, spec.projection);
}

LimitSpace initial_structure(CarrierPtr carrier,
                             std::span<const InitialSource> sources) {
  const std::size_t n = carrier->size();
  for (const InitialSource& s : sources) {
    if (s.table.size() != n) {
      throw Error(ErrorCode::kInvalidArgument, "initial source map is not total");
    }
  }
  std::vector<PointSet> vmax;
  vmax.reserve(n);
  for (PointId x = 0; x < n; ++x) {
    PointSet v;
    for (PointId a = 0; a < n; ++a) {
      bool ok = true;
      for (const InitialSource& s : sources) {
        if (!s.target.vmax(s.table[x]).contains(s.table[a])) {
          ok = false;
          break;
        }
      }
      if (ok) v.insert(a);
    }
    vmax.push_back(std::move(v));
  }
  return LimitSpace(std::move(carrier), std::move(vmax));
}

FunctionSpace function_space(const LimitSpace& x, const LimitSpace& y,
                             std::size_t max_maps) {
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m == 0) {
      count = 0;
      break;
    }
    if (count > max_maps / m) {
      throw Error(ErrorCode::kResourceLimit,
                  "function space exceeds " + std::to_string(max_maps) + " maps");
    }
    count *= m;
  }

  FunctionSpace fs{x, y, {}, LimitSpace()};
  std::vector<PointId> table(n, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      table[i] = static_cast<PointId>(rest % m);
      rest /= m;
    }
    if (is_continuous(PointMap(x, y, table))) fs.maps.push_back(table);
  }

  std::vector<std::string> names;
  names.reserve(fs.maps.size());
  for (const auto& f : fs.maps) {
    std::string s = "[";
    for (PointId i = 0; i < n; ++i) {
      if (i) s += ',';
      s += x.name(i) + "->" + y.name(f[i]);
    }
    names.push_back(s + "]");
  }

  // The condition on H is a conjunction over its members, so the largest
  // convergent H at f collects every h that passes individually.
  std::vector<PointSet> vmax(fs.maps.size());
  for (PointId f = 0; f < fs.maps.size(); ++f) {
    for (PointId h = 0; h < fs.maps.size(); ++h) {
      bool ok = true;
      for (PointId p = 0; p < n && ok; ++p) {
        const PointSet& target = y.vmax(fs.maps[f][p]);
        for (PointId v : x.vmax(p)) {
          if (!target.contains(fs.maps[h][v])) {
            ok = false;
            break;
          }
        }
      }
      if (ok) vmax[f].insert(h);
    }
  }
  fs.structure = LimitSpace(make_carrier(std::move(names)), std::move(vmax));
  return fs;
}

PointMap evaluation_map(const FunctionSpace& fs, const ProductSpace& fs_times_x) {
  if (fs_times_x.projections.size() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "evaluation needs a binary product");
  }
  const auto& pf = fs_times_x.projections[0];
  const auto& px = fs_times_x.projections[1];
  std::vector<PointId> t(fs_times_x.space.size());
  for (PointId i = 0; i < t.size(); ++i) t[i] = fs.maps.at(pf(i)).at(px(i));
  return PointMap(fs_times_x.space, fs.codomain, std::move(t));
}

LimitSpace modification_pstop(const LimitSpace& space) {
  std::vector<PointSet> vmax(space.size());
  for (PointId x = 0; x < space.size(); ++x) {
    for (PointId y = 0; y < space.size(); ++y) {
      if (converges(space, PrincipalFilter(space.carrier(), PointSet::singleton(y)), x)) {
        vmax[x].insert(y);
      }
    }
  }
  return LimitSpace(space.carrier(), std::move(vmax));
}

LimitSpace modification_pstop(const RawConvergenceTable& raw) {
  return modification_pstop(close(raw));
}

LimitSpace modification_pretop(const LimitSpace& space) {
  // Add the neighborhood filter 𝒰(x) to the convergent filters at x.
  std::vector<PointSet> vmax(space.size());
  for (PointId x = 0; x < space.size(); ++x) {
    vmax[x] = space.vmax(x) | neighborhood(space, x).generator();
  }
  return LimitSpace(space.carrier(), std::move(vmax));
}

LimitSpace modification_pretop(const RawConvergenceTable& raw) {
  return modification_pretop(close(raw));
}

}  // namespace convergence
