// Copyright 2026 The nfold Authors
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

#include "nfold/core.hpp"

#include <set>
#include <string>

namespace nfold {

bool is_core_cube(const NTupleGroupoid& t, CellId x) {
  const CellIndex full = t.full_index();
  const ObjectId o = t.sink_object(full, x);
  for (unsigned i = 0; i < t.dimension(); ++i)
    if (t.face(full, i, Side::target, x) != t.object_identity(o, full.without(i))) return false;
  return true;
}

bool is_bundle_cube(const NTupleGroupoid& t, CellId x) {
  const CellIndex full = t.full_index();
  const ObjectId o = t.source_object(full, x);
  for (unsigned i = 0; i < t.dimension(); ++i) {
    const CellId id = t.object_identity(o, full.without(i));
    if (t.face(full, i, Side::source, x) != id || t.face(full, i, Side::target, x) != id) return false;
  }
  return true;
}

std::vector<CoreElement> core_elements(const NTupleGroupoid& t) {
  const CellIndex full = t.full_index();
  std::vector<CoreElement> out;
  for (CellId x = 0; x < t.cube_count(); ++x)
    if (is_core_cube(t, x)) out.push_back({x, t.source_object(full, x), t.sink_object(full, x)});
  return out;
}

std::vector<CoreElement> core_bundle(const NTupleGroupoid& t) {
  std::vector<CoreElement> out;
  for (const auto& u : core_elements(t))
    if (is_bundle_cube(t, u.cube)) out.push_back(u);
  return out;
}

CellId transmute(const NTupleGroupoid& t, CellId u, CellId x) {
  const unsigned n = t.dimension();
  const CellIndex full = t.full_index();
  if (u >= t.cube_count() || x >= t.cube_count()) throw Error(Errc::invalid_argument, "transmute: not a cube id");
  if (!is_core_cube(t, u)) throw Error(Errc::precondition, "transmute: u is not in the core groupoid");
  if (t.sink_object(full, u) != t.source_object(full, x))
    throw Error(Errc::precondition, "transmute: sink of u differs from the source of x");
  std::vector<CellId> entries(std::size_t(1) << n);
  for (const Partition& p : subdivision_positions(n)) {
    CellId c;
    if (p.second.empty())
      c = u;
    else if (p.first.empty())
      c = x;
    else
      c = t.identity(p.second, t.face(full, x, p.first, Side::source), p.first);
    entries[p.second.bits()] = c;
  }
  try {
    GridArrangement g(t, std::vector<unsigned>(n, 2), std::move(entries));
    return compose_grid(t, g);
  } catch (const Error& e) {
    throw Error(Errc::precondition, std::string("transmute: filler grid rejected: ") + e.what());
  }
}

CoreGroupoid core_groupoid(const NTupleGroupoid& t) {
  const auto elems = core_elements(t);
  const std::size_t m = elems.size();
  if (m > kMaxTableArrows) throw Error(Errc::limit_exceeded, "core groupoid too large for a dense table");
  const CellIndex full = t.full_index();
  std::vector<ArrowId> arrow_of(t.cube_count(), kNoArrow);
  for (ArrowId a = 0; a < m; ++a) arrow_of[elems[a].cube] = a;

  FiniteGroupoid::Tables tab;
  tab.objects = t.object_count();
  tab.comp.assign(m * m, kNoArrow);
  tab.inv.assign(m, kNoArrow);
  tab.idn.assign(tab.objects, kNoArrow);
  CoreGroupoid out;
  for (ArrowId a = 0; a < m; ++a) {
    tab.src.push_back(elems[a].source);
    tab.tgt.push_back(elems[a].sink);
    tab.names.push_back("u" + std::to_string(elems[a].cube));
    out.cubes.push_back(elems[a].cube);
  }
  for (ObjectId o = 0; o < tab.objects; ++o) tab.idn[o] = arrow_of[t.object_identity(o, full)];
  for (ArrowId a = 0; a < m; ++a)
    for (ArrowId b = 0; b < m; ++b) {
      if (elems[a].sink != elems[b].source) continue;
      const CellId c = transmute(t, elems[a].cube, elems[b].cube);
      if (arrow_of[c] == kNoArrow) throw Error(Errc::precondition, "core groupoid is not closed under transmutation");
      tab.comp[a * m + b] = arrow_of[c];
    }
  for (ArrowId a = 0; a < m; ++a)
    for (ArrowId b = 0; b < m; ++b)
      if (tab.comp[a * m + b] != kNoArrow && tab.comp[a * m + b] == tab.idn[tab.src[a]] &&
          tab.comp[b * m + a] == tab.idn[tab.tgt[a]]) {
        tab.inv[a] = b;
        break;
      }
  for (ArrowId a = 0; a < m; ++a)
    if (tab.inv[a] == kNoArrow) throw Error(Errc::precondition, "core element without an inverse");
  out.groupoid = FiniteGroupoid(std::move(tab));
  return out;
}

CoreElement transmuter_between(const NTupleGroupoid& t, CellId x, CellId y) {
  const CellIndex full = t.full_index();
  for (unsigned i = 0; i < t.dimension(); ++i)
    if (t.face(full, i, Side::target, x) != t.face(full, i, Side::target, y))
      throw Error(Errc::precondition, "transmuter_between: cubes do not share their targets");
  const ObjectId sx = t.source_object(full, x), sy = t.source_object(full, y);
  std::vector<CoreElement> found;
  for (const auto& u : core_elements(t))
    if (u.source == sx && u.sink == sy && transmute(t, u.cube, y) == x) found.push_back(u);
  if (found.empty()) throw Error(Errc::not_found, "no transmuter between the cubes");
  if (found.size() > 1) throw Error(Errc::precondition, "transmuter is not unique");
  return found.front();
}

bool is_slim(const NTupleGroupoid& t) {
  const CellIndex full = t.full_index();
  for (const auto& u : core_bundle(t))
    if (!t.is_identity_cell(full, u.cube)) return false;
  return true;
}

bool is_exclusive(const NTupleGroupoid& t) {
  for (const auto& u : core_elements(t))
    if (!is_bundle_cube(t, u.cube)) return false;
  return true;
}

bool is_maximal(const NTupleGroupoid& t) {
  const unsigned n = t.dimension();
  const CellIndex full = t.full_index();
  // Realized tuples of sink edges against all tuples with a common sink.
  std::set<std::vector<CellId>> realized;
  for (CellId x = 0; x < t.cube_count(); ++x) {
    std::vector<CellId> tuple(n);
    for (unsigned i = 0; i < n; ++i) tuple[i] = t.face(full, x, full.without(i), Side::target);
    realized.insert(std::move(tuple));
  }
  std::size_t expected = 0;
  for (ObjectId o = 0; o < t.object_count(); ++o) {
    std::size_t prod = 1;
    for (unsigned i = 0; i < n; ++i) prod *= t.cells_by_face(CellIndex::single(i), i, Side::target)[o].size();
    expected += prod;
  }
  return realized.size() == expected;
}

bool is_maximally_exclusive(const NTupleGroupoid& t) {
  const unsigned n = t.dimension();
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const CellIndex I(bits);
    if (I.size() >= 2 && I.size() < n && !is_slim(boundary_subgroupoid(t, I))) return false;
    if (I.size() == 2 && !is_exclusive(boundary_subgroupoid(t, I))) return false;
  }
  return is_maximal(t);
}

bool is_vacant(const NTupleGroupoid& t) { return is_slim(t) && is_maximally_exclusive(t); }

NTupleGroupoid boundary_subgroupoid(const NTupleGroupoid& t, CellIndex I) {
  if (I.empty() || !I.subset_of(t.full_index()))
    throw Error(Errc::invalid_argument, "boundary index must be a nonempty set of directions");
  if (I == t.full_index()) return t;
  const auto dims = I.directions();
  const unsigned k = unsigned(dims.size());
  auto global = [&](std::uint32_t local) {
    CellIndex j;
    for (unsigned q = 0; q < k; ++q)
      if ((local >> q) & 1u) j = j.with(dims[q]);
    return j;
  };
  NTupleBuilder b(k);
  for (std::uint32_t l = 0; l < (1u << k); ++l) b.set_cell_count(CellIndex(l), t.cell_count(global(l)));
  for (std::uint32_t l = 0; l < (1u << k); ++l) {
    const CellIndex L(l), J = global(l);
    for (unsigned q = 0; q < k; ++q) {
      const unsigned d = dims[q];
      for (CellId c = 0; c < t.cell_count(J); ++c) {
        if (L.contains(q)) {
          b.set_face(L, q, Side::source, c, t.face(J, d, Side::source, c));
          b.set_face(L, q, Side::target, c, t.face(J, d, Side::target, c));
        } else {
          b.set_identity(L, q, c, t.identity(J, d, c));
        }
      }
      if (L.contains(q))
        for (const auto& e : t.composites(J, d)) b.set_composite(L, q, e.a, e.b, e.c);
    }
  }
  return std::move(b).build();
}

}  // namespace nfold
