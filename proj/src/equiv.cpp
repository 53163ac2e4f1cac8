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

#include "nfold/equiv.hpp"

#include <algorithm>

#include "nfold/core.hpp"

namespace nfold {

namespace {

constexpr std::uint32_t insert_bit(std::uint32_t w, unsigned pos, std::uint32_t val) {
  const std::uint32_t low = w & ((1u << pos) - 1u);
  return low | (val << pos) | ((w >> pos) << (pos + 1));
}

constexpr std::uint32_t remove_bit(std::uint32_t v, unsigned pos) {
  const std::uint32_t low = v & ((1u << pos) - 1u);
  return low | ((v >> (pos + 1)) << pos);
}

// Object at vertex v of a k-dimensional cube key.
ObjectId vertex_of(const FiniteGroupoid& g, const std::vector<ArrowId>& key, unsigned k, std::uint32_t v) {
  if (k == 0) return key[0];
  if (v == 0) return g.src(key[0]);
  const unsigned p = unsigned(std::countr_zero(v));
  return g.tgt(key[(std::size_t(p) << k) + (v & ~(1u << p))]);
}

std::vector<ArrowId> key_face(const FiniteGroupoid& g, const std::vector<ArrowId>& key, unsigned k, unsigned p,
                              Side side) {
  const std::uint32_t bit = side == Side::target ? 1u : 0u;
  if (k == 1) return {vertex_of(g, key, 1, bit)};
  const unsigned m = k - 1;
  std::vector<ArrowId> out(std::size_t(m) << m, kNoArrow);
  for (unsigned q = 0; q < k; ++q) {
    if (q == p) continue;
    const unsigned q2 = q < p ? q : q - 1;
    for (std::uint32_t w = 0; w < (1u << m); ++w) {
      if ((w >> q2) & 1u) continue;
      out[(std::size_t(q2) << m) + w] = key[(std::size_t(q) << k) + insert_bit(w, p, bit)];
    }
  }
  return out;
}

// ι in a new local direction inserted at position q.
std::vector<ArrowId> key_identity(const FiniteGroupoid& g, const std::vector<ArrowId>& key, unsigned k, unsigned q) {
  const unsigned m = k + 1;
  std::vector<ArrowId> out(std::size_t(m) << m, kNoArrow);
  for (unsigned p = 0; p < m; ++p)
    for (std::uint32_t v = 0; v < (1u << m); ++v) {
      if ((v >> p) & 1u) continue;
      const std::uint32_t old_v = remove_bit(v, q);
      if (p == q)
        out[(std::size_t(p) << m) + v] = g.idn(vertex_of(g, key, k, old_v));
      else
        out[(std::size_t(p) << m) + v] = key[(std::size_t(p < q ? p : p - 1) << k) + old_v];
    }
  return out;
}

std::vector<ArrowId> key_compose(const FiniteGroupoid& g, const std::vector<ArrowId>& a,
                                 const std::vector<ArrowId>& b, unsigned k, unsigned p) {
  std::vector<ArrowId> out(a.size(), kNoArrow);
  for (unsigned r = 0; r < k; ++r)
    for (std::uint32_t v = 0; v < (1u << k); ++v) {
      if ((v >> r) & 1u) continue;
      const std::size_t at = (std::size_t(r) << k) + v;
      if (r == p)
        out[at] = g.comp(a[at], b[at]);
      else
        out[at] = ((v >> p) & 1u) ? b[at] : a[at];
    }
  return out;
}

unsigned local_position(CellIndex j, unsigned i) { return CellIndex(j.bits() & ((1u << i) - 1u)).size(); }

// Commutative cubes of index J, extending each cube of J minus its top
// direction d by edges in H_d and pruning on the opposite face.
std::vector<std::vector<ArrowId>> enumerate_cubes(const FiniteGroupoid& g, const std::vector<Subgroupoid>& subs,
                                                  CellIndex J, const std::vector<std::vector<ArrowId>>& lower,
                                                  std::size_t& budget) {
  const auto dirs = J.directions();
  const unsigned k = unsigned(dirs.size());
  const unsigned m = k - 1;
  const unsigned d = dirs.back();
  std::vector<std::vector<ArrowId>> h_by_src(g.object_count());
  for (ArrowId a : subs[d].arrows()) h_by_src[g.src(a)].push_back(a);

  std::vector<std::vector<ArrowId>> out;
  const std::uint32_t verts = 1u << m;
  std::vector<ArrowId> e(verts);
  // top[p][u]: edge opposite A's direction-p edge at vertex u.
  std::vector<std::vector<ArrowId>> top(m, std::vector<ArrowId>(verts, kNoArrow));

  for (const auto& A : lower) {
    auto recurse = [&](auto&& self, std::uint32_t v) -> void {
      if (v == verts) {
        if (out.size() >= budget) throw Error(Errc::limit_exceeded, "Γ exceeds the cell budget");
        std::vector<ArrowId> key(std::size_t(k) << k, kNoArrow);
        for (unsigned p = 0; p < m; ++p)
          for (std::uint32_t w = 0; w < (1u << k); ++w) {
            if ((w >> p) & 1u) continue;
            key[(std::size_t(p) << k) + w] =
                (w >> m) & 1u ? top[p][w & ~(1u << m)] : A[(std::size_t(p) << m) + w];
          }
        for (std::uint32_t w = 0; w < verts; ++w) key[(std::size_t(m) << k) + w] = e[w];
        out.push_back(std::move(key));
        return;
      }
      for (ArrowId cand : h_by_src[vertex_of(g, A, m, v)]) {
        e[v] = cand;
        bool ok = true;
        for (unsigned p = 0; p < m && ok; ++p) {
          if (!((v >> p) & 1u)) continue;
          const std::uint32_t u = v & ~(1u << p);
          const ArrowId path[] = {g.inv(e[u]), A[(std::size_t(p) << m) + u], cand};
          const ArrowId b = g.comp_path(path);
          if (b == kNoArrow || !subs[dirs[p]].contains(b))
            ok = false;
          else
            top[p][u] = b;
        }
        if (ok) self(self, v + 1);
      }
    };
    recurse(recurse, 0);
  }
  budget -= out.size();
  return out;
}

// Copy every table of t that does not involve cubes. identity_into_cube maps
// (lower index, direction, cell) to the cube id of its identity.
void copy_lower(const NTupleGroupoid& t, NTupleBuilder& b, auto&& identity_into_cube) {
  const unsigned n = t.dimension();
  const CellIndex full = t.full_index();
  for (std::uint32_t bits = 0; bits + 1 < (1u << n); ++bits) {
    const CellIndex J(bits);
    b.set_cell_count(J, t.cell_count(J));
  }
  for (std::uint32_t bits = 0; bits + 1 < (1u << n); ++bits) {
    const CellIndex J(bits);
    for (unsigned i = 0; i < n; ++i)
      for (CellId c = 0; c < t.cell_count(J); ++c) {
        if (J.contains(i)) {
          b.set_face(J, i, Side::source, c, t.face(J, i, Side::source, c));
          b.set_face(J, i, Side::target, c, t.face(J, i, Side::target, c));
        } else if (J.with(i) == full) {
          b.set_identity(J, i, c, identity_into_cube(J, i, c));
        } else {
          b.set_identity(J, i, c, t.identity(J, i, c));
        }
      }
    for (unsigned i : J.directions())
      for (const auto& e : t.composites(J, i)) b.set_composite(J, i, e.a, e.b, e.c);
  }
}

std::vector<ArrowId> edge_subgroupoid(const NTupleGroupoid& t, unsigned i) {
  const CellIndex edge = CellIndex::single(i);
  std::vector<ArrowId> out;
  for (CellId e = 0; e < t.cell_count(edge); ++e) out.push_back(t.identity(edge, e, t.full_index().without(i)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Lower cells of t sent to Γ(Λ t) through their skeletons, edges e ↦ ι_î(e).
bool map_lower_cells(const NTupleGroupoid& t, const GammaConstruction& gc, std::vector<std::vector<CellId>>& cell_map,
                     std::string& why, bool include_cubes) {
  const unsigned n = t.dimension();
  const CellIndex full = t.full_index();
  cell_map.assign(std::size_t(1) << n, {});
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const CellIndex J(bits);
    if (J == full && !include_cubes) continue;
    const auto dirs = J.directions();
    const unsigned k = unsigned(dirs.size());
    for (CellId c = 0; c < t.cell_count(J); ++c) {
      std::vector<ArrowId> key = t.skeleton(J, c);
      if (k > 0)
        for (unsigned p = 0; p < k; ++p)
          for (std::uint32_t v = 0; v < (1u << k); ++v) {
            const std::size_t at = (std::size_t(p) << k) + v;
            if ((v >> p) & 1u) continue;
            key[at] = t.identity(CellIndex::single(dirs[p]), key[at], full.without(dirs[p]));
          }
      const CellId img = gc.find(J, key);
      if (img == kNoCell) {
        why = "cell " + std::to_string(c) + " of index " + std::to_string(bits) + " has no image";
        return false;
      }
      cell_map[bits].push_back(img);
    }
  }
  return true;
}

}  // namespace

CellId GammaConstruction::find(CellIndex j, const std::vector<ArrowId>& key) const {
  const auto& m = lookup[j.bits()];
  auto it = m.find(key);
  return it == m.end() ? kNoCell : it->second;
}

GammaConstruction gamma(const FactorizationDatum& d) {
  if (!d.g) throw Error(Errc::invalid_argument, "datum has no groupoid");
  const unsigned n = unsigned(d.n());
  if (n == 0 || n > kMaxDimension) throw Error(Errc::limit_exceeded, "unsupported number of subgroupoids");
  const FiniteGroupoid& g = *d.g;
  const std::uint32_t nidx = 1u << n;

  GammaConstruction gc;
  gc.g = d.g;
  gc.keys.resize(nidx);
  gc.lookup.resize(nidx);
  std::size_t budget = kMaxGammaCells;
  for (ObjectId o = 0; o < g.object_count(); ++o) gc.keys[0].push_back({o});
  for (std::uint32_t bits = 1; bits < nidx; ++bits) {
    const CellIndex J(bits);
    const unsigned top = J.directions().back();
    gc.keys[bits] = enumerate_cubes(g, d.subs, J, gc.keys[J.without(top).bits()], budget);
  }
  for (std::uint32_t bits = 0; bits < nidx; ++bits)
    for (CellId c = 0; c < gc.keys[bits].size(); ++c) gc.lookup[bits].emplace(gc.keys[bits][c], c);

  NTupleBuilder b(n);
  for (std::uint32_t bits = 0; bits < nidx; ++bits) b.set_cell_count(CellIndex(bits), gc.keys[bits].size());
  auto must = [](CellId c) {
    if (c == kNoCell) throw Error(Errc::invalid_argument, "Γ is not closed; the subgroupoids are not valid");
    return c;
  };
  for (std::uint32_t bits = 0; bits < nidx; ++bits) {
    const CellIndex J(bits);
    const unsigned k = J.size();
    const auto& keys = gc.keys[bits];
    for (unsigned i = 0; i < n; ++i) {
      if (J.contains(i)) {
        const unsigned p = local_position(J, i);
        std::vector<std::vector<CellId>> by_src(gc.keys[J.without(i).bits()].size());
        std::vector<CellId> tgt(keys.size());
        for (CellId c = 0; c < keys.size(); ++c) {
          const CellId s = must(gc.find(J.without(i), key_face(g, keys[c], k, p, Side::source)));
          tgt[c] = must(gc.find(J.without(i), key_face(g, keys[c], k, p, Side::target)));
          b.set_face(J, i, Side::source, c, s);
          b.set_face(J, i, Side::target, c, tgt[c]);
          by_src[s].push_back(c);
        }
        for (CellId a = 0; a < keys.size(); ++a)
          for (CellId c : by_src[tgt[a]])
            b.set_composite(J, i, a, c, must(gc.find(J, key_compose(g, keys[a], keys[c], k, p))));
      } else {
        const unsigned q = local_position(J.with(i), i);
        for (CellId c = 0; c < keys.size(); ++c)
          b.set_identity(J, i, c, must(gc.find(J.with(i), key_identity(g, keys[c], k, q))));
      }
    }
  }
  gc.tuple = std::move(b).build();
  return gc;
}

std::vector<GammaProperty> gamma_properties(const FactorizationDatum& d) { return gamma_properties(d, gamma(d)); }

std::vector<GammaProperty> gamma_properties(const FactorizationDatum& d, const GammaConstruction& gc) {
  const unsigned n = unsigned(d.n());
  std::vector<GammaProperty> out;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const CellIndex I(bits);
    if (I.size() < 2) continue;
    std::vector<Subgroupoid> hs;
    for (unsigned i : I.directions()) hs.push_back(d.subs[i]);
    const FactorizationDatum sub(d.g, hs);
    const NTupleGroupoid t = boundary_subgroupoid(gc.tuple, I);
    GammaProperty p;
    p.index = I;
    p.predicted_slim = true;
    p.direct_slim = is_slim(t);
    p.predicted_exclusive = is_discrete(intersect(hs));
    p.direct_exclusive = is_exclusive(t);
    p.predicted_maximal = is_permutation_invariant_product(sub);
    p.direct_maximal = is_maximal(t);
    out.push_back(p);
  }
  return out;
}

TwistedConstruction gamma_tilde(const FactorizationDatum& d) {
  if (!d.bundle) throw Error(Errc::invalid_argument, "Γ̃ needs a bundle");
  if (!is_normalized_abelian_bundle(d))
    throw Error(Errc::precondition, "bundle is not abelian or not normalized by the subgroupoids");
  TwistedConstruction tc;
  tc.base = gamma(d);
  const NTupleGroupoid& gt = tc.base.tuple;
  const FiniteGroupoid& g = *d.g;
  const unsigned n = gt.dimension();
  const CellIndex full = gt.full_index();

  std::vector<std::vector<ArrowId>> fibers(g.object_count());
  for (ObjectId o = 0; o < g.object_count(); ++o) fibers[o] = d.bundle->fiber(o);
  for (CellId x = 0; x < gt.cube_count(); ++x)
    for (ArrowId a : fibers[gt.source_object(full, x)]) {
      tc.lookup.emplace(std::pair{x, a}, CellId(tc.base_cube.size()));
      tc.base_cube.push_back(x);
      tc.fiber.push_back(a);
    }
  const std::size_t cubes = tc.base_cube.size();
  if (cubes > kMaxGammaCells) throw Error(Errc::limit_exceeded, "Γ̃ exceeds the cell budget");

  NTupleBuilder b(n);
  copy_lower(gt, b, [&](CellIndex J, unsigned i, CellId c) {
    const CellId x = gt.identity(J, i, c);
    return tc.lookup.at({x, g.idn(gt.source_object(full, x))});
  });
  b.set_cell_count(full, cubes);
  for (CellId c = 0; c < cubes; ++c)
    for (unsigned i = 0; i < n; ++i) {
      b.set_face(full, i, Side::source, c, gt.face(full, i, Side::source, tc.base_cube[c]));
      b.set_face(full, i, Side::target, c, gt.face(full, i, Side::target, tc.base_cube[c]));
    }
  for (unsigned i = 0; i < n; ++i)
    for (const auto& e : gt.composites(full, i)) {
      // h = s_î(X): the direction-i edge of X leaving its source vertex.
      const CellId edge = gt.face(full, e.a, full.without(i), Side::source);
      const ArrowId h = tc.base.keys[CellIndex::single(i).bits()][edge][0];
      for (ArrowId a : fibers[gt.source_object(full, e.a)])
        for (ArrowId bb : fibers[gt.source_object(full, e.b)]) {
          const ArrowId path[] = {a, h, bb, g.inv(h)};
          const ArrowId f = g.comp_path(path);
          b.set_composite(full, i, tc.lookup.at({e.a, a}), tc.lookup.at({e.b, bb}), tc.lookup.at({e.c, f}));
        }
    }
  tc.tuple = std::move(b).build();

  tc.frame = frame(tc.tuple);
  std::vector<CellId> image(tc.frame.shells.size(), kNoCell);
  for (CellId c = 0; c < cubes; ++c)
    if (g.is_identity(tc.fiber[c])) image[projection(tc.tuple, tc.frame, c)] = c;
  tc.section = make_section(tc.tuple, tc.frame, std::move(image));
  return tc;
}

FactorizationDatum lambda(const NTupleGroupoid& t) {
  auto g = std::make_shared<const FiniteGroupoid>(diagonal_groupoid(t));
  std::vector<Subgroupoid> subs;
  for (unsigned i = 0; i < t.dimension(); ++i) subs.emplace_back(g, edge_subgroupoid(t, i));
  return FactorizationDatum(g, std::move(subs));
}

FactorizationDatum lambda_tilde(const NTupleGroupoid& t, const Section& s) {
  auto g = std::make_shared<const FiniteGroupoid>(diagonal_groupoid(t, s));
  std::vector<Subgroupoid> subs;
  for (unsigned i = 0; i < t.dimension(); ++i) subs.emplace_back(g, edge_subgroupoid(t, i));
  std::vector<ArrowId> bundle;
  for (const auto& u : core_bundle(t)) bundle.push_back(u.cube);
  return FactorizationDatum(g, std::move(subs), GroupBundle(g, std::move(bundle)));
}

RoundTripCertificate roundtrip_datum(const FactorizationDatum& d) {
  RoundTripCertificate cert;
  cert.kind = d.bundle ? RoundTripCertificate::Kind::twisted_datum : RoundTripCertificate::Kind::datum;
  try {
    FactorizationDatum back;
    if (d.bundle) {
      const auto tc = gamma_tilde(d);
      back = lambda_tilde(tc.tuple, tc.section);
    } else {
      back = lambda(gamma(d).tuple);
    }
    std::vector<PreservedSubset> preserved;
    for (std::size_t i = 0; i < d.n(); ++i) preserved.push_back({back.subs[i].mask(), d.subs[i].mask()});
    if (d.bundle) preserved.push_back({back.bundle->mask(), d.bundle->mask()});
    cert.preserved_subsets = preserved.size();
    auto iso = find_isomorphism(*back.g, *d.g, preserved);
    if (!iso) {
      cert.failure = "no isomorphism preserving the subgroupoids";
      return cert;
    }
    cert.groupoid_map = std::move(*iso);
    cert.ok = true;
  } catch (const Error& e) {
    cert.failure = e.what();
  }
  return cert;
}

RoundTripCertificate roundtrip_ntuple(const NTupleGroupoid& t, const Section* s) {
  RoundTripCertificate cert;
  cert.kind = s ? RoundTripCertificate::Kind::twisted_ntuple : RoundTripCertificate::Kind::ntuple;
  try {
    std::string why;
    if (!s) {
      const auto d = lambda(t);
      const auto gc = gamma(d);
      if (!map_lower_cells(t, gc, cert.cell_map, why, true) || !is_ntuple_isomorphism(t, gc.tuple, cert.cell_map, &why)) {
        cert.failure = why;
        return cert;
      }
    } else {
      const auto d = lambda_tilde(t, *s);
      const auto tc = gamma_tilde(d);
      if (!map_lower_cells(t, tc.base, cert.cell_map, why, false)) {
        cert.failure = why;
        return cert;
      }
      const CellIndex full = t.full_index();
      const auto fr = frame(t);
      auto& cubes = cert.cell_map[full.bits()];
      for (CellId x = 0; x < t.cube_count(); ++x) {
        // x = u ·_! !(Πx) with u in the core bundle at the source of x.
        const ArrowId base_section = s->image.at(projection(t, fr, x));
        ArrowId u = kNoArrow;
        for (ArrowId a : d.bundle->fiber(t.source_object(full, x)))
          if (d.g->comp(a, base_section) == x) u = a;
        std::vector<ArrowId> key = t.skeleton(full, x);
        const auto dirs = full.directions();
        const unsigned k = unsigned(dirs.size());
        for (unsigned p = 0; p < k; ++p)
          for (std::uint32_t v = 0; v < (1u << k); ++v)
            if (!((v >> p) & 1u)) {
              const std::size_t at = (std::size_t(p) << k) + v;
              key[at] = t.identity(CellIndex::single(dirs[p]), key[at], full.without(dirs[p]));
            }
        const CellId X = tc.base.find(full, key);
        auto it = tc.lookup.find({X, u});
        if (u == kNoArrow || X == kNoCell || it == tc.lookup.end()) {
          cert.failure = "cube " + std::to_string(x) + " has no image";
          return cert;
        }
        cubes.push_back(it->second);
      }
      if (!is_ntuple_isomorphism(t, tc.tuple, cert.cell_map, &why)) {
        cert.failure = why;
        return cert;
      }
    }
    cert.ok = true;
  } catch (const Error& e) {
    cert.failure = e.what();
  }
  return cert;
}

bool is_ntuple_isomorphism(const NTupleGroupoid& from, const NTupleGroupoid& to,
                           const std::vector<std::vector<CellId>>& cell_map, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const unsigned n = from.dimension();
  if (to.dimension() != n || cell_map.size() != (std::size_t(1) << n)) return fail("dimensions differ");
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const CellIndex J(bits);
    const auto& m = cell_map[bits];
    if (m.size() != from.cell_count(J) || from.cell_count(J) != to.cell_count(J))
      return fail("cell counts differ at index " + std::to_string(bits));
    std::vector<bool> hit(to.cell_count(J), false);
    for (CellId c : m) {
      if (c >= hit.size() || hit[c]) return fail("map is not a bijection at index " + std::to_string(bits));
      hit[c] = true;
    }
  }
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const CellIndex J(bits);
    const auto& m = cell_map[bits];
    for (unsigned i = 0; i < n; ++i) {
      if (J.contains(i)) {
        const auto& lo = cell_map[J.without(i).bits()];
        for (CellId c = 0; c < m.size(); ++c)
          for (Side s : {Side::source, Side::target})
            if (lo[from.face(J, i, s, c)] != to.face(J, i, s, m[c]))
              return fail("faces are not preserved at index " + std::to_string(bits));
        const auto comps = from.composites(J, i);
        if (comps.size() != to.composites(J, i).size())
          return fail("composition domains differ at index " + std::to_string(bits));
        for (const auto& e : comps)
          if (to.compose(J, i, m[e.a], m[e.b]) != m[e.c])
            return fail("compositions are not preserved at index " + std::to_string(bits));
      } else {
        const auto& up = cell_map[J.with(i).bits()];
        for (CellId c = 0; c < m.size(); ++c)
          if (up[from.identity(J, i, c)] != to.identity(J, i, m[c]))
            return fail("identities are not preserved at index " + std::to_string(bits));
      }
    }
  }
  return true;
}

}  // namespace nfold
