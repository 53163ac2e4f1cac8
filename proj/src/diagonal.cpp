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

#include "nfold/diagonal.hpp"

#include <algorithm>
#include <string>

#include "nfold/core.hpp"

namespace nfold {

namespace {

std::size_t slot(unsigned i, Side s) { return 2 * i + (s == Side::target ? 1 : 0); }

// Assemble the n-tuple groupoid whose lower cells are those of t and whose
// cubes are the given shells. Throws if the shells are not closed under the
// compositions and identities induced from t.
CoarseNTuple build_shell_tuple(const NTupleGroupoid& t, std::vector<std::vector<CellId>> shells) {
  const unsigned n = t.dimension();
  const CellIndex full = t.full_index();
  CoarseNTuple out;
  out.shells = std::move(shells);
  for (CellId k = 0; k < out.shells.size(); ++k) out.lookup.emplace(out.shells[k], k);

  NTupleBuilder b(n);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const CellIndex J(bits);
    b.set_cell_count(J, J == full ? out.shells.size() : t.cell_count(J));
  }
  for (std::uint32_t bits = 0; bits + 1 < (1u << n); ++bits) {
    const CellIndex J(bits);
    for (unsigned i = 0; i < n; ++i)
      for (CellId c = 0; c < t.cell_count(J); ++c) {
        if (J.contains(i)) {
          b.set_face(J, i, Side::source, c, t.face(J, i, Side::source, c));
          b.set_face(J, i, Side::target, c, t.face(J, i, Side::target, c));
        } else if (J.with(i) == full) {
          const CellId k = out.find(shell_of(t, t.identity(J, i, c)));
          if (k == kNoCell) throw Error(Errc::invalid_argument, "identity shell missing from the shell family");
          b.set_identity(J, i, c, k);
        } else {
          b.set_identity(J, i, c, t.identity(J, i, c));
        }
      }
    for (unsigned i : J.directions())
      for (const auto& e : t.composites(J, i)) b.set_composite(J, i, e.a, e.b, e.c);
  }
  for (CellId k = 0; k < out.shells.size(); ++k)
    for (unsigned i = 0; i < n; ++i) {
      b.set_face(full, i, Side::source, k, out.shells[k][slot(i, Side::source)]);
      b.set_face(full, i, Side::target, k, out.shells[k][slot(i, Side::target)]);
    }
  // Shells grouped by their s_i face, per direction.
  for (unsigned i = 0; i < n; ++i) {
    std::vector<std::vector<CellId>> by_src(t.cell_count(full.without(i)));
    for (CellId k = 0; k < out.shells.size(); ++k) by_src[out.shells[k][slot(i, Side::source)]].push_back(k);
    for (CellId a = 0; a < out.shells.size(); ++a)
      for (CellId c : by_src[out.shells[a][slot(i, Side::target)]]) {
        const auto& sa = out.shells[a];
        const auto& sc = out.shells[c];
        std::vector<CellId> sh(2 * n);
        sh[slot(i, Side::source)] = sa[slot(i, Side::source)];
        sh[slot(i, Side::target)] = sc[slot(i, Side::target)];
        bool ok = true;
        for (unsigned j = 0; j < n && ok; ++j) {
          if (j == i) continue;
          for (Side s : {Side::source, Side::target}) {
            const CellId f = t.compose(full.without(j), i, sa[slot(j, s)], sc[slot(j, s)]);
            if (f == kNoCell) ok = false;
            sh[slot(j, s)] = f;
          }
        }
        const CellId k = ok ? out.find(sh) : kNoCell;
        if (k == kNoCell) throw Error(Errc::invalid_argument, "shell family is not closed under composition");
        b.set_composite(full, i, a, c, k);
      }
  }
  out.structure = std::move(b).build();
  return out;
}

std::vector<CellId> distinct_image(const Section& s) {
  std::vector<CellId> v = s.image;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

CellId fill_and_compose(const NTupleGroupoid& t, std::vector<unsigned> shape, std::vector<CellId> fixed,
                        std::span<const CellId> candidates, bool require_unique, const char* what) {
  auto sols = fill_grid(t, shape, fixed, candidates, require_unique ? 2 : 1);
  if (sols.empty()) throw Error(Errc::precondition, std::string(what) + ": no filling of the grid exists");
  if (require_unique && sols.size() > 1)
    throw Error(Errc::precondition, std::string(what) + ": grid filling is not unique");
  GridArrangement g(t, std::move(shape), std::move(sols.front()));
  return compose_grid(t, g);
}

void check_composable(const NTupleGroupoid& t, CellId x, CellId y) {
  const CellIndex full = t.full_index();
  if (x >= t.cube_count() || y >= t.cube_count()) throw Error(Errc::invalid_argument, "not a cube id");
  if (t.sink_object(full, x) != t.source_object(full, y))
    throw Error(Errc::precondition, "diagonal composition: sink of x differs from the source of y");
}

FiniteGroupoid table_groupoid(const NTupleGroupoid& t, auto&& product) {
  const std::size_t m = t.cube_count();
  if (m > kMaxTableArrows) throw Error(Errc::limit_exceeded, "too many cubes for a dense diagonal table");
  const CellIndex full = t.full_index();
  FiniteGroupoid::Tables tab;
  tab.objects = t.object_count();
  tab.comp.assign(m * m, kNoArrow);
  tab.inv.assign(m, kNoArrow);
  for (CellId x = 0; x < m; ++x) {
    tab.src.push_back(t.source_object(full, x));
    tab.tgt.push_back(t.sink_object(full, x));
    tab.names.push_back("x" + std::to_string(x));
  }
  for (ObjectId o = 0; o < tab.objects; ++o) tab.idn.push_back(t.object_identity(o, full));
  for (CellId x = 0; x < m; ++x)
    for (CellId y = 0; y < m; ++y)
      if (tab.tgt[x] == tab.src[y]) tab.comp[x * m + y] = product(x, y);
  for (CellId x = 0; x < m; ++x)
    for (CellId y = 0; y < m; ++y)
      if (tab.comp[x * m + y] == tab.idn[tab.src[x]] && tab.comp[y * m + x] == tab.idn[tab.tgt[x]]) {
        tab.inv[x] = y;
        break;
      }
  for (CellId x = 0; x < m; ++x)
    if (tab.inv[x] == kNoArrow)
      throw Error(Errc::precondition, "diagonal composition leaves cube " + std::to_string(x) + " without an inverse");
  return FiniteGroupoid(std::move(tab));
}

}  // namespace

std::vector<CellId> shell_of(const NTupleGroupoid& t, CellId x) {
  const CellIndex full = t.full_index();
  std::vector<CellId> sh(2 * t.dimension());
  for (unsigned i = 0; i < t.dimension(); ++i) {
    sh[slot(i, Side::source)] = t.face(full, i, Side::source, x);
    sh[slot(i, Side::target)] = t.face(full, i, Side::target, x);
  }
  return sh;
}

CellId CoarseNTuple::find(const std::vector<CellId>& shell) const {
  auto it = lookup.find(shell);
  return it == lookup.end() ? kNoCell : it->second;
}

CoarseNTuple coarse(const NTupleGroupoid& t, std::size_t max_shells) {
  const unsigned n = t.dimension();
  const CellIndex full = t.full_index();
  std::vector<std::vector<CellId>> shells;
  std::vector<CellId> cur(2 * n, kNoCell);

  // Slot k = (direction k / 2, side k % 2); a face in direction j must agree
  // with every earlier face of a different direction i on their common cell.
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == 2 * n) {
      if (shells.size() >= max_shells)
        throw Error(Errc::limit_exceeded, "coarse n-tuple groupoid exceeds " + std::to_string(max_shells) + " shells");
      shells.push_back(cur);
      return;
    }
    const unsigned j = unsigned(k / 2);
    const Side rho = k % 2 ? Side::target : Side::source;
    const CellIndex Jhat = full.without(j);
    std::vector<CellId> all;
    const std::vector<CellId>* pool = nullptr;
    if (j > 0) {
      // Candidates whose s_0 face matches the 0-face already chosen.
      const CellId want = t.face(full.without(0), j, rho, cur[slot(0, Side::source)]);
      pool = &t.cells_by_face(Jhat, 0, Side::source)[want];
    } else {
      all.resize(t.cell_count(Jhat));
      for (CellId c = 0; c < all.size(); ++c) all[c] = c;
      pool = &all;
    }
    for (CellId c : *pool) {
      bool ok = true;
      for (unsigned i = 0; i < j && ok; ++i)
        for (Side sigma : {Side::source, Side::target})
          if (t.face(Jhat, i, sigma, c) != t.face(full.without(i), j, rho, cur[slot(i, sigma)])) {
            ok = false;
            break;
          }
      if (!ok) continue;
      cur[k] = c;
      self(self, k + 1);
    }
    cur[k] = kNoCell;
  };
  recurse(recurse, 0);
  return build_shell_tuple(t, std::move(shells));
}

CoarseNTuple frame(const NTupleGroupoid& t) {
  std::vector<std::vector<CellId>> shells;
  for (CellId x = 0; x < t.cube_count(); ++x) shells.push_back(shell_of(t, x));
  std::sort(shells.begin(), shells.end());
  shells.erase(std::unique(shells.begin(), shells.end()), shells.end());
  return build_shell_tuple(t, std::move(shells));
}

CellId projection(const NTupleGroupoid& t, const CoarseNTuple& c, CellId x) { return c.find(shell_of(t, x)); }

Section make_section(const NTupleGroupoid& t, const CoarseNTuple& fr, std::vector<CellId> image) {
  const unsigned n = t.dimension();
  const CellIndex full = t.full_index();
  if (image.size() != fr.shells.size()) throw Error(Errc::invalid_argument, "section must cover every frame cube");
  for (CellId k = 0; k < image.size(); ++k)
    if (image[k] >= t.cube_count() || shell_of(t, image[k]) != fr.shells[k])
      throw Error(Errc::invalid_argument, "section value over frame cube " + std::to_string(k) + " has the wrong shell");
  Section s{std::move(image), true};
  const NTupleGroupoid& f = fr.structure;
  for (unsigned i = 0; i < n && s.functorial; ++i) {
    for (const auto& e : f.composites(full, i))
      if (t.compose(full, i, s.image[e.a], s.image[e.b]) != s.image[e.c]) {
        s.functorial = false;
        break;
      }
    const CellIndex lower = full.without(i);
    for (CellId c = 0; c < f.cell_count(lower) && s.functorial; ++c)
      if (s.image[f.identity(lower, i, c)] != t.identity(lower, i, c)) s.functorial = false;
  }
  return s;
}

Section first_section(const NTupleGroupoid& t, const CoarseNTuple& fr) {
  std::vector<CellId> image(fr.shells.size(), kNoCell);
  for (CellId x = 0; x < t.cube_count(); ++x) {
    const CellId k = fr.find(shell_of(t, x));
    if (k != kNoCell && image[k] == kNoCell) image[k] = x;
  }
  return make_section(t, fr, std::move(image));
}

CellId diagonal_compose_vacant(const NTupleGroupoid& t, CellId x, CellId y) {
  check_composable(t, x, y);
  const unsigned n = t.dimension();
  std::vector<CellId> fixed(std::size_t(1) << n, kNoCell);
  fixed.front() = x;
  fixed.back() = y;
  std::vector<CellId> all(t.cube_count());
  for (CellId c = 0; c < all.size(); ++c) all[c] = c;
  return fill_and_compose(t, std::vector<unsigned>(n, 2), std::move(fixed), all, true, "vacant composition");
}

CellId diagonal_compose_section(const NTupleGroupoid& t, const Section& s, CellId x, CellId y) {
  check_composable(t, x, y);
  const unsigned n = t.dimension();
  std::vector<CellId> fixed(std::size_t(1) << n, kNoCell);
  fixed.front() = x;
  fixed.back() = y;
  return fill_and_compose(t, std::vector<unsigned>(n, 2), std::move(fixed), distinct_image(s), false,
                          "section composition");
}

namespace {

std::vector<CellId> thirds_fixed(const NTupleGroupoid& t, CellId x, CellId y, CellId z) {
  check_composable(t, x, y);
  check_composable(t, y, z);
  const unsigned n = t.dimension();
  std::size_t total = 1, diag_stride = 0, stride = 1;
  for (unsigned d = 0; d < n; ++d) {
    total *= 3;
    diag_stride += stride;
    stride *= 3;
  }
  std::vector<CellId> fixed(total, kNoCell);
  fixed[0] = x;
  fixed[diag_stride] = y;
  fixed[2 * diag_stride] = z;
  return fixed;
}

}  // namespace

CellId compose_in_thirds(const NTupleGroupoid& t, const Section& s, CellId x, CellId y, CellId z) {
  auto fixed = thirds_fixed(t, x, y, z);
  return fill_and_compose(t, std::vector<unsigned>(t.dimension(), 3), std::move(fixed), distinct_image(s), false,
                          "division in thirds");
}

std::vector<CellId> thirds_composites(const NTupleGroupoid& t, const Section& s, CellId x, CellId y, CellId z,
                                      std::size_t max_fillings) {
  std::vector<unsigned> shape(t.dimension(), 3);
  auto sols = fill_grid(t, shape, thirds_fixed(t, x, y, z), distinct_image(s), max_fillings);
  std::vector<CellId> out;
  for (auto& sol : sols) out.push_back(compose_grid(t, GridArrangement(t, shape, std::move(sol))));
  return out;
}

CellId section_right_inverse(const NTupleGroupoid& t, const CoarseNTuple& fr, const Section& s, CellId x) {
  const CellIndex full = t.full_index();
  const ObjectId sink = t.sink_object(full, x);
  for (CellId k = 0; k < fr.shells.size(); ++k) {
    const CellId y = s.image[k];
    if (t.source_object(full, y) != sink) continue;
    const CellId u = diagonal_compose_section(t, s, x, y);
    if (!is_bundle_cube(t, u)) continue;
    const CellId u_inv = t.inverse(full, 0, u);
    if (u_inv == kNoCell) throw Error(Errc::precondition, "core bundle cube without a direction-0 inverse");
    return diagonal_compose_section(t, s, y, u_inv);
  }
  throw Error(Errc::not_found, "no section cube cancels the boundary of x");
}

FiniteGroupoid diagonal_groupoid(const NTupleGroupoid& t) {
  if (!is_vacant(t)) throw Error(Errc::precondition, "diagonal groupoid without a section needs a vacant τ");
  return table_groupoid(t, [&](CellId x, CellId y) { return diagonal_compose_vacant(t, x, y); });
}

FiniteGroupoid diagonal_groupoid(const NTupleGroupoid& t, const Section& s) {
  if (!s.functorial) throw Error(Errc::precondition, "the diagonal groupoid needs a functorial section");
  const auto cands = distinct_image(s);
  const unsigned n = t.dimension();
  return table_groupoid(t, [&](CellId x, CellId y) {
    std::vector<CellId> fixed(std::size_t(1) << n, kNoCell);
    fixed.front() = x;
    fixed.back() = y;
    return fill_and_compose(t, std::vector<unsigned>(n, 2), std::move(fixed), cands, false, "section composition");
  });
}

}  // namespace nfold
