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

#include "nfold/ntuple.hpp"

#include <string>

namespace nfold {

namespace {

constexpr std::uint64_t pair_key(CellId a, CellId b) { return (std::uint64_t(a) << 32) | b; }

constexpr Side kSides[] = {Side::source, Side::target};

const char* side_name(Side s) { return s == Side::source ? "s" : "t"; }

}  // namespace

CellId NTupleGroupoid::compose(CellIndex j, unsigned i, CellId a, CellId b) const {
  const auto& m = cells_[j.bits()].comp[i];
  auto it = m.find(pair_key(a, b));
  return it == m.end() ? kNoCell : it->second;
}

CellId NTupleGroupoid::face(CellIndex j, CellId c, CellIndex sources, CellIndex targets) const {
  for (unsigned i : sources.directions()) {
    c = face(j, i, Side::source, c);
    j = j.without(i);
  }
  for (unsigned i : targets.directions()) {
    c = face(j, i, Side::target, c);
    j = j.without(i);
  }
  return c;
}

CellId NTupleGroupoid::identity(CellIndex j, CellId c, CellIndex dirs) const {
  for (unsigned i : dirs.directions()) {
    c = identity(j, i, c);
    j = j.with(i);
  }
  return c;
}

CellId NTupleGroupoid::inverse(CellIndex j, unsigned i, CellId c) const {
  const CellIndex lower = j.without(i);
  const CellId src = face(j, i, Side::source, c);
  const CellId tgt = face(j, i, Side::target, c);
  const CellId left_unit = identity(lower, i, src);
  const CellId right_unit = identity(lower, i, tgt);
  for (CellId y : cells_by_face(j, i, Side::source)[tgt])
    if (face(j, i, Side::target, y) == src && compose(j, i, c, y) == left_unit &&
        compose(j, i, y, c) == right_unit)
      return y;
  return kNoCell;
}

CellId NTupleGroupoid::inverse(CellIndex j, CellId c, CellIndex dirs) const {
  for (unsigned i : dirs.directions()) {
    c = inverse(j, i, c);
    if (c == kNoCell) return kNoCell;
  }
  return c;
}

std::vector<CellId> NTupleGroupoid::skeleton(CellIndex j, CellId c) const {
  const auto dirs = j.directions();
  const unsigned k = unsigned(dirs.size());
  if (k == 0) return {c};
  const unsigned verts = 1u << k;
  std::vector<CellId> out(k * verts, kNoCell);
  for (unsigned p = 0; p < k; ++p)
    for (unsigned v = 0; v < verts; ++v) {
      if ((v >> p) & 1u) continue;
      CellIndex src, tgt;
      for (unsigned q = 0; q < k; ++q) {
        if (q == p) continue;
        if ((v >> q) & 1u)
          tgt = tgt.with(dirs[q]);
        else
          src = src.with(dirs[q]);
      }
      out[p * verts + v] = face(j, c, src, tgt);
    }
  return out;
}

const std::vector<std::vector<CellId>>& NTupleGroupoid::cells_by_face(CellIndex j, unsigned i,
                                                                      Side side) const {
  return cells_[j.bits()].by_face[side == Side::source ? 0 : 1][i];
}

std::vector<NTupleGroupoid::Composite> NTupleGroupoid::composites(CellIndex j, unsigned i) const {
  std::vector<Composite> out;
  for (const auto& [key, c] : cells_[j.bits()].comp[i])
    out.push_back({CellId(key >> 32), CellId(key & 0xffffffffu), c});
  return out;
}

NTupleBuilder::NTupleBuilder(unsigned n) {
  if (n == 0 || n > kMaxDimension)
    throw Error(Errc::limit_exceeded, "dimension must be between 1 and " + std::to_string(kMaxDimension));
  t_.n_ = n;
  t_.cells_.resize(std::size_t(1) << n);
}

NTupleBuilder NTupleBuilder::from(const NTupleGroupoid& t) {
  NTupleBuilder b(t.dimension());
  b.t_ = t;
  return b;
}

void NTupleBuilder::set_cell_count(CellIndex j, std::size_t count) {
  auto& tab = t_.cells_.at(j.bits());
  tab.count = count;
  for (unsigned i = 0; i < t_.n_; ++i) {
    if (j.contains(i)) {
      tab.src[i].assign(count, kNoCell);
      tab.tgt[i].assign(count, kNoCell);
    } else {
      tab.idn[i].assign(count, kNoCell);
    }
  }
}

void NTupleBuilder::set_face(CellIndex j, unsigned i, Side side, CellId c, CellId f) {
  auto& tab = t_.cells_.at(j.bits());
  (side == Side::source ? tab.src : tab.tgt).at(i).at(c) = f;
}

void NTupleBuilder::set_identity(CellIndex j, unsigned i, CellId c, CellId id) {
  t_.cells_.at(j.bits()).idn.at(i).at(c) = id;
}

void NTupleBuilder::set_composite(CellIndex j, unsigned i, CellId a, CellId b, CellId c) {
  t_.cells_.at(j.bits()).comp.at(i)[pair_key(a, b)] = c;
}

void NTupleBuilder::erase_composite(CellIndex j, unsigned i, CellId a, CellId b) {
  t_.cells_.at(j.bits()).comp.at(i).erase(pair_key(a, b));
}

NTupleGroupoid NTupleBuilder::build() && {
  const unsigned n = t_.n_;
  auto bad = [](const std::string& what) { throw Error(Errc::invalid_argument, what); };
  for (std::uint32_t bits = 0; bits < t_.cells_.size(); ++bits) {
    const CellIndex j(bits);
    auto& tab = t_.cells_[bits];
    for (unsigned i = 0; i < n; ++i) {
      if (j.contains(i)) {
        const std::size_t lower = t_.cells_[j.without(i).bits()].count;
        if (tab.src[i].size() != tab.count || tab.tgt[i].size() != tab.count)
          bad("face table size mismatch at index " + std::to_string(bits));
        for (std::size_t c = 0; c < tab.count; ++c)
          if (tab.src[i][c] >= lower || tab.tgt[i][c] >= lower)
            bad("face entry out of range at index " + std::to_string(bits) + ", direction " +
                std::to_string(i) + ", cell " + std::to_string(c));
        for (const auto& [key, c] : tab.comp[i])
          if ((key >> 32) >= tab.count || (key & 0xffffffffu) >= tab.count || c >= tab.count)
            bad("composition entry out of range at index " + std::to_string(bits));
        for (int s = 0; s < 2; ++s) {
          auto& idx = tab.by_face[s][i];
          idx.assign(lower, {});
          const auto& faces = s == 0 ? tab.src[i] : tab.tgt[i];
          for (std::size_t c = 0; c < tab.count; ++c) idx[faces[c]].push_back(CellId(c));
        }
      } else {
        const std::size_t upper = t_.cells_[j.with(i).bits()].count;
        if (tab.idn[i].size() != tab.count) bad("identity table size mismatch at index " + std::to_string(bits));
        for (std::size_t c = 0; c < tab.count; ++c)
          if (tab.idn[i][c] >= upper)
            bad("identity entry out of range at index " + std::to_string(bits) + ", direction " +
                std::to_string(i));
        if (!tab.comp[i].empty()) bad("composition stored for a direction outside the index");
      }
    }
  }
  return std::move(t_);
}

NTupleGroupoid trivial_ntuple(unsigned n, std::size_t objects) {
  NTupleBuilder b(n);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) b.set_cell_count(CellIndex(bits), objects);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const CellIndex j(bits);
    for (unsigned i = 0; i < n; ++i)
      for (CellId o = 0; o < objects; ++o) {
        if (j.contains(i)) {
          b.set_face(j, i, Side::source, o, o);
          b.set_face(j, i, Side::target, o, o);
          b.set_composite(j, i, o, o, o);
        } else {
          b.set_identity(j, i, o, o);
        }
      }
  }
  return std::move(b).build();
}

ValidationReport validate_ntuple(const NTupleGroupoid& t) {
  ValidationReport r;
  using W = std::int64_t;
  const unsigned n = t.dimension();
  const std::uint32_t nidx = 1u << n;

  for (std::uint32_t bits = 0; bits < nidx; ++bits) {
    const CellIndex j(bits);
    const std::size_t count = t.cell_count(j);
    const auto dirs = j.directions();

    // Faces commute across directions, on either side.
    for (std::size_t a = 0; a < dirs.size(); ++a)
      for (std::size_t b = a + 1; b < dirs.size(); ++b) {
        const unsigned i = dirs[a], k = dirs[b];
        for (Side si : kSides)
          for (Side sk : kSides)
            for (CellId c = 0; c < count; ++c) {
              const CellId x = t.face(j.without(i), k, sk, t.face(j, i, si, c));
              const CellId y = t.face(j.without(k), i, si, t.face(j, k, sk, c));
              if (x != y)
                r.add("face-commutation",
                      std::string(side_name(si)) + std::to_string(i) + " and " + side_name(sk) +
                          std::to_string(k) + " do not commute",
                      {W(bits), W(i), W(k), W(c)});
            }
      }

    // Identities: faces of ι_i, and ι_i ι_k = ι_k ι_i.
    for (unsigned i = 0; i < n; ++i) {
      if (j.contains(i)) continue;
      const CellIndex up = j.with(i);
      for (CellId c = 0; c < count; ++c) {
        const CellId x = t.identity(j, i, c);
        if (t.face(up, i, Side::source, x) != c || t.face(up, i, Side::target, x) != c)
          r.add("identity-faces", "s_i or t_i of ι_i(c) is not c", {W(bits), W(i), W(c)});
        for (unsigned k : dirs)
          for (Side s : kSides)
            if (t.face(up, k, s, x) != t.identity(j.without(k), i, t.face(j, k, s, c)))
              r.add("identity-faces", "faces of ι_i(c) in another direction are not identities",
                    {W(bits), W(i), W(k), W(c)});
        for (unsigned k = i + 1; k < n; ++k) {
          if (j.contains(k)) continue;
          if (t.identity(up, k, x) != t.identity(j.with(k), i, t.identity(j, k, c)))
            r.add("identity-commutation", "ι_i ι_k != ι_k ι_i", {W(bits), W(i), W(k), W(c)});
        }
      }
    }

    for (unsigned i : dirs) {
      const CellIndex lower = j.without(i);
      const auto& by_src = t.cells_by_face(j, i, Side::source);

      // Stored entries must be exactly the composable pairs.
      for (const auto& e : t.composites(j, i))
        if (t.face(j, i, Side::target, e.a) != t.face(j, i, Side::source, e.b))
          r.add("composition-domain", "composite stored for a non-composable pair", {W(bits), W(i), W(e.a), W(e.b)});

      for (CellId a = 0; a < count; ++a) {
        const CellId ta = t.face(j, i, Side::target, a);
        for (CellId b : by_src[ta]) {
          const CellId ab = t.compose(j, i, a, b);
          if (ab == kNoCell) {
            r.add("composition-domain", "composable pair has no composite", {W(bits), W(i), W(a), W(b)});
            continue;
          }
          if (t.face(j, i, Side::source, ab) != t.face(j, i, Side::source, a) ||
              t.face(j, i, Side::target, ab) != t.face(j, i, Side::target, b))
            r.add("composition-faces", "s_i/t_i of a composite are wrong", {W(bits), W(i), W(a), W(b), W(ab)});
          for (unsigned k : dirs) {
            if (k == i) continue;
            for (Side s : kSides) {
              const CellId expect =
                  t.compose(j.without(k), i, t.face(j, k, s, a), t.face(j, k, s, b));
              if (t.face(j, k, s, ab) != expect)
                r.add("composition-faces", "faces of a composite are not composites of faces",
                      {W(bits), W(i), W(k), W(a), W(b)});
            }
          }
          for (unsigned k = 0; k < n; ++k) {
            if (j.contains(k)) continue;
            const CellId lhs = t.identity(j, k, ab);
            const CellId rhs = t.compose(j.with(k), i, t.identity(j, k, a), t.identity(j, k, b));
            if (lhs != rhs)
              r.add("identity-functoriality", "ι_k(a ∘_i b) != ι_k a ∘_i ι_k b",
                    {W(bits), W(i), W(k), W(a), W(b)});
          }
          // Associativity over every composable triple.
          const CellId tb = t.face(j, i, Side::target, b);
          for (CellId c : by_src[tb]) {
            const CellId bc = t.compose(j, i, b, c);
            const CellId lhs = t.compose(j, i, ab, c);
            const CellId rhs = bc == kNoCell ? kNoCell : t.compose(j, i, a, bc);
            if (lhs != rhs || lhs == kNoCell)
              r.add("associativity", "(a ∘_i b) ∘_i c != a ∘_i (b ∘_i c)", {W(bits), W(i), W(a), W(b), W(c)});
          }
        }
        // Units and inverses.
        const CellId sa = t.face(j, i, Side::source, a);
        if (t.compose(j, i, t.identity(lower, i, sa), a) != a)
          r.add("unit", "ι_i(s_i a) ∘_i a != a", {W(bits), W(i), W(a)});
        if (t.compose(j, i, a, t.identity(lower, i, ta)) != a)
          r.add("unit", "a ∘_i ι_i(t_i a) != a", {W(bits), W(i), W(a)});
        if (t.inverse(j, i, a) == kNoCell)
          r.add("inverse", "cell has no inverse in this direction", {W(bits), W(i), W(a)});
      }

      // Interchange with every other direction k > i:
      // (a ∘_i b) ∘_k (c ∘_i d) = (a ∘_k c) ∘_i (b ∘_k d).
      for (unsigned k : dirs) {
        if (k <= i) continue;
        const auto& by_src_k = t.cells_by_face(j, k, Side::source);
        for (CellId a = 0; a < count; ++a)
          for (CellId b : by_src[t.face(j, i, Side::target, a)])
            for (CellId c : by_src_k[t.face(j, k, Side::target, a)])
              for (CellId d : by_src[t.face(j, i, Side::target, c)]) {
                if (t.face(j, k, Side::source, d) != t.face(j, k, Side::target, b)) continue;
                const CellId ab = t.compose(j, i, a, b), cd = t.compose(j, i, c, d);
                const CellId ac = t.compose(j, k, a, c), bd = t.compose(j, k, b, d);
                const CellId lhs = (ab == kNoCell || cd == kNoCell) ? kNoCell : t.compose(j, k, ab, cd);
                const CellId rhs = (ac == kNoCell || bd == kNoCell) ? kNoCell : t.compose(j, i, ac, bd);
                if (lhs != rhs || lhs == kNoCell)
                  r.add("interchange", "∘_i and ∘_k do not interchange",
                        {W(bits), W(i), W(k), W(a), W(b), W(c), W(d)});
              }
      }
    }
  }
  return r;
}

}  // namespace nfold
