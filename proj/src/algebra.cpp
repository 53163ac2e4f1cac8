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

#include "nfold/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace nfold {

void ValidationReport::add(std::string axiom, std::string detail,
                           std::vector<std::int64_t> witnesses) {
  ++total;
  if (violations.size() < kMaxRecorded)
    violations.push_back({std::move(axiom), std::move(detail), std::move(witnesses)});
}

namespace {

using Perm = std::vector<std::uint32_t>;

Perm perm_mul(const Perm& p, const Perm& q) {
  // p then q
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

std::string cycle_name(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
      j = p[j];
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

}  // namespace

std::string cycle_notation(std::span<const std::uint32_t> one_line) {
  return cycle_name(Perm(one_line.begin(), one_line.end()));
}

FiniteGroupoid::FiniteGroupoid(Tables tables) : t_(std::move(tables)) {
  const std::size_t n = t_.src.size();
  if (n > kMaxTableArrows)
    throw Error(Errc::limit_exceeded, "groupoid has " + std::to_string(n) +
                                          " arrows; dense tables are limited to " +
                                          std::to_string(kMaxTableArrows));
  if (t_.tgt.size() != n || t_.inv.size() != n || t_.comp.size() != n * n ||
      t_.idn.size() != t_.objects || (!t_.names.empty() && t_.names.size() != n))
    throw Error(Errc::invalid_argument, "groupoid tables have inconsistent sizes");
  for (std::size_t a = 0; a < n; ++a) {
    if (t_.src[a] >= t_.objects || t_.tgt[a] >= t_.objects)
      throw Error(Errc::invalid_argument, "arrow " + std::to_string(a) + " has an unknown endpoint");
    if (t_.inv[a] >= n) throw Error(Errc::invalid_argument, "inverse table entry out of range");
  }
  for (ArrowId c : t_.comp)
    if (c != kNoArrow && c >= n) throw Error(Errc::invalid_argument, "composition entry out of range");
  for (ArrowId i : t_.idn)
    if (i >= n) throw Error(Errc::invalid_argument, "identity table entry out of range");
  for (std::size_t a = 0; a < t_.names.size(); ++a) by_name_.emplace(t_.names[a], ArrowId(a));
}

FiniteGroupoid FiniteGroupoid::from_cayley(std::vector<std::string> elements,
                                           const std::vector<std::vector<std::size_t>>& table,
                                           std::size_t identity) {
  const std::size_t n = elements.size();
  if (n == 0) throw Error(Errc::invalid_argument, "Cayley table has no elements");
  if (n > kMaxTableArrows) throw Error(Errc::limit_exceeded, "Cayley table too large");
  if (table.size() != n) throw Error(Errc::invalid_argument, "Cayley table is not square");
  if (identity >= n) throw Error(Errc::invalid_argument, "identity index out of range");

  Tables t;
  t.objects = 1;
  t.src.assign(n, 0);
  t.tgt.assign(n, 0);
  t.comp.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw Error(Errc::invalid_argument, "Cayley table is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] >= n) throw Error(Errc::invalid_argument, "Cayley table entry out of range");
      t.comp[i * n + j] = ArrowId(table[i][j]);
    }
  }
  // Inverses are read off the table; a missing one is left pointing at the
  // identity so validation reports it instead of construction failing.
  t.inv.assign(n, ArrowId(identity));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] == identity && table[j][i] == identity) {
        t.inv[i] = ArrowId(j);
        break;
      }
  t.idn = {ArrowId(identity)};
  t.names = std::move(elements);
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid FiniteGroupoid::from_permutations(std::size_t degree,
                                                 const std::vector<std::vector<std::uint32_t>>& generators,
                                                 std::size_t max_elements) {
  if (degree == 0) throw Error(Errc::invalid_argument, "permutation degree must be positive");
  for (const auto& g : generators) {
    if (g.size() != degree) throw Error(Errc::invalid_argument, "generator length differs from degree");
    std::vector<bool> hit(degree, false);
    for (auto x : g) {
      if (x >= degree || hit[x]) throw Error(Errc::invalid_argument, "generator is not a permutation");
      hit[x] = true;
    }
  }
  Perm e(degree);
  std::iota(e.begin(), e.end(), 0u);
  std::set<Perm> seen{e};
  std::vector<Perm> frontier{e};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : generators) {
        Perm y = perm_mul(x, g);
        if (seen.insert(y).second) {
          if (seen.size() > max_elements)
            throw Error(Errc::limit_exceeded,
                        "generated group exceeds " + std::to_string(max_elements) + " elements");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  std::vector<Perm> elems(seen.begin(), seen.end());
  const std::size_t n = elems.size();
  if (n > kMaxTableArrows)
    throw Error(Errc::limit_exceeded, "group of order " + std::to_string(n) +
                                          " exceeds the dense table bound");
  std::map<Perm, ArrowId> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(elems[i], ArrowId(i));

  Tables t;
  t.objects = 1;
  t.src.assign(n, 0);
  t.tgt.assign(n, 0);
  t.comp.resize(n * n);
  t.inv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.comp[i * n + j] = index.at(perm_mul(elems[i], elems[j]));
    Perm inv(degree);
    for (std::size_t k = 0; k < degree; ++k) inv[elems[i][k]] = std::uint32_t(k);
    t.inv[i] = index.at(inv);
    t.names.push_back(cycle_name(elems[i]));
  }
  t.idn = {index.at(e)};
  return FiniteGroupoid(std::move(t));
}

ArrowId FiniteGroupoid::comp_path(std::span<const ArrowId> path) const {
  if (path.empty()) return kNoArrow;
  ArrowId acc = path[0];
  for (std::size_t k = 1; k < path.size() && acc != kNoArrow; ++k) acc = comp(acc, path[k]);
  return acc;
}

std::string FiniteGroupoid::name(ArrowId a) const {
  if (a < t_.names.size()) return t_.names[a];
  return "#" + std::to_string(a);
}

std::optional<ArrowId> FiniteGroupoid::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport r;
  const std::size_t n = g.arrow_count();
  using W = std::int64_t;

  for (ObjectId o = 0; o < g.object_count(); ++o) {
    ArrowId i = g.idn(o);
    if (g.src(i) != o || g.tgt(i) != o)
      r.add("identity-endpoints", "idn(o) is not a loop at o", {W(o), W(i)});
  }
  for (ArrowId f = 0; f < n; ++f)
    for (ArrowId h = 0; h < n; ++h) {
      const bool composable = g.tgt(f) == g.src(h);
      const ArrowId c = g.comp(f, h);
      if (composable != (c != kNoArrow)) {
        r.add("composition-domain",
              composable ? "composable pair has no composite" : "non-composable pair has a composite",
              {W(f), W(h)});
        continue;
      }
      if (c != kNoArrow && (g.src(c) != g.src(f) || g.tgt(c) != g.tgt(h)))
        r.add("composition-endpoints", "composite has wrong source or target", {W(f), W(h), W(c)});
    }
  for (ArrowId f = 0; f < n; ++f) {
    if (g.comp(g.idn(g.src(f)), f) != f) r.add("left-unit", "idn(src f) o f != f", {W(f)});
    if (g.comp(f, g.idn(g.tgt(f))) != f) r.add("right-unit", "f o idn(tgt f) != f", {W(f)});
    const ArrowId fi = g.inv(f);
    if (g.comp(f, fi) != g.idn(g.src(f)))
      r.add("right-inverse", "f o inv(f) != idn(src f)", {W(f), W(fi)});
    if (g.comp(fi, f) != g.idn(g.tgt(f)))
      r.add("left-inverse", "inv(f) o f != idn(tgt f)", {W(f), W(fi)});
  }
  for (ArrowId f = 0; f < n; ++f)
    for (ArrowId h = 0; h < n; ++h) {
      const ArrowId fh = g.comp(f, h);
      if (fh == kNoArrow) continue;
      for (ArrowId k = 0; k < n; ++k) {
        const ArrowId hk = g.comp(h, k);
        if (hk == kNoArrow) continue;
        const ArrowId a = g.comp(fh, k);
        const ArrowId b = g.comp(f, hk);
        if (a != b) r.add("associativity", "(f h) k != f (h k)", {W(f), W(h), W(k)});
      }
    }
  return r;
}

std::vector<ArrowId> close_arrows(const FiniteGroupoid& g, std::span<const ArrowId> generators) {
  const std::size_t n = g.arrow_count();
  std::vector<bool> in(n, false);
  std::vector<ArrowId> members;
  auto add = [&](ArrowId a) {
    if (!in[a]) {
      in[a] = true;
      members.push_back(a);
    }
  };
  for (ObjectId o = 0; o < g.object_count(); ++o) add(g.idn(o));
  for (ArrowId a : generators) {
    if (a >= n) throw Error(Errc::invalid_argument, "generator id out of range");
    add(a);
    add(g.inv(a));
  }
  // Saturate: every new member is composed with every member on both sides.
  for (std::size_t k = 0; k < members.size(); ++k) {
    const ArrowId a = members[k];
    for (std::size_t j = 0; j <= k; ++j) {
      const ArrowId b = members[j];
      if (ArrowId c = g.comp(a, b); c != kNoArrow) add(c);
      if (ArrowId c = g.comp(b, a); c != kNoArrow) add(c);
    }
    add(g.inv(a));
  }
  std::sort(members.begin(), members.end());
  return members;
}

ArrowSubset::ArrowSubset(std::shared_ptr<const FiniteGroupoid> parent, std::vector<ArrowId> arrows)
    : parent_(std::move(parent)), arrows_(std::move(arrows)) {
  if (!parent_) throw Error(Errc::invalid_argument, "subset without parent groupoid");
  std::sort(arrows_.begin(), arrows_.end());
  arrows_.erase(std::unique(arrows_.begin(), arrows_.end()), arrows_.end());
  mask_.assign(parent_->arrow_count(), false);
  for (ArrowId a : arrows_) {
    if (a >= mask_.size()) throw Error(Errc::invalid_argument, "subset arrow out of range");
    mask_[a] = true;
  }
}

namespace {

void check_wide_closed(const ArrowSubset& s, const char* what) {
  const FiniteGroupoid& g = s.parent();
  for (ObjectId o = 0; o < g.object_count(); ++o)
    if (!s.contains(g.idn(o)))
      throw Error(Errc::invalid_argument, std::string(what) + " is missing an identity arrow");
  for (ArrowId a : s.arrows()) {
    if (!s.contains(g.inv(a)))
      throw Error(Errc::invalid_argument, std::string(what) + " is not closed under inverses");
    for (ArrowId b : s.arrows()) {
      ArrowId c = g.comp(a, b);
      if (c != kNoArrow && !s.contains(c))
        throw Error(Errc::invalid_argument, std::string(what) + " is not closed under composition");
    }
  }
}

}  // namespace

Subgroupoid::Subgroupoid(std::shared_ptr<const FiniteGroupoid> parent, std::vector<ArrowId> arrows)
    : ArrowSubset(std::move(parent), std::move(arrows)) {
  check_wide_closed(*this, "subgroupoid");
}

Subgroupoid Subgroupoid::generated(std::shared_ptr<const FiniteGroupoid> parent,
                                   std::span<const ArrowId> generators) {
  auto arrows = close_arrows(*parent, generators);
  return Subgroupoid(std::move(parent), std::move(arrows));
}

Subgroupoid Subgroupoid::identities(std::shared_ptr<const FiniteGroupoid> parent) {
  return generated(std::move(parent), {});
}

GroupBundle::GroupBundle(std::shared_ptr<const FiniteGroupoid> parent, std::vector<ArrowId> arrows)
    : ArrowSubset(std::move(parent), std::move(arrows)) {
  for (ArrowId a : this->arrows())
    if (this->parent().src(a) != this->parent().tgt(a))
      throw Error(Errc::invalid_argument, "group bundle contains a non-loop arrow");
  check_wide_closed(*this, "group bundle");
}

GroupBundle GroupBundle::generated(std::shared_ptr<const FiniteGroupoid> parent,
                                   std::span<const ArrowId> generators) {
  auto arrows = close_arrows(*parent, generators);
  return GroupBundle(std::move(parent), std::move(arrows));
}

GroupBundle GroupBundle::identities(std::shared_ptr<const FiniteGroupoid> parent) {
  return generated(std::move(parent), {});
}

std::vector<ArrowId> GroupBundle::fiber(ObjectId o) const {
  std::vector<ArrowId> out;
  for (ArrowId a : arrows())
    if (parent().src(a) == o) out.push_back(a);
  return out;
}

FactorizationDatum::FactorizationDatum(std::shared_ptr<const FiniteGroupoid> g_,
                                       std::vector<Subgroupoid> subs_,
                                       std::optional<GroupBundle> bundle_)
    : g(std::move(g_)), subs(std::move(subs_)), bundle(std::move(bundle_)) {
  if (!g) throw Error(Errc::invalid_argument, "factorization datum without groupoid");
  if (subs.empty()) throw Error(Errc::invalid_argument, "factorization datum needs n >= 1 subgroupoids");
  for (const auto& h : subs)
    if (h.parent_ptr() != g) throw Error(Errc::invalid_argument, "subgroupoid has a different parent");
  if (bundle && bundle->parent_ptr() != g)
    throw Error(Errc::invalid_argument, "bundle has a different parent");
}

bool is_discrete(const ArrowSubset& h) {
  return std::all_of(h.arrows().begin(), h.arrows().end(),
                     [&](ArrowId a) { return h.parent().is_identity(a); });
}

Subgroupoid intersect(std::span<const Subgroupoid> hs) {
  if (hs.empty()) throw Error(Errc::invalid_argument, "intersect of an empty family");
  for (const auto& h : hs)
    if (h.parent_ptr() != hs[0].parent_ptr())
      throw Error(Errc::invalid_argument, "intersect of subgroupoids with different parents");
  std::vector<ArrowId> common;
  for (ArrowId a : hs[0].arrows())
    if (std::all_of(hs.begin(), hs.end(), [a](const Subgroupoid& h) { return h.contains(a); }))
      common.push_back(a);
  return Subgroupoid(hs[0].parent_ptr(), std::move(common));
}

std::vector<std::size_t> product_counts(const FiniteGroupoid& g,
                                        std::span<const std::vector<ArrowId>* const> factors) {
  const std::size_t n = g.arrow_count();
  std::vector<std::size_t> cur(n, 0);
  if (factors.empty()) return cur;
  for (ArrowId h : *factors[0]) ++cur[h];
  for (std::size_t k = 1; k < factors.size(); ++k) {
    std::vector<std::size_t> next(n, 0);
    for (ArrowId a = 0; a < n; ++a) {
      if (cur[a] == 0) continue;
      for (ArrowId h : *factors[k])
        if (ArrowId c = g.comp(a, h); c != kNoArrow) next[c] += cur[a];
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<std::size_t> ordered_product_set(std::span<const Subgroupoid> subs) {
  if (subs.empty()) throw Error(Errc::invalid_argument, "ordered product of an empty family");
  std::vector<const std::vector<ArrowId>*> f;
  for (const auto& h : subs) {
    if (h.parent_ptr() != subs[0].parent_ptr())
      throw Error(Errc::invalid_argument, "subgroupoids with different parents");
    f.push_back(&h.arrows());
  }
  return product_counts(subs[0].parent(), f);
}

bool is_exact_factorization(const FactorizationDatum& d) {
  auto counts = ordered_product_set(d.subs);
  if (std::any_of(counts.begin(), counts.end(), [](std::size_t c) { return c != 1; })) return false;
  for (std::size_t i = 0; i < d.n(); ++i)
    for (std::size_t j = i + 1; j < d.n(); ++j) {
      const Subgroupoid pair[] = {d.subs[i], d.subs[j]};
      if (!is_discrete(intersect(pair))) return false;
    }
  return true;
}

bool is_permutation_invariant_product(const FactorizationDatum& d) {
  auto support = [](const std::vector<std::size_t>& c) {
    std::vector<bool> s(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) s[i] = c[i] > 0;
    return s;
  };
  std::vector<std::size_t> order(d.n());
  std::iota(order.begin(), order.end(), 0);
  const auto base = support(ordered_product_set(d.subs));
  while (std::next_permutation(order.begin(), order.end())) {
    std::vector<Subgroupoid> permuted;
    for (auto k : order) permuted.push_back(d.subs[k]);
    if (support(ordered_product_set(permuted)) != base) return false;
  }
  return true;
}

bool is_abelian(const GroupBundle& a) {
  const FiniteGroupoid& g = a.parent();
  for (ArrowId x : a.arrows())
    for (ArrowId y : a.arrows())
      if (g.src(x) == g.src(y) && g.comp(x, y) != g.comp(y, x)) return false;
  return true;
}

bool is_normalized_abelian_bundle(const FactorizationDatum& d) {
  if (!d.bundle) throw Error(Errc::precondition, "datum has no bundle");
  const GroupBundle& a = *d.bundle;
  const FiniteGroupoid& g = *d.g;
  if (!is_abelian(a)) return false;
  for (const auto& h : d.subs)
    for (ArrowId x : h.arrows())
      for (ArrowId b : a.arrows()) {
        // b sits at src(x): x^-1 b x lands at tgt(x); b sits at tgt(x): x b x^-1 lands at src(x).
        if (g.src(b) == g.src(x)) {
          const ArrowId path[] = {g.inv(x), b, x};
          if (!a.contains(g.comp_path(path))) return false;
        }
        if (g.src(b) == g.tgt(x)) {
          const ArrowId path[] = {x, b, g.inv(x)};
          if (!a.contains(g.comp_path(path))) return false;
        }
      }
  return true;
}

bool is_semi_factorization(const FactorizationDatum& d) {
  if (!d.bundle) throw Error(Errc::precondition, "datum has no bundle");
  std::vector<const std::vector<ArrowId>*> f{&d.bundle->arrows()};
  for (const auto& h : d.subs) f.push_back(&h.arrows());
  auto counts = product_counts(*d.g, f);
  return std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 1; });
}

std::size_t arrow_order(const FiniteGroupoid& g, ArrowId f) {
  if (g.src(f) != g.tgt(f)) return 0;
  const ArrowId e = g.idn(g.src(f));
  ArrowId x = f;
  std::size_t k = 1;
  while (x != e) {
    x = g.comp(x, f);
    ++k;
    if (x == kNoArrow || k > g.arrow_count()) return 0;
  }
  return k;
}

}  // namespace nfold
