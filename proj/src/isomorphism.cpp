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

// Exact groupoid isomorphism search: pick a generating set of the source,
// backtrack over images of the generators (filtered by an invariant
// signature), and propagate each choice through the composition table.

#include <algorithm>
#include <map>
#include <tuple>

#include "nfold/algebra.hpp"

namespace nfold {

namespace {

struct Signature {
  std::size_t order;      // 0 for non-loops
  std::size_t hom_size;   // |Hom(src, tgt)|
  std::vector<bool> membership;
  bool identity;

  auto tie() const { return std::tie(order, hom_size, membership, identity); }
  bool operator==(const Signature& o) const { return tie() == o.tie(); }
  bool operator<(const Signature& o) const { return tie() < o.tie(); }
};

std::vector<Signature> signatures(const FiniteGroupoid& g, std::span<const PreservedSubset> preserved,
                                  bool from_side) {
  std::map<std::pair<ObjectId, ObjectId>, std::size_t> hom;
  for (ArrowId a = 0; a < g.arrow_count(); ++a) ++hom[{g.src(a), g.tgt(a)}];
  std::vector<Signature> out(g.arrow_count());
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    Signature& s = out[a];
    s.order = arrow_order(g, a);
    s.hom_size = hom[{g.src(a), g.tgt(a)}];
    s.identity = g.is_identity(a);
    for (const auto& p : preserved) s.membership.push_back((from_side ? p.from : p.to)[a]);
  }
  return out;
}

class Search {
 public:
  Search(const FiniteGroupoid& from, const FiniteGroupoid& to, std::span<const PreservedSubset> preserved)
      : from_(from), to_(to), sig_from_(signatures(from, preserved, true)),
        sig_to_(signatures(to, preserved, false)) {}

  std::optional<GroupoidIsomorphism> run() {
    State s;
    s.arrows.assign(from_.arrow_count(), kNoArrow);
    s.used.assign(to_.arrow_count(), false);
    s.objects.assign(from_.object_count(), kNoArrow);
    s.used_objects.assign(to_.object_count(), false);
    choose_generators();
    if (recurse(0, s)) return GroupoidIsomorphism{result_.objects, result_.arrows};
    return std::nullopt;
  }

 private:
  struct State {
    std::vector<ArrowId> arrows;
    std::vector<bool> used;
    std::vector<ObjectId> objects;
    std::vector<bool> used_objects;
    std::vector<ArrowId> mapped;  // domain arrows assigned so far
  };

  // Greedy generating set, preferring arrows with large closures.
  void choose_generators() {
    std::vector<ArrowId> order(from_.arrow_count());
    for (ArrowId a = 0; a < order.size(); ++a) order[a] = a;
    std::stable_sort(order.begin(), order.end(), [&](ArrowId a, ArrowId b) {
      return sig_from_[a].order > sig_from_[b].order;
    });
    std::vector<bool> covered(from_.arrow_count(), false);
    std::vector<ArrowId> gens;
    for (ArrowId a : order) {
      if (covered[a]) continue;
      gens.push_back(a);
      // Closure without forcing all identities, so isolated objects need
      // their own generator.
      std::vector<ArrowId> members;
      std::vector<bool> in(from_.arrow_count(), false);
      for (ArrowId x : gens) {
        if (!in[x]) in[x] = true, members.push_back(x);
      }
      for (std::size_t k = 0; k < members.size(); ++k) {
        const ArrowId x = members[k];
        auto add = [&](ArrowId y) {
          if (y != kNoArrow && !in[y]) in[y] = true, members.push_back(y);
        };
        add(from_.inv(x));
        for (std::size_t j = 0; j <= k; ++j) {
          add(from_.comp(x, members[j]));
          add(from_.comp(members[j], x));
        }
      }
      covered = in;
    }
    gens_ = std::move(gens);
  }

  bool map_object(State& s, ObjectId o, ObjectId p) {
    if (s.objects[o] != kNoArrow) return s.objects[o] == p;
    if (s.used_objects[p]) return false;
    s.objects[o] = p;
    s.used_objects[p] = true;
    return true;
  }

  bool assign(State& s, ArrowId a, ArrowId b, std::vector<ArrowId>& queue) {
    if (s.arrows[a] != kNoArrow) return s.arrows[a] == b;
    if (s.used[b] || !(sig_from_[a] == sig_to_[b])) return false;
    if (!map_object(s, from_.src(a), to_.src(b)) || !map_object(s, from_.tgt(a), to_.tgt(b)))
      return false;
    s.arrows[a] = b;
    s.used[b] = true;
    s.mapped.push_back(a);
    queue.push_back(a);
    return true;
  }

  // Close the partial map under composition and inverses.
  bool propagate(State& s, std::vector<ArrowId> queue) {
    while (!queue.empty()) {
      const ArrowId a = queue.back();
      queue.pop_back();
      const ArrowId b = s.arrows[a];
      if (!assign(s, from_.inv(a), to_.inv(b), queue)) return false;
      for (std::size_t k = 0; k < s.mapped.size(); ++k) {
        const ArrowId x = s.mapped[k];
        const ArrowId y = s.arrows[x];
        const ArrowId ax = from_.comp(a, x), by = to_.comp(b, y);
        if ((ax == kNoArrow) != (by == kNoArrow)) return false;
        if (ax != kNoArrow && !assign(s, ax, by, queue)) return false;
        const ArrowId xa = from_.comp(x, a), yb = to_.comp(y, b);
        if ((xa == kNoArrow) != (yb == kNoArrow)) return false;
        if (xa != kNoArrow && !assign(s, xa, yb, queue)) return false;
      }
    }
    return true;
  }

  bool recurse(std::size_t k, State& s) {
    if (k == gens_.size()) {
      if (std::find(s.arrows.begin(), s.arrows.end(), kNoArrow) != s.arrows.end()) return false;
      result_ = GroupoidIsomorphism{s.objects, s.arrows};
      return true;
    }
    const ArrowId a = gens_[k];
    if (s.arrows[a] != kNoArrow) return recurse(k + 1, s);
    for (ArrowId b = 0; b < to_.arrow_count(); ++b) {
      if (s.used[b] || !(sig_from_[a] == sig_to_[b])) continue;
      State next = s;
      std::vector<ArrowId> queue;
      if (!assign(next, a, b, queue)) continue;
      if (!propagate(next, std::move(queue))) continue;
      if (recurse(k + 1, next)) return true;
    }
    return false;
  }

  const FiniteGroupoid& from_;
  const FiniteGroupoid& to_;
  std::vector<Signature> sig_from_;
  std::vector<Signature> sig_to_;
  std::vector<ArrowId> gens_;
  GroupoidIsomorphism result_;
};

}  // namespace

std::optional<GroupoidIsomorphism> find_isomorphism(const FiniteGroupoid& from, const FiniteGroupoid& to,
                                                    std::span<const PreservedSubset> preserved,
                                                    std::size_t max_arrows) {
  if (from.arrow_count() > max_arrows || to.arrow_count() > max_arrows)
    throw Error(Errc::limit_exceeded, "isomorphism search is bounded to " + std::to_string(max_arrows) +
                                          " arrows");
  for (const auto& p : preserved)
    if (p.from.size() != from.arrow_count() || p.to.size() != to.arrow_count())
      throw Error(Errc::invalid_argument, "preserved subset mask has the wrong size");
  if (from.arrow_count() != to.arrow_count() || from.object_count() != to.object_count())
    return std::nullopt;
  {
    auto a = signatures(from, preserved, true);
    auto b = signatures(to, preserved, false);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (!(a == b)) return std::nullopt;
  }
  auto iso = Search(from, to, preserved).run();
  if (iso && !is_isomorphism(from, to, *iso, preserved))
    throw Error(Errc::not_found, "isomorphism search produced an invalid map");
  return iso;
}

bool is_isomorphism(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidIsomorphism& iso,
                    std::span<const PreservedSubset> preserved) {
  const std::size_t n = from.arrow_count();
  if (to.arrow_count() != n || iso.arrows.size() != n || iso.objects.size() != from.object_count() ||
      to.object_count() != from.object_count())
    return false;
  std::vector<bool> hit(n, false), hit_obj(to.object_count(), false);
  for (ArrowId a = 0; a < n; ++a) {
    const ArrowId b = iso.arrows[a];
    if (b >= n || hit[b]) return false;
    hit[b] = true;
  }
  for (ObjectId o = 0; o < from.object_count(); ++o) {
    const ObjectId p = iso.objects[o];
    if (p >= to.object_count() || hit_obj[p]) return false;
    hit_obj[p] = true;
    if (iso.arrows[from.idn(o)] != to.idn(p)) return false;
  }
  for (ArrowId a = 0; a < n; ++a) {
    const ArrowId b = iso.arrows[a];
    if (to.src(b) != iso.objects[from.src(a)] || to.tgt(b) != iso.objects[from.tgt(a)]) return false;
    for (const auto& p : preserved)
      if (p.from[a] != p.to[b]) return false;
    for (ArrowId c = 0; c < n; ++c) {
      const ArrowId ac = from.comp(a, c);
      if (ac == kNoArrow) continue;
      if (to.comp(b, iso.arrows[c]) != iso.arrows[ac]) return false;
    }
  }
  return true;
}

}  // namespace nfold
