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

// Finite groupoids, wide subgroupoids, group bundles and the factorization
// predicates built on them.
//
// Composition is diagrammatic throughout: comp(f, g) is defined exactly when
// tgt(f) == src(g) and means "f, then g". For a group given by permutations
// this is the product that applies f first.

#ifndef NFOLD_ALGEBRA_HPP
#define NFOLD_ALGEBRA_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nfold/error.hpp"

namespace nfold {

using ArrowId = std::uint32_t;
using ObjectId = std::uint32_t;

inline constexpr ArrowId kNoArrow = 0xffffffffu;

// Arrow count above which dense composition tables are refused.
inline constexpr std::size_t kMaxTableArrows = 4096;
// Element bound for closing permutation generators.
inline constexpr std::size_t kMaxClosureElements = 100000;

class FiniteGroupoid {
 public:
  // Raw tables. comp is row-major |arrows| x |arrows| with kNoArrow for
  // non-composable pairs. Nothing beyond sizes and id ranges is checked on
  // construction; validate_groupoid reports axiom failures.
  struct Tables {
    std::size_t objects = 0;
    std::vector<ObjectId> src;
    std::vector<ObjectId> tgt;
    std::vector<ArrowId> comp;
    std::vector<ArrowId> inv;
    std::vector<ArrowId> idn;
    std::vector<std::string> names;  // optional, empty or one per arrow
  };

  FiniteGroupoid() = default;
  explicit FiniteGroupoid(Tables tables);

  // Group from a Cayley table; table[i][j] is "i then j".
  static FiniteGroupoid from_cayley(std::vector<std::string> elements,
                                    const std::vector<std::vector<std::size_t>>& table,
                                    std::size_t identity);

  // Group generated by permutations (0-based one-line images) of the given
  // degree. Elements are sorted lexicographically, so the identity is arrow 0;
  // names are 1-based cycle notation.
  static FiniteGroupoid from_permutations(std::size_t degree,
                                          const std::vector<std::vector<std::uint32_t>>& generators,
                                          std::size_t max_elements = kMaxClosureElements);

  std::size_t object_count() const { return t_.objects; }
  std::size_t arrow_count() const { return t_.src.size(); }
  bool is_group() const { return t_.objects == 1; }

  ObjectId src(ArrowId a) const { return t_.src[a]; }
  ObjectId tgt(ArrowId a) const { return t_.tgt[a]; }
  ArrowId comp(ArrowId f, ArrowId g) const { return t_.comp[f * arrow_count() + g]; }
  ArrowId inv(ArrowId a) const { return t_.inv[a]; }
  ArrowId idn(ObjectId o) const { return t_.idn[o]; }
  bool is_identity(ArrowId a) const { return t_.idn[t_.src[a]] == a; }

  // Composite of a path; kNoArrow if some step is not composable.
  ArrowId comp_path(std::span<const ArrowId> path) const;

  std::string name(ArrowId a) const;
  std::optional<ArrowId> find(std::string_view name) const;

  const Tables& tables() const { return t_; }

 private:
  Tables t_;
  std::unordered_map<std::string, ArrowId> by_name_;
};

ValidationReport validate_groupoid(const FiniteGroupoid& g);

// 1-based cycle notation of a 0-based one-line permutation, as used for the
// arrow names of from_permutations; "()" for the identity.
std::string cycle_notation(std::span<const std::uint32_t> one_line);

// Arrow subset of a shared parent, stored both as a sorted list and a mask.
class ArrowSubset {
 public:
  ArrowSubset() = default;
  ArrowSubset(std::shared_ptr<const FiniteGroupoid> parent, std::vector<ArrowId> arrows);

  const FiniteGroupoid& parent() const { return *parent_; }
  const std::shared_ptr<const FiniteGroupoid>& parent_ptr() const { return parent_; }
  const std::vector<ArrowId>& arrows() const { return arrows_; }
  const std::vector<bool>& mask() const { return mask_; }
  std::size_t size() const { return arrows_.size(); }
  bool contains(ArrowId a) const { return a < mask_.size() && mask_[a]; }

  friend bool operator==(const ArrowSubset& a, const ArrowSubset& b) {
    return a.parent_ == b.parent_ && a.arrows_ == b.arrows_;
  }

 private:
  std::shared_ptr<const FiniteGroupoid> parent_;
  std::vector<ArrowId> arrows_;
  std::vector<bool> mask_;
};

// Wide subgroupoid: all identities, closed under comp and inv.
class Subgroupoid : public ArrowSubset {
 public:
  Subgroupoid() = default;
  // Throws Errc::invalid_argument if the subset is not a wide subgroupoid.
  Subgroupoid(std::shared_ptr<const FiniteGroupoid> parent, std::vector<ArrowId> arrows);

  static Subgroupoid generated(std::shared_ptr<const FiniteGroupoid> parent,
                               std::span<const ArrowId> generators);
  static Subgroupoid identities(std::shared_ptr<const FiniteGroupoid> parent);
};

// Wide group bundle: loops only, all identities, closed under comp and inv.
class GroupBundle : public ArrowSubset {
 public:
  GroupBundle() = default;
  GroupBundle(std::shared_ptr<const FiniteGroupoid> parent, std::vector<ArrowId> arrows);

  static GroupBundle generated(std::shared_ptr<const FiniteGroupoid> parent,
                               std::span<const ArrowId> generators);
  static GroupBundle identities(std::shared_ptr<const FiniteGroupoid> parent);

  // Arrows of the fiber over one object.
  std::vector<ArrowId> fiber(ObjectId o) const;
};

// Closure of a generator set under comp and inv, together with every
// identity of the parent.
std::vector<ArrowId> close_arrows(const FiniteGroupoid& g, std::span<const ArrowId> generators);

struct FactorizationDatum {
  std::shared_ptr<const FiniteGroupoid> g;
  std::vector<Subgroupoid> subs;
  std::optional<GroupBundle> bundle;

  FactorizationDatum() = default;
  // Throws if n == 0 or parents differ.
  FactorizationDatum(std::shared_ptr<const FiniteGroupoid> g, std::vector<Subgroupoid> subs,
                     std::optional<GroupBundle> bundle = std::nullopt);

  std::size_t n() const { return subs.size(); }
};

bool is_discrete(const ArrowSubset& h);
Subgroupoid intersect(std::span<const Subgroupoid> hs);

// count[g] = number of composable tuples (h_1, ..., h_k), h_i in factors[i],
// whose composite is g.
std::vector<std::size_t> product_counts(const FiniteGroupoid& g,
                                        std::span<const std::vector<ArrowId>* const> factors);
std::vector<std::size_t> ordered_product_set(std::span<const Subgroupoid> subs);

bool is_exact_factorization(const FactorizationDatum& d);
bool is_permutation_invariant_product(const FactorizationDatum& d);
bool is_abelian(const GroupBundle& a);
bool is_normalized_abelian_bundle(const FactorizationDatum& d);
bool is_semi_factorization(const FactorizationDatum& d);

// Order of a loop (smallest k >= 1 with f^k = id); 0 for non-loops.
std::size_t arrow_order(const FiniteGroupoid& g, ArrowId f);

// Isomorphism of finite groupoids. `preserved` pairs a mask on `from` with a
// mask on `to`; the bijection must carry each onto the other.
struct GroupoidIsomorphism {
  std::vector<ObjectId> objects;
  std::vector<ArrowId> arrows;
};

struct PreservedSubset {
  std::vector<bool> from;
  std::vector<bool> to;
};

inline constexpr std::size_t kMaxIsomorphismArrows = 200;

std::optional<GroupoidIsomorphism> find_isomorphism(const FiniteGroupoid& from,
                                                    const FiniteGroupoid& to,
                                                    std::span<const PreservedSubset> preserved = {},
                                                    std::size_t max_arrows = kMaxIsomorphismArrows);

bool is_isomorphism(const FiniteGroupoid& from, const FiniteGroupoid& to,
                    const GroupoidIsomorphism& iso,
                    std::span<const PreservedSubset> preserved = {});

}  // namespace nfold

#endif  // NFOLD_ALGEBRA_HPP
