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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "nfold/algebra.hpp"
#include "nfold/search.hpp"
#include "support/fixtures.hpp"

using namespace nfold;
using namespace fixtures;

TEST_CASE("permutation groups close and name their elements") {
  CHECK(s3()->arrow_count() == 6);
  CHECK(s4()->arrow_count() == 24);
  CHECK(c30()->arrow_count() == 30);
  CHECK(s3()->name(0) == "()");
  CHECK(s3()->is_identity(0));
  CHECK(validate_groupoid(*s3()).ok());
  CHECK(validate_groupoid(*s4()).ok());
  const ArrowId r = el(s3(), "(1 2 3)");
  CHECK(arrow_order(*s3(), r) == 3);
  CHECK(s3()->comp_path(std::vector<ArrowId>{r, r, r}) == 0);
  CHECK(s3()->inv(r) == el(s3(), "(1 3 2)"));
  // (1 2) then (1 2 3): 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1.
  CHECK(s3()->comp(el(s3(), "(1 2)"), r) == el(s3(), "(1 3)"));
}

TEST_CASE("cycle notation") {
  const std::vector<std::uint32_t> id{0, 1, 2}, swap{1, 0, 2}, three{1, 2, 0, 4, 3};
  CHECK(cycle_notation(id) == "()");
  CHECK(cycle_notation(swap) == "(1 2)");
  CHECK(cycle_notation(three) == "(1 2 3)(4 5)");
}

TEST_CASE("Cayley tables are checked") {
  const auto c2 = FiniteGroupoid::from_cayley({"e", "s"}, {{0, 1}, {1, 0}}, 0);
  CHECK(validate_groupoid(c2).ok());
  CHECK_THROWS_AS(FiniteGroupoid::from_cayley({"e", "s"}, {{0, 1}}, 0), Error);
  CHECK_THROWS_AS(FiniteGroupoid::from_cayley({"e", "s"}, {{0, 1}, {1, 2}}, 0), Error);
}

TEST_CASE("a corrupted table is reported") {
  auto t = s3()->tables();
  t.comp[1 * 6 + 2] = t.comp[1 * 6 + 3];
  const FiniteGroupoid bad(std::move(t));
  const auto r = validate_groupoid(bad);
  CHECK_FALSE(r.ok());
  CHECK(r.total > 0);
  CHECK_FALSE(r.violations.empty());
}

TEST_CASE("subgroupoids and bundles") {
  const auto c3 = gen(s3(), {"(1 2 3)"});
  CHECK(c3.size() == 3);
  CHECK(c3.contains(0));
  CHECK_FALSE(is_discrete(c3));
  CHECK(is_discrete(Subgroupoid::identities(s3())));
  CHECK_THROWS_AS(Subgroupoid(s3(), {0, el(s3(), "(1 2)"), el(s3(), "(1 3)")}), Error);
  CHECK(v4().size() == 4);
  CHECK(is_abelian(v4()));
  CHECK(v4().fiber(0).size() == 4);
}

TEST_CASE("exact factorizations") {
  const auto d = s3_c2_c3();
  CHECK(is_exact_factorization(d));
  CHECK(is_permutation_invariant_product(d));

  const FactorizationDatum two_swaps(s3(), {gen(s3(), {"(1 2)"}), gen(s3(), {"(1 3)"})});
  CHECK_FALSE(is_exact_factorization(two_swaps));
  CHECK_FALSE(is_permutation_invariant_product(two_swaps));
  const auto counts = ordered_product_set(two_swaps.subs);
  CHECK(std::count(counts.begin(), counts.end(), 0u) == 2);

  CHECK(is_exact_factorization(c30_triple()));
  CHECK(is_permutation_invariant_product(c30_triple()));
  CHECK_FALSE(is_exact_factorization(c4_c2_c2()));

  const FactorizationDatum s4_triple(s4(), {gen(s4(), {"(1 2)"}), gen(s4(), {"(1 2 3)"}), gen(s4(), {"(1 2 3 4)"})});
  CHECK(is_exact_factorization(s4_triple));
  CHECK_FALSE(is_permutation_invariant_product(s4_triple));
}

TEST_CASE("product counts over V4") {
  const auto v = Subgroupoid(s4(), v4().arrows());
  const auto d = gen(s4(), {"(1 2)(3 4)"});
  const FactorizationDatum dd(s4(), {d, d});
  auto counts = ordered_product_set(dd.subs);
  std::vector<std::size_t> in_v4;
  for (ArrowId a : v.arrows()) in_v4.push_back(counts[a]);
  std::sort(in_v4.begin(), in_v4.end());
  CHECK(in_v4 == std::vector<std::size_t>{0, 0, 2, 2});
}

TEST_CASE("semi-factorization with an abelian bundle") {
  const auto d = s4_v4_c3_c2();
  CHECK(is_normalized_abelian_bundle(d));
  CHECK(is_semi_factorization(d));
  // ⟨(1 2)(3 4)⟩ is not normal in S4.
  const auto small = GroupBundle::generated(s4(), std::vector<ArrowId>{el(s4(), "(1 2)(3 4)")});
  const FactorizationDatum bad(s4(), d.subs, small);
  CHECK_FALSE(is_normalized_abelian_bundle(bad));
  // V4 C3 C3 does not cover S4.
  const FactorizationDatum twice(s4(), {gen(s4(), {"(1 2 3)"}), gen(s4(), {"(1 2 3)"})}, v4());
  CHECK_FALSE(is_semi_factorization(twice));
}

TEST_CASE("isomorphism search") {
  // S3 again, presented by its Cayley table under a shuffled labelling.
  const std::vector<std::size_t> relabel{3, 0, 5, 1, 4, 2};
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  std::vector<std::string> names(6);
  for (ArrowId a = 0; a < 6; ++a) {
    names[relabel[a]] = "g" + std::to_string(a);
    for (ArrowId b = 0; b < 6; ++b) table[relabel[a]][relabel[b]] = relabel[s3()->comp(a, b)];
  }
  const auto shuffled = FiniteGroupoid::from_cayley(names, table, relabel[0]);
  const auto iso = find_isomorphism(*s3(), shuffled);
  REQUIRE(iso);
  CHECK(is_isomorphism(*s3(), shuffled, *iso));

  const auto z6 = FiniteGroupoid::from_permutations(6, {{1, 2, 3, 4, 5, 0}});
  CHECK_FALSE(find_isomorphism(*s3(), z6));

  const auto vgroup = FiniteGroupoid::from_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  CHECK_FALSE(find_isomorphism(*c4(), vgroup));
}

TEST_CASE("subgroup enumeration") {
  CHECK(enumerate_subgroups(*s3()).size() == 6);
  CHECK(enumerate_subgroups(*s4()).size() == 30);
  CHECK(enumerate_subgroups(*c30()).size() == 8);
  CHECK_THROWS_AS(enumerate_subgroups(*s4(), 10), Error);
}

TEST_CASE("matched pair and triple search") {
  MatchedSearchOptions opt;
  opt.n = 2;
  auto r = search_matched(s3(), opt);
  CHECK(r.tuples.size() == 8);
  // ⟨(1 2)⟩, ⟨(1 2 3)⟩ is among them.
  const auto c2 = gen(s3(), {"(1 2)"}).arrows(), c3 = gen(s3(), {"(1 2 3)"}).arrows();
  CHECK(std::any_of(r.tuples.begin(), r.tuples.end(),
                    [&](const auto& t) { return r.subgroups[t[0]] == c2 && r.subgroups[t[1]] == c3; }));

  const auto c2group =
      std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_cayley({"e", "s"}, {{0, 1}, {1, 0}}, 0));
  r = search_matched(c2group, opt);
  REQUIRE(r.tuples.size() == 2);
  CHECK(r.subgroups[r.tuples[0][0]].size() * r.subgroups[r.tuples[0][1]].size() == 2);

  CHECK(search_matched(s4(), opt).tuples.size() == 70);

  opt.n = 3;
  opt.cyclic_only = true;
  r = search_matched(s4(), opt);
  CHECK(r.tuples.size() == 72);
  for (const auto& t : r.tuples) {
    std::vector<std::size_t> orders;
    for (auto k : t) orders.push_back(r.subgroups[k].size());
    std::sort(orders.begin(), orders.end());
    CHECK(orders == std::vector<std::size_t>{2, 3, 4});
  }
  // Exactness alone admits many more ordered triples.
  std::vector<std::vector<ArrowId>> cyclic;
  for (auto& h : enumerate_subgroups(*s4()))
    if (is_cyclic(*s4(), h) && h.size() > 1) cyclic.push_back(h);
  std::size_t exact = 0;
  for (const auto& a : cyclic)
    for (const auto& b : cyclic)
      for (const auto& c : cyclic) {
        std::vector<std::size_t> orders{a.size(), b.size(), c.size()};
        std::sort(orders.begin(), orders.end());
        if (orders != std::vector<std::size_t>{2, 3, 4}) continue;
        exact += is_exact_factorization(
            FactorizationDatum(s4(), {Subgroupoid(s4(), a), Subgroupoid(s4(), b), Subgroupoid(s4(), c)}));
      }
  CHECK(exact == 312);

  opt.up_to_conjugacy = true;
  const auto classes = search_matched(s4(), opt);
  CHECK(!classes.tuples.empty());
  CHECK(classes.tuples.size() < 72);
}
