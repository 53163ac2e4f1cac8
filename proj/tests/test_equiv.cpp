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

#include "nfold/core.hpp"
#include "nfold/equiv.hpp"
#include "support/fixtures.hpp"

using namespace nfold;
using namespace fixtures;

namespace {

bool all_agree(const FactorizationDatum& d) {
  for (const auto& p : gamma_properties(d))
    if (!p.agree()) return false;
  return true;
}

}  // namespace

TEST_CASE("cube counts of Γ") {
  const auto s3_pair = gamma(s3_c2_c3());
  CHECK(s3_pair.tuple.cube_count() == 6);
  CHECK(validate_ntuple(s3_pair.tuple).ok());
  CHECK(s3_pair.tuple.cell_count(CellIndex{}) == 1);

  CHECK(gamma(FactorizationDatum(s3(), {gen(s3(), {"(1 2)"}), gen(s3(), {"(1 3)"})})).tuple.cube_count() == 3);
  CHECK(gamma(c4_c2_c2()).tuple.cube_count() == 8);
  CHECK(gamma(FactorizationDatum(s4(), {gen(s4(), {"(1 2)"}), gen(s4(), {"(1 2 3)"})})).tuple.cube_count() == 6);

  const auto s4_triple =
      gamma(FactorizationDatum(s4(), {gen(s4(), {"(1 2)"}), gen(s4(), {"(1 2 3)"}), gen(s4(), {"(1 2 3 4)"})}));
  CHECK(s4_triple.tuple.cube_count() == 11);
  CHECK(validate_ntuple(s4_triple.tuple).ok());

  const auto c30 = gamma(c30_triple());
  CHECK(c30.tuple.cube_count() == 30);
  CHECK(validate_ntuple(c30.tuple).ok());
}

TEST_CASE("keys of Γ are edge vectors") {
  const auto gc = gamma(s3_c2_c3());
  const CellIndex full = gc.tuple.full_index();
  for (CellId x = 0; x < gc.tuple.cube_count(); ++x) {
    const auto& key = gc.keys[full.bits()][x];
    CHECK(gc.find(full, key) == x);
    // Bottom then right equals left then top.
    CHECK(gc.g->comp(key[0], key[4 + 1]) == gc.g->comp(key[4], key[2]));
  }
}

TEST_CASE("subgroup-level predicates agree with Γ") {
  CHECK(all_agree(s3_c2_c3()));
  CHECK(all_agree(c4_c2_c2()));
  CHECK(all_agree(c30_triple()));
  CHECK(all_agree(FactorizationDatum(s3(), {gen(s3(), {"(1 2)"}), gen(s3(), {"(1 3)"})})));
  CHECK(all_agree(FactorizationDatum(s4(), {gen(s4(), {"(1 2)"}), gen(s4(), {"(1 2 3)"}), gen(s4(), {"(1 2 3 4)"})})));
  const auto c4props = gamma_properties(c4_c2_c2());
  REQUIRE(c4props.size() == 1);
  CHECK(c4props[0].direct_slim);
  CHECK_FALSE(c4props[0].direct_exclusive);
}

TEST_CASE("Λ recovers the factorization") {
  const auto gc = gamma(s3_c2_c3());
  const auto d = lambda(gc.tuple);
  CHECK(d.n() == 2);
  CHECK(d.subs[0].size() == 2);
  CHECK(d.subs[1].size() == 3);
  CHECK(is_exact_factorization(d));
  CHECK(find_isomorphism(*d.g, *s3()).has_value());
  CHECK_THROWS_AS(lambda(gamma(c4_c2_c2()).tuple), Error);
}

TEST_CASE("round trips") {
  for (const auto& d : {s3_c2_c3(), c30_triple()}) {
    const auto a = roundtrip_datum(d);
    CHECK_MESSAGE(a.ok, a.failure);
    CHECK(a.preserved_subsets == d.n());
    const auto t = gamma(d).tuple;
    const auto b = roundtrip_ntuple(t);
    CHECK_MESSAGE(b.ok, b.failure);
    CHECK(is_ntuple_isomorphism(t, gamma(lambda(t)).tuple, b.cell_map));
  }
  const auto twisted = roundtrip_datum(s4_v4_c3_c2());
  CHECK_MESSAGE(twisted.ok, twisted.failure);
  CHECK(twisted.kind == RoundTripCertificate::Kind::twisted_datum);
  CHECK(twisted.preserved_subsets == 3);

  const auto tc = gamma_tilde(s4_v4_c3_c2());
  const auto back = roundtrip_ntuple(tc.tuple, &tc.section);
  CHECK_MESSAGE(back.ok, back.failure);
  CHECK(back.kind == RoundTripCertificate::Kind::twisted_ntuple);

  // A vacant round trip on a tuple that is not vacant fails with a reason.
  const auto refused = roundtrip_ntuple(gamma(c4_c2_c2()).tuple);
  CHECK_FALSE(refused.ok);
  CHECK_FALSE(refused.failure.empty());
}

TEST_CASE("isomorphism checks reject a broken cell map") {
  const auto t = gamma(s3_c2_c3()).tuple;
  std::vector<std::vector<CellId>> id(4);
  for (std::uint32_t bits = 0; bits < 4; ++bits)
    for (CellId c = 0; c < t.cell_count(CellIndex(bits)); ++c) id[bits].push_back(c);
  CHECK(is_ntuple_isomorphism(t, t, id));
  auto swapped = id;
  std::swap(swapped[3][1], swapped[3][2]);
  std::string why;
  CHECK_FALSE(is_ntuple_isomorphism(t, t, swapped, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("Γ̃ preconditions and shape") {
  CHECK_THROWS_AS(gamma_tilde(s3_c2_c3()), Error);
  const auto d = s4_v4_c3_c2();
  const auto small = GroupBundle::generated(s4(), std::vector<ArrowId>{el(s4(), "(1 2)(3 4)")});
  try {
    gamma_tilde(FactorizationDatum(s4(), d.subs, small));
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::precondition);
  }
  const auto tc = gamma_tilde(d);
  CHECK(tc.tuple.cube_count() == 24);
  CHECK(tc.base.tuple.cube_count() == 6);
  CHECK(validate_ntuple(tc.tuple).ok());
  for (CellId x = 0; x < tc.tuple.cube_count(); ++x) CHECK(tc.lookup.at({tc.base_cube[x], tc.fiber[x]}) == x);

  const auto lt = lambda_tilde(tc.tuple, tc.section);
  REQUIRE(lt.bundle);
  CHECK(lt.bundle->size() == 4);
  CHECK(is_semi_factorization(lt));
}
