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

#include "nfold/serialize.hpp"
#include "support/fixtures.hpp"

using namespace nfold;

namespace {

Errc parse_code(const std::string& text) {
  try {
    group_from_json(parse_json(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::not_found;
}

std::vector<std::vector<CellId>> identity_map(const NTupleGroupoid& t) {
  std::vector<std::vector<CellId>> m(std::size_t(1) << t.dimension());
  for (std::uint32_t bits = 0; bits < m.size(); ++bits)
    for (CellId c = 0; c < t.cell_count(CellIndex(bits)); ++c) m[bits].push_back(c);
  return m;
}

}  // namespace

TEST_CASE("group documents") {
  const auto perm = group_from_json(parse_json(R"({"degree": 3, "generators": [[2, 1, 3], [2, 3, 1]]})"));
  CHECK(perm->arrow_count() == 6);
  // 0-based generators describe the same group.
  const auto zero = group_from_json(parse_json(R"({"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})"));
  CHECK(zero->arrow_count() == 6);
  CHECK(zero->find("(1 2 3)").has_value());

  const auto cayley = group_from_json(group_to_json(*perm));
  CHECK(cayley->arrow_count() == 6);
  CHECK(find_isomorphism(*cayley, *perm).has_value());
  CHECK(cayley->name(1) == perm->name(1));

  // A two-object groupoid with one arrow each way.
  const auto pair = group_from_json(parse_json(R"({
    "objects": 2,
    "arrows": [{"name": "1a", "src": 0, "tgt": 0}, {"name": "1b", "src": 1, "tgt": 1},
               {"name": "f", "src": 0, "tgt": 1}, {"name": "g", "src": 1, "tgt": 0}],
    "comp": [[0, null, 2, null], [null, 1, null, 3], [null, 2, null, 0], [3, null, 1, null]],
    "identities": [0, 1],
    "inverses": [0, 1, 3, 2]})"));
  CHECK(validate_groupoid(*pair).ok());
  CHECK(pair->object_count() == 2);
  const auto again = group_from_json(group_to_json(*pair));
  CHECK(again->tables().comp == pair->tables().comp);
}

TEST_CASE("malformed group documents") {
  CHECK(parse_code(R"({"degree": 3, "generators": [[2, 1, 3])") == Errc::parse);
  CHECK(parse_code(R"({"degree": 3, "generators": [[2, 1]]})") == Errc::parse);
  CHECK(parse_code(R"({"degree": "three", "generators": []})") == Errc::parse);
  CHECK(parse_code(R"({"something": 1})") == Errc::parse);
  CHECK(parse_code(R"([1, 2])") == Errc::parse);
}

TEST_CASE("element references and subgroup lists") {
  const auto g = fixtures::s4();
  CHECK(element_from_json(*g, Json(0)) == 0);
  CHECK(element_from_json(*g, Json("(1 2)")) == fixtures::el(g, "(1 2)"));
  CHECK(element_from_json(*g, parse_json("[2, 1, 3, 4]")) == fixtures::el(g, "(1 2)"));
  CHECK_THROWS_AS(element_from_json(*g, Json("(1 5)")), Error);
  CHECK_THROWS_AS(element_from_json(*g, Json(99)), Error);

  const auto spec = subgroups_from_json(g, parse_json(R"js({
    "subgroups": [{"name": "C3", "generators": ["(1 2 3)"]}, {"generators": [[2, 1, 3, 4]]}],
    "bundle": {"name": "V4", "generators": ["(1 2)(3 4)", "(1 3)(2 4)"]}})js"));
  CHECK(spec.names == std::vector<std::string>{"C3", "H2"});
  CHECK(spec.subs[0].size() == 3);
  CHECK(spec.subs[1].size() == 2);
  REQUIRE(spec.bundle);
  CHECK(spec.bundle_name == "V4");
  CHECK(is_semi_factorization(spec.datum(g)));

  const auto bare = subgroups_from_json(g, parse_json(R"js([{"elements": ["()", "(1 2)"]}])js"));
  CHECK(bare.subs[0].size() == 2);
  CHECK_THROWS_AS(subgroups_from_json(g, parse_json(R"js([{"elements": ["(1 2)"]}])js")), Error);
}

TEST_CASE("n-tuple documents round trip") {
  const auto t = gamma(fixtures::c30_triple()).tuple;
  const auto loaded = ntuple_from_json(parse_json(ntuple_to_json(t).dump()));
  CHECK(loaded.tuple.dimension() == 3);
  CHECK_FALSE(loaded.section.has_value());
  CHECK(is_ntuple_isomorphism(t, loaded.tuple, identity_map(t)));

  const auto tc = gamma_tilde(fixtures::s4_v4_c3_c2());
  const auto doc = ntuple_to_json(tc.tuple, &tc.frame, &tc.section);
  CHECK(doc["format"] == kNTupleFormat);
  const auto twisted = ntuple_from_json(doc);
  REQUIRE(twisted.section.has_value());
  CHECK(twisted.section->functorial);
  CHECK(twisted.section->image == tc.section.image);

  auto broken = doc;
  broken["cells"][3]["faces"][0]["source"][0] = 999;
  CHECK_THROWS_AS(ntuple_from_json(broken), Error);
  auto missing = doc;
  missing["cells"].erase(1);
  CHECK_THROWS_AS(ntuple_from_json(missing), Error);
}

TEST_CASE("reports") {
  const auto t = gamma(fixtures::c4_c2_c2()).tuple;
  const auto core = core_report(t);
  CHECK(core["core_count"] == 2);
  CHECK(core["bundle_count"] == 1);
  CHECK(core["predicates"]["slim"] == true);
  CHECK(core["predicates"]["exclusive"] == false);
  CHECK(core["witnesses"]["core_cubes_outside_bundle"].size() == 1);

  const auto fr = factor_report(fixtures::s3_c2_c3(), {"C2", "C3"});
  CHECK(fr["exact"] == true);
  CHECK(fr["permutation_invariant"] == true);
  CHECK(fr["subgroups"][1]["name"] == "C3");

  const auto semi = factor_report(fixtures::s4_v4_c3_c2(), {});
  CHECK(semi["exact"] == false);
  CHECK(semi["bundle"]["semi_factorization"] == true);

  const auto cert = certificate_to_json(roundtrip_datum(fixtures::s3_c2_c3()));
  CHECK(cert["ok"] == true);
  CHECK(cert["kind"] == "datum");
  CHECK(cert["arrows"].size() == 6);
}

TEST_CASE("matrices") {
  const auto m = matrix_from_json(parse_json("[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"));
  CHECK(m == lorentz::Mat4::Identity());
  CHECK(matrix_from_json(Json{{"matrix", matrix_to_json(m)}}) == m);
  CHECK_THROWS_AS(matrix_from_json(parse_json("[[1,0,0],[0,1,0],[0,0,1]]")), Error);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"([[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,"x"]])")), Error);
}
