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
#include <set>

#include "nfold/equiv.hpp"
#include "nfold/ntuple.hpp"
#include "support/fixtures.hpp"

using namespace nfold;

namespace {

const NTupleGroupoid& s3_tuple() {
  static const NTupleGroupoid t = gamma(fixtures::s3_c2_c3()).tuple;
  return t;
}

const NTupleGroupoid& c30_tuple() {
  static const NTupleGroupoid t = gamma(fixtures::c30_triple()).tuple;
  return t;
}

}  // namespace

TEST_CASE("cell indices") {
  const CellIndex j(0b101);
  CHECK(j.size() == 2);
  CHECK(j.contains(0));
  CHECK_FALSE(j.contains(1));
  CHECK(j.directions() == std::vector<unsigned>{0, 2});
  CHECK(j.complement(3) == CellIndex(0b010));
  CHECK(j.without(2) == CellIndex::single(0));
  CHECK(CellIndex::single(0).subset_of(j));
}

TEST_CASE("trivial n-tuple groupoid") {
  const auto t = trivial_ntuple(3, 2);
  CHECK(validate_ntuple(t).ok());
  for (std::uint32_t bits = 0; bits < 8; ++bits) CHECK(t.cell_count(CellIndex(bits)) == 2);
  CHECK(t.is_identity_cell(t.full_index(), 1));
  CHECK(t.compose(t.full_index(), 1, 0, 0) == 0);
  CHECK(t.compose(t.full_index(), 1, 0, 1) == kNoCell);
}

TEST_CASE("builder range checks") {
  NTupleBuilder b(1);
  b.set_cell_count(CellIndex{}, 1);
  b.set_cell_count(CellIndex::single(0), 1);
  b.set_face(CellIndex::single(0), 0, Side::source, 0, 0);
  b.set_face(CellIndex::single(0), 0, Side::target, 0, 5);
  b.set_identity(CellIndex{}, 0, 0, 0);
  CHECK_THROWS_AS(std::move(b).build(), Error);
  CHECK_THROWS_AS(NTupleBuilder(kMaxDimension + 1), Error);
}

TEST_CASE("faces, identities and inverses in Γ(S3)") {
  const auto& t = s3_tuple();
  REQUIRE(validate_ntuple(t).ok());
  const CellIndex full = t.full_index();
  CHECK(t.object_count() == 1);
  CHECK(t.cell_count(CellIndex::single(0)) == 2);
  CHECK(t.cell_count(CellIndex::single(1)) == 3);
  for (CellId x = 0; x < t.cube_count(); ++x) {
    for (unsigned i = 0; i < 2; ++i) {
      const CellId inv = t.inverse(full, i, x);
      REQUIRE(inv != kNoCell);
      const CellId unit = t.identity(full.without(i), i, t.face(full, i, Side::source, x));
      CHECK(t.compose(full, i, x, inv) == unit);
    }
    CHECK(t.skeleton(full, x).size() == 2 * 4);
    CHECK(t.source_object(full, x) == 0);
  }
  // Grouping by face covers every cube exactly once.
  std::size_t seen = 0;
  for (const auto& group : t.cells_by_face(full, 0, Side::source)) seen += group.size();
  CHECK(seen == t.cube_count());
}

TEST_CASE("grid arrangements") {
  const auto& t = s3_tuple();
  const CellIndex full = t.full_index();
  CellId a = kNoCell, b = kNoCell;
  for (const auto& c : t.composites(full, 0))
    if (!t.is_identity_cell(full, c.a) && !t.is_identity_cell(full, c.b)) {
      a = c.a;
      b = c.b;
      break;
    }
  REQUIRE(a != kNoCell);
  const GridArrangement row(t, {2, 1}, {a, b});
  CHECK(compose_grid(t, row) == t.compose(full, 0, a, b));
  const GridArrangement single(t, {1, 1}, {a});
  CHECK(compose_grid(t, single) == a);

  // A cube whose target is not the next source breaks the arrangement.
  CellId c = kNoCell;
  for (CellId x = 0; x < t.cube_count(); ++x)
    if (t.compose(full, 0, a, x) == kNoCell) c = x;
  REQUIRE(c != kNoCell);
  try {
    GridArrangement bad(t, {2, 1}, {a, c});
    FAIL("expected an adjacency error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
    CHECK(std::string(e.what()).find("adjacency") != std::string::npos);
  }
  const std::vector<unsigned> not_a_permutation{0, 0};
  CHECK_THROWS_AS(compose_grid(t, row, not_a_permutation), Error);
}

TEST_CASE("barycentric bookkeeping") {
  const auto ps = subdivision_positions(3);
  REQUIRE(ps.size() == 8);
  for (std::uint32_t bits = 0; bits < 8; ++bits) {
    CHECK(ps[bits].second == CellIndex(bits));
    CHECK(ps[bits].first == CellIndex(bits).complement(3));
    CHECK(ps[bits].depth() == CellIndex(bits).size());
  }
  const auto lower = lower_neighbours(ps[0b011]);
  CHECK(lower.size() == 2);
  for (const auto& p : lower) CHECK(p.depth() == 1);
  CHECK(lower_neighbours(ps[0]).empty());
  const auto ci = corner_intersections(ps[0b001]);
  CHECK(ci.source_face_dirs == CellIndex(0b001));
  CHECK(ci.sink_face_dirs == CellIndex(0b110));
}

TEST_CASE("grid filling has a unique solution in a vacant tuple") {
  const auto& t = c30_tuple();
  const std::vector<unsigned> shape{2, 2, 2};
  std::vector<CellId> all(t.cube_count());
  for (CellId x = 0; x < all.size(); ++x) all[x] = x;
  for (CellId x = 0; x < t.cube_count(); x += 7)
    for (CellId y = 0; y < t.cube_count(); y += 5) {
      if (t.sink_object(t.full_index(), x) != t.source_object(t.full_index(), y)) continue;
      std::vector<CellId> fixed(8, kNoCell);
      fixed[0] = x;
      fixed[7] = y;
      const auto sols = fill_grid(t, shape, fixed, all, 2);
      CHECK(sols.size() == 1);
    }
}

TEST_CASE("composition mutations are detected") {
  const auto& t = s3_tuple();
  const CellIndex full = t.full_index();
  const auto comps = t.composites(full, 1);
  REQUIRE(comps.size() > 3);
  const auto& e = comps[3];
  {
    auto b = NTupleBuilder::from(t);
    b.set_composite(full, 1, e.a, e.b, (e.c + 1) % CellId(t.cube_count()));
    CHECK_FALSE(validate_ntuple(std::move(b).build()).ok());
  }
  {
    auto b = NTupleBuilder::from(t);
    b.erase_composite(full, 1, e.a, e.b);
    CHECK_FALSE(validate_ntuple(std::move(b).build()).ok());
  }
}
