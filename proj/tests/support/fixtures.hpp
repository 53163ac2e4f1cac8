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

// Shared groups and factorization data for the tests.

#ifndef NFOLD_TESTS_FIXTURES_HPP
#define NFOLD_TESTS_FIXTURES_HPP

#include <memory>
#include <string>
#include <vector>

#include "nfold/algebra.hpp"

namespace fixtures {

using nfold::ArrowId;
using nfold::FactorizationDatum;
using nfold::FiniteGroupoid;
using nfold::GroupBundle;
using nfold::Subgroupoid;
using GroupPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupPtr s3() {
  static const GroupPtr g =
      std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_permutations(3, {{1, 0, 2}, {1, 2, 0}}));
  return g;
}

inline GroupPtr s4() {
  static const GroupPtr g =
      std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}));
  return g;
}

// C2 × C3 × C5 acting on {1..10}.
inline GroupPtr c30() {
  static const GroupPtr g = std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_permutations(
      10, {{1, 0, 2, 3, 4, 5, 6, 7, 8, 9}, {0, 1, 3, 4, 2, 5, 6, 7, 8, 9}, {0, 1, 2, 3, 4, 6, 7, 8, 9, 5}}));
  return g;
}

inline GroupPtr c4() {
  static const GroupPtr g = std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_permutations(4, {{1, 2, 3, 0}}));
  return g;
}

inline ArrowId el(const GroupPtr& g, const std::string& name) { return g->find(name).value(); }

inline Subgroupoid gen(const GroupPtr& g, std::initializer_list<const char*> names) {
  std::vector<ArrowId> gens;
  for (const char* n : names) gens.push_back(el(g, n));
  return Subgroupoid::generated(g, gens);
}

// (S3; ⟨(1 2)⟩, ⟨(1 2 3)⟩)
inline FactorizationDatum s3_c2_c3() { return FactorizationDatum(s3(), {gen(s3(), {"(1 2)"}), gen(s3(), {"(1 2 3)"})}); }

// (C30; C2, C3, C5)
inline FactorizationDatum c30_triple() {
  return FactorizationDatum(c30(), {gen(c30(), {"(1 2)"}), gen(c30(), {"(3 4 5)"}), gen(c30(), {"(6 7 8 9 10)"})});
}

// (C4; C2, C2), the same order-two subgroup twice.
inline FactorizationDatum c4_c2_c2() {
  const auto h = gen(c4(), {"(1 3)(2 4)"});
  return FactorizationDatum(c4(), {h, h});
}

inline GroupBundle v4() {
  return GroupBundle::generated(s4(), std::vector<ArrowId>{el(s4(), "(1 2)(3 4)"), el(s4(), "(1 3)(2 4)")});
}

// (S4, V4; ⟨(1 2 3)⟩, ⟨(1 2)⟩)
inline FactorizationDatum s4_v4_c3_c2() {
  return FactorizationDatum(s4(), {gen(s4(), {"(1 2 3)"}), gen(s4(), {"(1 2)"})}, v4());
}

}  // namespace fixtures

#endif  // NFOLD_TESTS_FIXTURES_HPP
