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

// Core groupoid, transmutation and the slim / exclusive / maximal predicates.

#ifndef NFOLD_CORE_HPP
#define NFOLD_CORE_HPP

#include <vector>

#include "nfold/algebra.hpp"
#include "nfold/ntuple.hpp"

namespace nfold {

// A cube whose target faces are identities: t_i(x) = ι_î(t_[n] x).
struct CoreElement {
  CellId cube = kNoCell;
  ObjectId source = 0;
  ObjectId sink = 0;
  friend bool operator==(const CoreElement&, const CoreElement&) = default;
};

bool is_core_cube(const NTupleGroupoid& t, CellId x);
// Every face of x is ι_î(o) for one object o.
bool is_bundle_cube(const NTupleGroupoid& t, CellId x);

std::vector<CoreElement> core_elements(const NTupleGroupoid& t);
// Core elements all of whose faces are identities.
std::vector<CoreElement> core_bundle(const NTupleGroupoid& t);

// u·x: barycentric grid with u at the source corner, x at the sink corner and
// ι_A(s_A x) at partition (A, B). Throws Errc::precondition when u is not a
// core cube or t_[n](u) != s_[n](x).
CellId transmute(const NTupleGroupoid& t, CellId u, CellId x);

// The core groupoid; arrow k is the cube cubes[k].
struct CoreGroupoid {
  FiniteGroupoid groupoid;
  std::vector<CellId> cubes;
};
CoreGroupoid core_groupoid(const NTupleGroupoid& t);

// The unique u with u·y = x. Requires t_i(x) = t_i(y) for every i; throws
// Errc::not_found when no transmuter exists and Errc::precondition when
// several do (both signal an invalid τ).
CoreElement transmuter_between(const NTupleGroupoid& t, CellId x, CellId y);

bool is_slim(const NTupleGroupoid& t);
bool is_exclusive(const NTupleGroupoid& t);
bool is_maximal(const NTupleGroupoid& t);
bool is_maximally_exclusive(const NTupleGroupoid& t);
bool is_vacant(const NTupleGroupoid& t);

// The |I|-tuple groupoid of cells with index ⊆ I; directions of I are
// renumbered 0..|I|-1 in increasing order.
NTupleGroupoid boundary_subgroupoid(const NTupleGroupoid& t, CellIndex I);

}  // namespace nfold

#endif  // NFOLD_CORE_HPP
