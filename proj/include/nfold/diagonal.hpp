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

// Coarse n-tuple groupoid, frame, sections and diagonal composition.

#ifndef NFOLD_DIAGONAL_HPP
#define NFOLD_DIAGONAL_HPP

#include <map>
#include <vector>

#include "nfold/algebra.hpp"
#include "nfold/ntuple.hpp"

namespace nfold {

// Boundary shell of a cube: slot 2*i + side holds its s_i / t_i face.
std::vector<CellId> shell_of(const NTupleGroupoid& t, CellId x);

// Shares every cell of index != [n] with the τ it was built from; its cubes
// are shells, one per shell.
struct CoarseNTuple {
  NTupleGroupoid structure;
  std::vector<std::vector<CellId>> shells;
  std::map<std::vector<CellId>, CellId> lookup;

  // kNoCell if the shell is not a cube here.
  CellId find(const std::vector<CellId>& shell) const;
};

inline constexpr std::size_t kMaxShells = 200000;

// □: every compatible shell of (n-1)-cells of t.
CoarseNTuple coarse(const NTupleGroupoid& t, std::size_t max_shells = kMaxShells);
// ■τ: the shells realized by cubes of t.
CoarseNTuple frame(const NTupleGroupoid& t);
// Π on cubes; kNoCell if the shell is missing from c.
CellId projection(const NTupleGroupoid& t, const CoarseNTuple& c, CellId x);

// Section of Π over the frame: image[frame cube] is a cube of τ.
struct Section {
  std::vector<CellId> image;
  bool functorial = false;
};

// Checks Π ∘ ! = id (throws Errc::invalid_argument otherwise) and records
// whether ! preserves every ∘_i and ι_i.
Section make_section(const NTupleGroupoid& t, const CoarseNTuple& frame, std::vector<CellId> image);
// The section choosing the smallest cube id over each shell.
Section first_section(const NTupleGroupoid& t, const CoarseNTuple& frame);

// x·y for vacant τ: the unique filling of the barycentric grid with x at the
// source corner and y at the sink corner. Throws Errc::precondition when the
// filling is missing or not unique.
CellId diagonal_compose_vacant(const NTupleGroupoid& t, CellId x, CellId y);
// x ·_! y: same grid, fillers taken from the section.
CellId diagonal_compose_section(const NTupleGroupoid& t, const Section& s, CellId x, CellId y);
// Composite of the 3×…×3 grid with x, y, z on the diagonal and section
// fillers elsewhere.
CellId compose_in_thirds(const NTupleGroupoid& t, const Section& s, CellId x, CellId y, CellId z);
// Every composite of the thirds grid over all section fillings (testing aid).
std::vector<CellId> thirds_composites(const NTupleGroupoid& t, const Section& s, CellId x, CellId y, CellId z,
                                      std::size_t max_fillings);
// Right inverse of x under ·_!: !(Y) ·_! u⁻¹, where u = x ·_! !(Y) lies in
// the core bundle and u⁻¹ is its inverse in direction 0.
CellId section_right_inverse(const NTupleGroupoid& t, const CoarseNTuple& frame, const Section& s, CellId x);

// Arrow k of the result is cube k of τ; objects are the objects of τ.
FiniteGroupoid diagonal_groupoid(const NTupleGroupoid& t);
// Refuses sections that are not functorial.
FiniteGroupoid diagonal_groupoid(const NTupleGroupoid& t, const Section& s);

}  // namespace nfold

#endif  // NFOLD_DIAGONAL_HPP
