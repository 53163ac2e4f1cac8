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

// Concrete finite n-tuple groupoids.
//
// Cells are interned per index I ⊆ {0, ..., n-1}. Faces s_i/t_i, identities
// ι_i and compositions ∘_i are stored as lookup tables for single directions;
// iterated faces and identities are derived. Directions are 0-based.

#ifndef NFOLD_NTUPLE_HPP
#define NFOLD_NTUPLE_HPP

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "nfold/algebra.hpp"

namespace nfold {

using CellId = std::uint32_t;
inline constexpr CellId kNoCell = 0xffffffffu;

inline constexpr unsigned kMaxDimension = 6;

// Subset of directions, bit i = direction i.
class CellIndex {
 public:
  constexpr CellIndex() = default;
  constexpr explicit CellIndex(std::uint32_t bits) : bits_(bits) {}

  static constexpr CellIndex full(unsigned n) { return CellIndex((1u << n) - 1u); }
  static constexpr CellIndex single(unsigned i) { return CellIndex(1u << i); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(unsigned i) const { return (bits_ >> i) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned size() const { return unsigned(std::popcount(bits_)); }
  constexpr CellIndex with(unsigned i) const { return CellIndex(bits_ | (1u << i)); }
  constexpr CellIndex without(unsigned i) const { return CellIndex(bits_ & ~(1u << i)); }
  constexpr bool subset_of(CellIndex o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr CellIndex complement(unsigned n) const { return CellIndex(full(n).bits_ & ~bits_); }

  std::vector<unsigned> directions() const {
    std::vector<unsigned> d;
    for (unsigned i = 0; i < 32; ++i)
      if (contains(i)) d.push_back(i);
    return d;
  }

  friend constexpr CellIndex operator|(CellIndex a, CellIndex b) { return CellIndex(a.bits_ | b.bits_); }
  friend constexpr CellIndex operator&(CellIndex a, CellIndex b) { return CellIndex(a.bits_ & b.bits_); }
  friend constexpr CellIndex operator-(CellIndex a, CellIndex b) { return CellIndex(a.bits_ & ~b.bits_); }
  friend constexpr auto operator<=>(CellIndex, CellIndex) = default;

 private:
  std::uint32_t bits_ = 0;
};

enum class Side : std::uint8_t { source, target };

class NTupleBuilder;

class NTupleGroupoid {
 public:
  NTupleGroupoid() = default;

  unsigned dimension() const { return n_; }
  CellIndex full_index() const { return CellIndex::full(n_); }

  std::size_t cell_count(CellIndex j) const { return cells_[j.bits()].count; }
  std::size_t object_count() const { return cell_count(CellIndex{}); }
  std::size_t cube_count() const { return cell_count(full_index()); }

  // Single-direction structure. i must be in j for faces and compositions,
  // and not in j for identities.
  CellId face(CellIndex j, unsigned i, Side side, CellId c) const {
    const auto& t = cells_[j.bits()];
    return side == Side::source ? t.src[i][c] : t.tgt[i][c];
  }
  CellId identity(CellIndex j, unsigned i, CellId c) const { return cells_[j.bits()].idn[i][c]; }
  // kNoCell when the pair is not composable.
  CellId compose(CellIndex j, unsigned i, CellId a, CellId b) const;

  // Iterated faces: s over `sources`, t over `targets` (disjoint, ⊆ j).
  CellId face(CellIndex j, CellId c, CellIndex sources, CellIndex targets) const;
  CellId face(CellIndex j, CellId c, CellIndex dirs, Side side) const {
    return side == Side::source ? face(j, c, dirs, CellIndex{}) : face(j, c, CellIndex{}, dirs);
  }
  // Iterated identity ι_dirs on a cell of index j (dirs ∩ j = ∅).
  CellId identity(CellIndex j, CellId c, CellIndex dirs) const;
  CellId object_identity(ObjectId o, CellIndex dirs) const { return identity(CellIndex{}, o, dirs); }

  ObjectId source_object(CellIndex j, CellId c) const { return face(j, c, j, Side::source); }
  ObjectId sink_object(CellIndex j, CellId c) const { return face(j, c, j, Side::target); }
  bool is_identity_cell(CellIndex j, CellId c) const {
    return identity(CellIndex{}, source_object(j, c), j) == c;
  }

  // Inverse in direction i, found through the composition table.
  CellId inverse(CellIndex j, unsigned i, CellId c) const;
  // Combined inverse over a set of directions, applied in ascending order.
  CellId inverse(CellIndex j, CellId c, CellIndex dirs) const;

  // The 1-skeleton of a cell of index j: for local direction p (position of
  // the direction inside j) and local vertex mask v without bit p, entry
  // p * 2^k + v is the edge cell. Unused slots hold kNoCell. For j = ∅ the
  // skeleton is the single object.
  std::vector<CellId> skeleton(CellIndex j, CellId c) const;

  // Cells of index j grouped by their face in direction i.
  const std::vector<std::vector<CellId>>& cells_by_face(CellIndex j, unsigned i, Side side) const;

  // All composable pairs (a, b, a ∘_i b) stored for index j.
  struct Composite {
    CellId a, b, c;
  };
  std::vector<Composite> composites(CellIndex j, unsigned i) const;

 private:
  friend class NTupleBuilder;

  struct CellTable {
    std::size_t count = 0;
    std::array<std::vector<CellId>, kMaxDimension> src;
    std::array<std::vector<CellId>, kMaxDimension> tgt;
    std::array<std::vector<CellId>, kMaxDimension> idn;
    std::array<std::unordered_map<std::uint64_t, CellId>, kMaxDimension> comp;
    // [side][direction][face cell] -> cells, filled by NTupleBuilder::build
    std::array<std::array<std::vector<std::vector<CellId>>, kMaxDimension>, 2> by_face;
  };

  unsigned n_ = 0;
  std::vector<CellTable> cells_;
};

// Mutable construction surface. build() checks only table shapes and id
// ranges; validate_ntuple checks the axioms.
class NTupleBuilder {
 public:
  explicit NTupleBuilder(unsigned n);
  static NTupleBuilder from(const NTupleGroupoid& t);

  unsigned dimension() const { return t_.n_; }
  void set_cell_count(CellIndex j, std::size_t count);
  std::size_t cell_count(CellIndex j) const { return t_.cells_[j.bits()].count; }
  void set_face(CellIndex j, unsigned i, Side side, CellId c, CellId f);
  void set_identity(CellIndex j, unsigned i, CellId c, CellId id);
  void set_composite(CellIndex j, unsigned i, CellId a, CellId b, CellId c);
  void erase_composite(CellIndex j, unsigned i, CellId a, CellId b);

  NTupleGroupoid build() &&;

 private:
  NTupleGroupoid t_;
};

ValidationReport validate_ntuple(const NTupleGroupoid& t);

// The trivial n-tuple groupoid on the given number of objects: every cell is
// an identity.
NTupleGroupoid trivial_ntuple(unsigned n, std::size_t objects);

// Rectangular arrangement of n-cubes, direction 0 varying fastest.
class GridArrangement {
 public:
  // Throws Errc::invalid_argument naming the first position whose face does
  // not match its successor.
  GridArrangement(const NTupleGroupoid& t, std::vector<unsigned> shape, std::vector<CellId> entries);

  const std::vector<unsigned>& shape() const { return shape_; }
  const std::vector<CellId>& entries() const { return entries_; }
  CellId at(std::span<const unsigned> position) const { return entries_[offset(position)]; }
  std::size_t offset(std::span<const unsigned> position) const;

 private:
  std::vector<unsigned> shape_;
  std::vector<CellId> entries_;
};

// Fold the grid one direction at a time; default order is 0, 1, ..., n-1.
CellId compose_grid(const NTupleGroupoid& t, const GridArrangement& g,
                    std::span<const unsigned> fold_order = {});

// Position of a sub-cube in the barycentric subdivision: directions where it
// sits in the first half (A) and the second half (B).
struct Partition {
  CellIndex first;   // A
  CellIndex second;  // B
  unsigned depth() const { return second.size(); }
  friend bool operator==(const Partition&, const Partition&) = default;
};

// All 2^n partitions, ordered by the bitmask of B; the grid position of a
// partition has coordinate 1 in direction i iff i ∈ B.
std::vector<Partition> subdivision_positions(unsigned n);

// Barycentric positions of depth depth(p) - 1 sharing an (n-1)-face with p.
std::vector<Partition> lower_neighbours(const Partition& p);

// Directions of the iterated faces the sub-cube shares with the source
// corner (s_B, a cell of index A) and the sink corner (t_A, index B).
struct CornerIntersections {
  CellIndex source_face_dirs;  // B
  CellIndex sink_face_dirs;    // A
};
CornerIntersections corner_intersections(const Partition& p);

// Exhaustive filling of a grid. Positions with a fixed cube are kept; free
// positions (kNoCell) take candidates in the given order. Returns up to
// max_solutions complete fillings.
std::vector<std::vector<CellId>> fill_grid(const NTupleGroupoid& t, std::span<const unsigned> shape,
                                           std::span<const CellId> fixed, std::span<const CellId> candidates,
                                           std::size_t max_solutions);

}  // namespace nfold

#endif  // NFOLD_NTUPLE_HPP
