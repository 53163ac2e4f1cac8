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

// Grid arrangements of n-cubes and their composition.

#include <algorithm>
#include <numeric>
#include <string>

#include "nfold/ntuple.hpp"

namespace nfold {

namespace {

std::size_t volume(std::span<const unsigned> shape) {
  std::size_t v = 1;
  for (unsigned k : shape) v *= k;
  return v;
}

std::vector<std::size_t> strides(std::span<const unsigned> shape) {
  std::vector<std::size_t> s(shape.size());
  std::size_t acc = 1;
  for (std::size_t d = 0; d < shape.size(); ++d) {
    s[d] = acc;
    acc *= shape[d];
  }
  return s;
}

std::vector<unsigned> coordinates(std::size_t offset, std::span<const unsigned> shape) {
  std::vector<unsigned> p(shape.size());
  for (std::size_t d = 0; d < shape.size(); ++d) {
    p[d] = unsigned(offset % shape[d]);
    offset /= shape[d];
  }
  return p;
}

std::string position_string(std::span<const unsigned> p) {
  std::string s = "(";
  for (std::size_t d = 0; d < p.size(); ++d) s += (d ? ", " : "") + std::to_string(p[d]);
  return s + ")";
}

void check_shape(const NTupleGroupoid& t, std::span<const unsigned> shape, std::size_t entries) {
  if (shape.size() != t.dimension())
    throw Error(Errc::invalid_argument, "grid shape must have one extent per direction");
  for (unsigned k : shape)
    if (k == 0) throw Error(Errc::invalid_argument, "grid extents must be positive");
  if (volume(shape) != entries) throw Error(Errc::invalid_argument, "grid entry count does not match its shape");
}

}  // namespace

GridArrangement::GridArrangement(const NTupleGroupoid& t, std::vector<unsigned> shape, std::vector<CellId> entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
  check_shape(t, shape_, entries_.size());
  const CellIndex full = t.full_index();
  const auto st = strides(shape_);
  for (CellId c : entries_)
    if (c >= t.cube_count()) throw Error(Errc::invalid_argument, "grid entry is not a cube id");
  for (std::size_t off = 0; off < entries_.size(); ++off) {
    const auto p = coordinates(off, shape_);
    for (unsigned d = 0; d < shape_.size(); ++d) {
      if (p[d] + 1 >= shape_[d]) continue;
      if (t.face(full, d, Side::target, entries_[off]) != t.face(full, d, Side::source, entries_[off + st[d]]))
        throw Error(Errc::invalid_argument, "adjacency mismatch at position " + position_string(p) +
                                                " in direction " + std::to_string(d));
    }
  }
}

std::size_t GridArrangement::offset(std::span<const unsigned> position) const {
  std::size_t off = 0, stride = 1;
  for (std::size_t d = 0; d < shape_.size(); ++d) {
    off += position[d] * stride;
    stride *= shape_[d];
  }
  return off;
}

CellId compose_grid(const NTupleGroupoid& t, const GridArrangement& g, std::span<const unsigned> fold_order) {
  const unsigned n = t.dimension();
  std::vector<unsigned> order(fold_order.begin(), fold_order.end());
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0u);
  }
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (unsigned d = 0; d < n; ++d)
      if (sorted.size() != n || sorted[d] != d)
        throw Error(Errc::invalid_argument, "fold order must be a permutation of the directions");
  }
  const CellIndex full = t.full_index();
  std::vector<unsigned> shape = g.shape();
  std::vector<CellId> cur = g.entries();
  for (unsigned d : order) {
    if (shape[d] == 1) continue;
    std::vector<unsigned> next_shape = shape;
    next_shape[d] = 1;
    const auto st = strides(shape);
    std::vector<CellId> next(volume(next_shape));
    for (std::size_t off = 0; off < next.size(); ++off) {
      const auto p = coordinates(off, next_shape);
      std::size_t base = 0;
      for (unsigned e = 0; e < n; ++e) base += p[e] * st[e];
      CellId acc = cur[base];
      for (unsigned k = 1; k < shape[d]; ++k) {
        acc = t.compose(full, d, acc, cur[base + k * st[d]]);
        if (acc == kNoCell) throw Error(Errc::precondition, "grid row is not composable in direction " + std::to_string(d));
      }
      next[off] = acc;
    }
    shape = std::move(next_shape);
    cur = std::move(next);
  }
  return cur[0];
}

std::vector<Partition> subdivision_positions(unsigned n) {
  std::vector<Partition> out;
  const CellIndex full = CellIndex::full(n);
  for (std::uint32_t b = 0; b < (1u << n); ++b) out.push_back({full - CellIndex(b), CellIndex(b)});
  return out;
}

std::vector<Partition> lower_neighbours(const Partition& p) {
  std::vector<Partition> out;
  for (unsigned j : p.second.directions()) out.push_back({p.first.with(j), p.second.without(j)});
  return out;
}

CornerIntersections corner_intersections(const Partition& p) { return {p.second, p.first}; }

std::vector<std::vector<CellId>> fill_grid(const NTupleGroupoid& t, std::span<const unsigned> shape,
                                           std::span<const CellId> fixed, std::span<const CellId> candidates,
                                           std::size_t max_solutions) {
  check_shape(t, shape, fixed.size());
  const unsigned n = t.dimension();
  const CellIndex full = t.full_index();
  const auto st = strides(shape);
  const std::size_t total = fixed.size();

  std::vector<CellId> grid(fixed.begin(), fixed.end());
  std::vector<std::vector<unsigned>> coords(total);
  for (std::size_t off = 0; off < total; ++off) coords[off] = coordinates(off, shape);

  // Does cube c at offset off agree with every placed neighbour?
  auto fits = [&](std::size_t off, CellId c) {
    const auto& p = coords[off];
    for (unsigned d = 0; d < n; ++d) {
      if (p[d] > 0) {
        const CellId lo = grid[off - st[d]];
        if (lo != kNoCell && t.face(full, d, Side::target, lo) != t.face(full, d, Side::source, c)) return false;
      }
      if (p[d] + 1 < shape[d]) {
        const CellId hi = grid[off + st[d]];
        if (hi != kNoCell && t.face(full, d, Side::target, c) != t.face(full, d, Side::source, hi)) return false;
      }
    }
    return true;
  };

  std::vector<std::vector<std::vector<CellId>>> by_source(n);
  for (unsigned d = 0; d < n; ++d) {
    by_source[d].assign(t.cell_count(full.without(d)), {});
    for (CellId c : candidates) by_source[d][t.face(full, d, Side::source, c)].push_back(c);
  }

  std::vector<std::vector<CellId>> solutions;
  for (std::size_t off = 0; off < total; ++off)
    if (grid[off] != kNoCell && !fits(off, grid[off])) return solutions;

  std::vector<std::size_t> free;
  for (std::size_t off = 0; off < total; ++off)
    if (grid[off] == kNoCell) free.push_back(off);
  std::stable_sort(free.begin(), free.end(), [&](std::size_t a, std::size_t b) {
    unsigned sa = 0, sb = 0;
    for (unsigned d = 0; d < n; ++d) sa += coords[a][d], sb += coords[b][d];
    return sa < sb;
  });

  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (solutions.size() >= max_solutions) return;
    if (k == free.size()) {
      solutions.push_back(grid);
      return;
    }
    const std::size_t off = free[k];
    std::span<const CellId> pool = candidates;
    for (unsigned d = 0; d < n; ++d)
      if (coords[off][d] > 0 && grid[off - st[d]] != kNoCell) {
        pool = by_source[d][t.face(full, d, Side::target, grid[off - st[d]])];
        break;
      }
    for (CellId c : pool) {
      if (!fits(off, c)) continue;
      grid[off] = c;
      self(self, k + 1);
      grid[off] = kNoCell;
      if (solutions.size() >= max_solutions) return;
    }
  };
  recurse(recurse, 0);
  return solutions;
}

}  // namespace nfold
