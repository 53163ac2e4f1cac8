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

// Bounded brute-force search for matched n-tuples of subgroups.

#ifndef NFOLD_SEARCH_HPP
#define NFOLD_SEARCH_HPP

#include <memory>
#include <vector>

#include "nfold/algebra.hpp"

namespace nfold {

inline constexpr std::size_t kMaxSearchOrder = 200;

// All subgroups of a group: cyclic subgroups closed under pairwise joins.
// Sorted by size, then by arrow list. Throws Errc::precondition for
// groupoids with several objects and Errc::limit_exceeded above max_order.
std::vector<std::vector<ArrowId>> enumerate_subgroups(const FiniteGroupoid& g, std::size_t max_order = kMaxSearchOrder);

bool is_cyclic(const FiniteGroupoid& g, const std::vector<ArrowId>& subgroup);

struct MatchedSearchOptions {
  unsigned n = 2;
  bool up_to_conjugacy = false;
  bool cyclic_only = false;
  std::size_t max_order = kMaxSearchOrder;
};

struct MatchedSearchResult {
  std::vector<std::vector<ArrowId>> subgroups;
  // Indices into subgroups; each tuple is exact and permutation invariant.
  std::vector<std::vector<std::size_t>> tuples;
  std::size_t candidates = 0;  // tuples whose order product equals |G|
};

MatchedSearchResult search_matched(std::shared_ptr<const FiniteGroupoid> g, const MatchedSearchOptions& opt);

}  // namespace nfold

#endif  // NFOLD_SEARCH_HPP
