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

#include "nfold/search.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nfold {

namespace {

void require_group(const FiniteGroupoid& g, std::size_t max_order) {
  if (!g.is_group()) throw Error(Errc::precondition, "subgroup search needs a group");
  if (g.arrow_count() > max_order)
    throw Error(Errc::limit_exceeded, "group order " + std::to_string(g.arrow_count()) + " exceeds the search bound " +
                                          std::to_string(max_order));
}

}  // namespace

std::vector<std::vector<ArrowId>> enumerate_subgroups(const FiniteGroupoid& g, std::size_t max_order) {
  require_group(g, max_order);
  std::set<std::vector<ArrowId>> found;
  std::vector<ArrowId> cyclic_gens;
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    auto c = close_arrows(g, std::span(&a, 1));
    std::sort(c.begin(), c.end());
    if (found.insert(c).second) cyclic_gens.push_back(a);
  }
  // Every subgroup is a join of cyclic ones, so joining with a cyclic
  // generator until nothing new appears reaches all of them.
  std::vector<std::vector<ArrowId>> queue(found.begin(), found.end());
  while (!queue.empty()) {
    auto h = std::move(queue.back());
    queue.pop_back();
    for (ArrowId c : cyclic_gens) {
      if (std::binary_search(h.begin(), h.end(), c)) continue;
      std::vector<ArrowId> gens = h;
      gens.push_back(c);
      auto j = close_arrows(g, gens);
      std::sort(j.begin(), j.end());
      if (found.insert(j).second) queue.push_back(std::move(j));
    }
  }
  std::vector<std::vector<ArrowId>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

bool is_cyclic(const FiniteGroupoid& g, const std::vector<ArrowId>& subgroup) {
  return std::any_of(subgroup.begin(), subgroup.end(),
                     [&](ArrowId a) { return arrow_order(g, a) == subgroup.size(); });
}

MatchedSearchResult search_matched(std::shared_ptr<const FiniteGroupoid> g, const MatchedSearchOptions& opt) {
  if (opt.n == 0) throw Error(Errc::invalid_argument, "n must be positive");
  require_group(*g, opt.max_order);
  MatchedSearchResult r;
  for (auto& h : enumerate_subgroups(*g, opt.max_order))
    if (!opt.cyclic_only || is_cyclic(*g, h)) r.subgroups.push_back(std::move(h));
  const std::size_t m = r.subgroups.size(), order = g->arrow_count();

  std::vector<Subgroupoid> subs;
  std::map<std::vector<ArrowId>, std::size_t> index;
  for (std::size_t k = 0; k < m; ++k) {
    subs.emplace_back(g, r.subgroups[k]);
    index.emplace(r.subgroups[k], k);
  }
  // conj[x][k]: index of x⁻¹ H_k x.
  std::vector<std::vector<std::size_t>> conj;
  if (opt.up_to_conjugacy) {
    conj.assign(order, std::vector<std::size_t>(m));
    for (ArrowId x = 0; x < order; ++x)
      for (std::size_t k = 0; k < m; ++k) {
        std::vector<ArrowId> c;
        for (ArrowId h : r.subgroups[k]) c.push_back(g->comp(g->comp(g->inv(x), h), x));
        std::sort(c.begin(), c.end());
        conj[x][k] = index.at(c);
      }
  }
  auto trivial_meet = [&](std::size_t a, std::size_t b) {
    std::vector<ArrowId> both;
    std::set_intersection(r.subgroups[a].begin(), r.subgroups[a].end(), r.subgroups[b].begin(),
                          r.subgroups[b].end(), std::back_inserter(both));
    return both.size() == 1;
  };

  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> tuple;
  auto visit = [&](auto&& self, std::size_t product) -> void {
    if (tuple.size() == opt.n) {
      if (product != order) return;
      ++r.candidates;
      if (opt.up_to_conjugacy) {
        std::vector<std::size_t> best = tuple;
        for (ArrowId x = 0; x < order; ++x) {
          std::vector<std::size_t> c(tuple.size());
          for (std::size_t i = 0; i < tuple.size(); ++i) c[i] = conj[x][tuple[i]];
          best = std::min(best, c);
        }
        if (seen.count(best)) return;
        seen.insert(best);
      }
      std::vector<Subgroupoid> hs;
      for (std::size_t k : tuple) hs.push_back(subs[k]);
      const FactorizationDatum d(g, std::move(hs));
      if (is_exact_factorization(d) && is_permutation_invariant_product(d)) r.tuples.push_back(tuple);
      return;
    }
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t p = product * r.subgroups[k].size();
      if (order % p) continue;
      if (tuple.size() + 1 == opt.n && p != order) continue;
      if (!std::all_of(tuple.begin(), tuple.end(), [&](std::size_t j) { return trivial_meet(j, k); })) continue;
      tuple.push_back(k);
      self(self, p);
      tuple.pop_back();
    }
  };
  visit(visit, 1);
  return r;
}

}  // namespace nfold
