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

// Γ, Λ, Γ̃, Λ̃ and round-trip certificates between factorization data and
// n-tuple groupoids.

#ifndef NFOLD_EQUIV_HPP
#define NFOLD_EQUIV_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nfold/algebra.hpp"
#include "nfold/diagonal.hpp"
#include "nfold/ntuple.hpp"

namespace nfold {

inline constexpr std::size_t kMaxGammaCells = 1000000;

// Γ(G; H_1..H_n). A cell of index J is a commutative |J|-cube of arrows of G
// whose direction-j edges lie in H_j. Its key is the object id for J = ∅,
// otherwise its edge arrows in the layout of NTupleGroupoid::skeleton.
struct GammaConstruction {
  NTupleGroupoid tuple;
  std::shared_ptr<const FiniteGroupoid> g;
  std::vector<std::vector<std::vector<ArrowId>>> keys;  // [index bits][cell]
  std::vector<std::map<std::vector<ArrowId>, CellId>> lookup;

  CellId find(CellIndex j, const std::vector<ArrowId>& key) const;
};

// The bundle of d, if any, is ignored.
GammaConstruction gamma(const FactorizationDatum& d);

// Subgroup-level predictions against the direct predicates on Γ_I.
struct GammaProperty {
  CellIndex index;
  bool predicted_slim = true, direct_slim = false;
  bool predicted_exclusive = false, direct_exclusive = false;
  bool predicted_maximal = false, direct_maximal = false;
  bool agree() const {
    return predicted_slim == direct_slim && predicted_exclusive == direct_exclusive &&
           predicted_maximal == direct_maximal;
  }
};
// One record per I with |I| >= 2, ordered by bitmask.
std::vector<GammaProperty> gamma_properties(const FactorizationDatum& d);
std::vector<GammaProperty> gamma_properties(const FactorizationDatum& d, const GammaConstruction& gc);

// Γ̃(G, A; H_1..H_n): cubes are pairs (X, a), a in the fiber of A at
// s_[n](X), composed by (X,a)∘_i(Y,b) = (X∘_iY, a·h·b·h⁻¹) with h = s_î(X).
// Lower cells coincide with those of base.tuple.
struct TwistedConstruction {
  GammaConstruction base;
  NTupleGroupoid tuple;
  std::vector<CellId> base_cube;  // per cube of tuple
  std::vector<ArrowId> fiber;     // per cube of tuple
  std::map<std::pair<CellId, ArrowId>, CellId> lookup;
  CoarseNTuple frame;
  Section section;  // X ↦ (X, identity)
};
TwistedConstruction gamma_tilde(const FactorizationDatum& d);

// ((τ,·), ι_î(τ_i)); throws Errc::precondition unless τ is vacant.
FactorizationDatum lambda(const NTupleGroupoid& t);
// ((τ,·_!), τ•, ι_î(τ_i)); throws unless the section is functorial.
FactorizationDatum lambda_tilde(const NTupleGroupoid& t, const Section& s);

struct RoundTripCertificate {
  enum class Kind { datum, twisted_datum, ntuple, twisted_ntuple };
  Kind kind = Kind::datum;
  bool ok = false;
  std::string failure;
  // Datum kinds: isomorphism from the rebuilt datum onto the input.
  GroupoidIsomorphism groupoid_map;
  std::size_t preserved_subsets = 0;
  // n-tuple kinds: [index bits][cell of the input] -> cell of the rebuilt one.
  std::vector<std::vector<CellId>> cell_map;
};

// Λ(Γ(d)) ≅ d, or Λ̃(Γ̃(d)) ≅ d when d carries a bundle. Failures are
// returned, not thrown.
RoundTripCertificate roundtrip_datum(const FactorizationDatum& d);
// Γ(Λ(t)) ≅ t for vacant t, or Γ̃(Λ̃(t, s)) ≅ t when a section is given.
RoundTripCertificate roundtrip_ntuple(const NTupleGroupoid& t, const Section* s = nullptr);

// Checks that cell_map is an isomorphism of n-tuple groupoids.
bool is_ntuple_isomorphism(const NTupleGroupoid& from, const NTupleGroupoid& to,
                           const std::vector<std::vector<CellId>>& cell_map, std::string* why = nullptr);

}  // namespace nfold

#endif  // NFOLD_EQUIV_HPP
