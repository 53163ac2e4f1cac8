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

// JSON ingestion and report documents. Parse failures throw Errc::parse.

#ifndef NFOLD_SERIALIZE_HPP
#define NFOLD_SERIALIZE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nfold/algebra.hpp"
#include "nfold/diagonal.hpp"
#include "nfold/equiv.hpp"
#include "nfold/lorentz.hpp"
#include "nfold/ntuple.hpp"

namespace nfold {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "nfold-report/1";
inline constexpr const char* kNTupleFormat = "nfold-ntuple/1";

Json parse_json(const std::string& text);

// Accepts a Cayley document {"elements", "table", "identity"}, a permutation
// document {"degree", "generators"} or a groupoid document {"objects",
// "arrows": [{"name", "src", "tgt"}], "comp", "identities", "inverses"}.
std::shared_ptr<const FiniteGroupoid> group_from_json(const Json& doc);
Json group_to_json(const FiniteGroupoid& g);

// Element reference: arrow index, arrow name, or a one-line permutation
// (0-based if it contains 0, 1-based otherwise).
ArrowId element_from_json(const FiniteGroupoid& g, const Json& ref);

struct DatumSpec {
  std::vector<std::string> names;
  std::vector<Subgroupoid> subs;
  std::optional<GroupBundle> bundle;
  std::string bundle_name;

  FactorizationDatum datum(std::shared_ptr<const FiniteGroupoid> g) const;
};

// {"subgroups": [{"name", "generators" | "elements"}], "bundle": {...}} or a
// bare array of subgroup entries.
DatumSpec subgroups_from_json(std::shared_ptr<const FiniteGroupoid> g, const Json& doc);
// {"bundle": {...}} or a bare bundle entry.
GroupBundle bundle_from_json(std::shared_ptr<const FiniteGroupoid> g, const Json& doc, std::string* name = nullptr);

Json ntuple_to_json(const NTupleGroupoid& t, const CoarseNTuple* frame = nullptr, const Section* section = nullptr);

struct LoadedNTuple {
  NTupleGroupoid tuple;
  std::optional<CoarseNTuple> frame;
  std::optional<Section> section;
};
LoadedNTuple ntuple_from_json(const Json& doc);

Json report_to_json(const ValidationReport& r);
Json certificate_to_json(const RoundTripCertificate& c);
Json gamma_properties_to_json(const std::vector<GammaProperty>& props);
// Counts of core and core-bundle cubes per object pair, the predicate suite
// and witnesses for failed predicates.
Json core_report(const NTupleGroupoid& t);
// Exactness, permutation invariance, intersections, and bundle predicates.
Json factor_report(const FactorizationDatum& d, const std::vector<std::string>& names);

Json factors_to_json(const lorentz::IwasawaFactors& f);
lorentz::Mat4 matrix_from_json(const Json& doc);
Json matrix_to_json(const lorentz::Mat4& m);
Json vector_to_json(const lorentz::Vec4& v);

}  // namespace nfold

#endif  // NFOLD_SERIALIZE_HPP
