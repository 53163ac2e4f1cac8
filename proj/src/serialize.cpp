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

#include "nfold/serialize.hpp"

#include <algorithm>
#include <map>

#include "nfold/core.hpp"

namespace nfold {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::parse, what); }

// Run f, turning JSON access errors into Errc::parse.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    parse_fail(std::string(what) + ": " + e.what());
  }
}

std::vector<std::uint32_t> one_line(const Json& arr, std::size_t degree) {
  std::vector<std::uint32_t> p = arr.get<std::vector<std::uint32_t>>();
  if (degree && p.size() != degree) parse_fail("permutation has length " + std::to_string(p.size()));
  const bool zero_based = std::find(p.begin(), p.end(), 0u) != p.end();
  if (!zero_based)
    for (auto& x : p) --x;
  return p;
}

std::vector<ArrowId> elements_of(const FiniteGroupoid& g, const Json& entry, const char* key) {
  std::vector<ArrowId> out;
  for (const auto& ref : entry.at(key)) out.push_back(element_from_json(g, ref));
  return out;
}

Json dirs_json(CellIndex I) { return I.directions(); }

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

std::shared_ptr<const FiniteGroupoid> group_from_json(const Json& doc) {
  return guarded("group document", [&]() -> std::shared_ptr<const FiniteGroupoid> {
    if (!doc.is_object()) parse_fail("group document must be an object");
    if (doc.contains("table")) {
      auto elements = doc.at("elements").get<std::vector<std::string>>();
      auto table = doc.at("table").get<std::vector<std::vector<std::size_t>>>();
      return std::make_shared<const FiniteGroupoid>(
          FiniteGroupoid::from_cayley(std::move(elements), table, doc.at("identity").get<std::size_t>()));
    }
    if (doc.contains("degree")) {
      const std::size_t degree = doc.at("degree").get<std::size_t>();
      std::vector<std::vector<std::uint32_t>> gens;
      for (const auto& g : doc.at("generators")) gens.push_back(one_line(g, degree));
      return std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_permutations(degree, gens));
    }
    if (doc.contains("arrows")) {
      FiniteGroupoid::Tables t;
      t.objects = doc.at("objects").get<std::size_t>();
      for (const auto& a : doc.at("arrows")) {
        t.src.push_back(a.at("src").get<ObjectId>());
        t.tgt.push_back(a.at("tgt").get<ObjectId>());
        t.names.push_back(a.value("name", "f" + std::to_string(t.names.size())));
      }
      const std::size_t m = t.src.size();
      if (m > kMaxTableArrows) throw Error(Errc::limit_exceeded, "groupoid exceeds the dense table bound");
      const auto& comp = doc.at("comp");
      if (comp.size() != m) parse_fail("comp must have one row per arrow");
      for (const auto& row : comp) {
        if (row.size() != m) parse_fail("comp rows must have one entry per arrow");
        for (const auto& x : row) t.comp.push_back(x.is_null() || (x.is_number_integer() && x.get<long long>() < 0)
                                                       ? kNoArrow
                                                       : x.get<ArrowId>());
      }
      t.idn = doc.at("identities").get<std::vector<ArrowId>>();
      t.inv = doc.at("inverses").get<std::vector<ArrowId>>();
      return std::make_shared<const FiniteGroupoid>(FiniteGroupoid(std::move(t)));
    }
    parse_fail("group document needs \"table\", \"degree\" or \"arrows\"");
  });
}

Json group_to_json(const FiniteGroupoid& g) {
  const std::size_t m = g.arrow_count();
  Json doc;
  if (g.is_group()) {
    Json elements = Json::array(), table = Json::array();
    for (ArrowId a = 0; a < m; ++a) {
      elements.push_back(g.name(a));
      Json row = Json::array();
      for (ArrowId b = 0; b < m; ++b) row.push_back(g.comp(a, b));
      table.push_back(std::move(row));
    }
    doc["elements"] = std::move(elements);
    doc["table"] = std::move(table);
    doc["identity"] = g.idn(0);
    return doc;
  }
  doc["objects"] = g.object_count();
  Json arrows = Json::array(), comp = Json::array();
  for (ArrowId a = 0; a < m; ++a) {
    arrows.push_back({{"name", g.name(a)}, {"src", g.src(a)}, {"tgt", g.tgt(a)}});
    Json row = Json::array();
    for (ArrowId b = 0; b < m; ++b) row.push_back(g.comp(a, b) == kNoArrow ? Json(nullptr) : Json(g.comp(a, b)));
    comp.push_back(std::move(row));
  }
  doc["arrows"] = std::move(arrows);
  doc["comp"] = std::move(comp);
  Json idn = Json::array(), inv = Json::array();
  for (ObjectId o = 0; o < g.object_count(); ++o) idn.push_back(g.idn(o));
  for (ArrowId a = 0; a < m; ++a) inv.push_back(g.inv(a));
  doc["identities"] = std::move(idn);
  doc["inverses"] = std::move(inv);
  return doc;
}

ArrowId element_from_json(const FiniteGroupoid& g, const Json& ref) {
  return guarded("element reference", [&]() -> ArrowId {
    if (ref.is_number_integer()) {
      const auto a = ref.get<long long>();
      if (a < 0 || std::size_t(a) >= g.arrow_count()) parse_fail("arrow index out of range: " + ref.dump());
      return ArrowId(a);
    }
    if (ref.is_string()) {
      if (auto a = g.find(ref.get<std::string>())) return *a;
      parse_fail("unknown element name: " + ref.dump());
    }
    if (ref.is_array()) {
      const auto p = one_line(ref, 0);
      if (auto a = g.find(cycle_notation(p))) return *a;
      parse_fail("permutation is not an element of the group: " + ref.dump());
    }
    parse_fail("element reference must be an index, a name or a permutation");
  });
}

FactorizationDatum DatumSpec::datum(std::shared_ptr<const FiniteGroupoid> g) const {
  return FactorizationDatum(std::move(g), subs, bundle);
}

DatumSpec subgroups_from_json(std::shared_ptr<const FiniteGroupoid> g, const Json& doc) {
  return guarded("subgroups document", [&] {
    DatumSpec spec;
    const Json& list = doc.is_array() ? doc : doc.at("subgroups");
    for (const auto& entry : list) {
      spec.names.push_back(entry.value("name", "H" + std::to_string(spec.names.size() + 1)));
      if (entry.contains("elements"))
        spec.subs.emplace_back(g, elements_of(*g, entry, "elements"));
      else
        spec.subs.push_back(Subgroupoid::generated(g, elements_of(*g, entry, "generators")));
    }
    if (spec.subs.empty()) parse_fail("at least one subgroup is required");
    if (doc.is_object() && doc.contains("bundle")) spec.bundle = bundle_from_json(g, doc, &spec.bundle_name);
    return spec;
  });
}

GroupBundle bundle_from_json(std::shared_ptr<const FiniteGroupoid> g, const Json& doc, std::string* name) {
  return guarded("bundle document", [&] {
    const Json& entry = doc.contains("bundle") ? doc.at("bundle") : doc;
    if (name) *name = entry.value("name", "A");
    if (entry.contains("elements")) return GroupBundle(g, elements_of(*g, entry, "elements"));
    return GroupBundle::generated(g, elements_of(*g, entry, "generators"));
  });
}

Json ntuple_to_json(const NTupleGroupoid& t, const CoarseNTuple* fr, const Section* s) {
  const unsigned n = t.dimension();
  Json doc;
  doc["format"] = kNTupleFormat;
  doc["dimension"] = n;
  Json cells = Json::array();
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const CellIndex J(bits);
    Json c;
    c["index"] = dirs_json(J);
    c["count"] = t.cell_count(J);
    Json faces = Json::array(), idns = Json::array(), comps = Json::array();
    for (unsigned i = 0; i < n; ++i) {
      if (J.contains(i)) {
        Json src = Json::array(), tgt = Json::array();
        for (CellId x = 0; x < t.cell_count(J); ++x) {
          src.push_back(t.face(J, i, Side::source, x));
          tgt.push_back(t.face(J, i, Side::target, x));
        }
        faces.push_back({{"direction", i}, {"source", std::move(src)}, {"target", std::move(tgt)}});
        auto list = t.composites(J, i);
        std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
          return std::pair(a.a, a.b) < std::pair(b.a, b.b);
        });
        Json table = Json::array();
        for (const auto& e : list) table.push_back({e.a, e.b, e.c});
        comps.push_back({{"direction", i}, {"table", std::move(table)}});
      } else {
        Json img = Json::array();
        for (CellId x = 0; x < t.cell_count(J); ++x) img.push_back(t.identity(J, i, x));
        idns.push_back({{"direction", i}, {"image", std::move(img)}});
      }
    }
    c["faces"] = std::move(faces);
    c["identities"] = std::move(idns);
    c["compositions"] = std::move(comps);
    cells.push_back(std::move(c));
  }
  doc["cells"] = std::move(cells);
  if (fr && s) {
    Json sec = Json::array();
    for (CellId k = 0; k < fr->shells.size(); ++k) sec.push_back({{"shell", fr->shells[k]}, {"cube", s->image[k]}});
    doc["section"] = std::move(sec);
  }
  return doc;
}

LoadedNTuple ntuple_from_json(const Json& doc) {
  return guarded("n-tuple document", [&] {
    const unsigned n = doc.at("dimension").get<unsigned>();
    if (n == 0 || n > kMaxDimension) parse_fail("dimension out of range");
    NTupleBuilder b(n);
    std::map<std::uint32_t, const Json*> by_index;
    for (const auto& c : doc.at("cells")) {
      std::uint32_t bits = 0;
      for (unsigned i : c.at("index").get<std::vector<unsigned>>()) {
        if (i >= n) parse_fail("cell index mentions a direction beyond the dimension");
        bits |= 1u << i;
      }
      if (!by_index.emplace(bits, &c).second) parse_fail("duplicate cell index");
    }
    if (by_index.size() != (1u << n)) parse_fail("every index needs a cell table");
    for (const auto& [bits, c] : by_index) b.set_cell_count(CellIndex(bits), c->at("count").get<std::size_t>());
    for (const auto& [bits, c] : by_index) {
      const CellIndex J(bits);
      const std::size_t count = b.cell_count(J);
      auto dir_of = [&](const Json& e) {
        const unsigned i = e.at("direction").get<unsigned>();
        if (i >= n) parse_fail("direction out of range");
        return i;
      };
      for (const auto& f : c->at("faces")) {
        const unsigned i = dir_of(f);
        if (!J.contains(i)) parse_fail("face table for a direction outside the index");
        const auto src = f.at("source").get<std::vector<CellId>>();
        const auto tgt = f.at("target").get<std::vector<CellId>>();
        if (src.size() != count || tgt.size() != count) parse_fail("face table has the wrong length");
        for (CellId x = 0; x < count; ++x) {
          b.set_face(J, i, Side::source, x, src[x]);
          b.set_face(J, i, Side::target, x, tgt[x]);
        }
      }
      for (const auto& f : c->at("identities")) {
        const unsigned i = dir_of(f);
        if (J.contains(i)) parse_fail("identity table for a direction inside the index");
        const auto img = f.at("image").get<std::vector<CellId>>();
        if (img.size() != count) parse_fail("identity table has the wrong length");
        for (CellId x = 0; x < count; ++x) b.set_identity(J, i, x, img[x]);
      }
      for (const auto& f : c->at("compositions")) {
        const unsigned i = dir_of(f);
        if (!J.contains(i)) parse_fail("composition table for a direction outside the index");
        for (const auto& e : f.at("table")) {
          const auto abc = e.get<std::vector<CellId>>();
          if (abc.size() != 3) parse_fail("composition entries are [a, b, a∘b]");
          b.set_composite(J, i, abc[0], abc[1], abc[2]);
        }
      }
    }
    LoadedNTuple out;
    try {
      out.tuple = std::move(b).build();
    } catch (const Error& e) {
      parse_fail(e.what());
    }
    if (doc.contains("section")) {
      out.frame = frame(out.tuple);
      std::vector<CellId> image(out.frame->shells.size(), kNoCell);
      for (const auto& e : doc.at("section")) {
        const CellId k = out.frame->find(e.at("shell").get<std::vector<CellId>>());
        if (k == kNoCell) parse_fail("section shell is not in the frame");
        image[k] = e.at("cube").get<CellId>();
      }
      out.section = make_section(out.tuple, *out.frame, std::move(image));
    }
    return out;
  });
}

Json report_to_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"axiom", x.axiom}, {"detail", x.detail}, {"witnesses", x.witnesses}});
  return {{"ok", r.ok()}, {"total", r.total}, {"violations", std::move(v)}};
}

Json certificate_to_json(const RoundTripCertificate& c) {
  static const char* kinds[] = {"datum", "twisted-datum", "ntuple", "twisted-ntuple"};
  Json doc;
  doc["kind"] = kinds[int(c.kind)];
  doc["ok"] = c.ok;
  if (!c.ok) doc["failure"] = c.failure;
  if (c.kind == RoundTripCertificate::Kind::datum || c.kind == RoundTripCertificate::Kind::twisted_datum) {
    doc["objects"] = c.groupoid_map.objects;
    doc["arrows"] = c.groupoid_map.arrows;
    doc["preserved_subsets"] = c.preserved_subsets;
  } else {
    Json cells = Json::array();
    for (std::uint32_t bits = 0; bits < c.cell_map.size(); ++bits)
      cells.push_back({{"index", dirs_json(CellIndex(bits))}, {"map", c.cell_map[bits]}});
    doc["cells"] = std::move(cells);
  }
  return doc;
}

Json gamma_properties_to_json(const std::vector<GammaProperty>& props) {
  Json out = Json::array();
  for (const auto& p : props)
    out.push_back({{"index", dirs_json(p.index)},
                   {"slim", {{"predicted", p.predicted_slim}, {"direct", p.direct_slim}}},
                   {"exclusive", {{"predicted", p.predicted_exclusive}, {"direct", p.direct_exclusive}}},
                   {"maximal", {{"predicted", p.predicted_maximal}, {"direct", p.direct_maximal}}},
                   {"agree", p.agree()}});
  return out;
}

Json core_report(const NTupleGroupoid& t) {
  constexpr std::size_t kMaxWitnesses = 16;
  const CellIndex full = t.full_index();
  const auto core = core_elements(t);
  const auto bundle = core_bundle(t);
  std::map<std::pair<ObjectId, ObjectId>, std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& u : core) ++pairs[{u.source, u.sink}].first;
  for (const auto& u : bundle) ++pairs[{u.source, u.sink}].second;
  Json per_pair = Json::array();
  for (const auto& [k, v] : pairs)
    per_pair.push_back({{"source", k.first}, {"sink", k.second}, {"core", v.first}, {"bundle", v.second}});

  Json doc;
  doc["dimension"] = t.dimension();
  doc["objects"] = t.object_count();
  doc["cubes"] = t.cube_count();
  doc["core_count"] = core.size();
  doc["bundle_count"] = bundle.size();
  doc["per_object_pair"] = std::move(per_pair);

  bool abelian = true;
  for (const auto& u : bundle)
    for (const auto& v : bundle)
      if (u.source == v.source && transmute(t, u.cube, v.cube) != transmute(t, v.cube, u.cube)) abelian = false;
  doc["bundle_abelian"] = abelian;

  const bool slim = is_slim(t), exclusive = is_exclusive(t), maximal = is_maximal(t);
  const bool max_excl = is_maximally_exclusive(t);
  doc["predicates"] = {{"slim", slim},
                       {"exclusive", exclusive},
                       {"maximal", maximal},
                       {"maximally_exclusive", max_excl},
                       {"vacant", slim && max_excl}};
  Json boundaries = Json::array();
  const unsigned n = t.dimension();
  for (std::uint32_t bits = 0; bits + 1 < (1u << n); ++bits) {
    const CellIndex I(bits);
    if (I.size() < 2) continue;
    const auto b = boundary_subgroupoid(t, I);
    boundaries.push_back({{"index", dirs_json(I)}, {"slim", is_slim(b)}, {"exclusive", is_exclusive(b)}});
  }
  doc["boundaries"] = std::move(boundaries);

  Json w = Json::object();
  if (!slim) {
    Json ids = Json::array();
    for (const auto& u : bundle)
      if (!t.is_identity_cell(full, u.cube) && ids.size() < kMaxWitnesses) ids.push_back(u.cube);
    w["non_identity_bundle_cubes"] = std::move(ids);
  }
  if (!exclusive) {
    Json ids = Json::array();
    for (const auto& u : core)
      if (!is_bundle_cube(t, u.cube) && ids.size() < kMaxWitnesses) ids.push_back(u.cube);
    w["core_cubes_outside_bundle"] = std::move(ids);
  }
  doc["witnesses"] = std::move(w);
  return doc;
}

Json factor_report(const FactorizationDatum& d, const std::vector<std::string>& names) {
  const FiniteGroupoid& g = *d.g;
  Json doc;
  doc["objects"] = g.object_count();
  doc["arrows"] = g.arrow_count();
  Json subs = Json::array();
  for (std::size_t i = 0; i < d.n(); ++i)
    subs.push_back({{"name", i < names.size() ? names[i] : "H" + std::to_string(i + 1)},
                    {"size", d.subs[i].size()},
                    {"discrete", is_discrete(d.subs[i])}});
  doc["subgroups"] = std::move(subs);

  bool pairwise = true;
  Json bad_pairs = Json::array();
  for (std::size_t i = 0; i < d.n(); ++i)
    for (std::size_t j = i + 1; j < d.n(); ++j) {
      const Subgroupoid pair[] = {d.subs[i], d.subs[j]};
      if (!is_discrete(intersect(pair))) {
        pairwise = false;
        bad_pairs.push_back({i, j});
      }
    }
  const auto counts = ordered_product_set(d.subs);
  std::size_t support = 0, total = 0;
  Json multiple = Json::array(), missing = Json::array();
  for (ArrowId a = 0; a < counts.size(); ++a) {
    total += counts[a];
    if (counts[a]) ++support;
    if (counts[a] == 0 && missing.size() < 16) missing.push_back(g.name(a));
    if (counts[a] > 1 && multiple.size() < 16) multiple.push_back(g.name(a));
  }
  doc["pairwise_discrete"] = pairwise;
  doc["intersection_discrete"] = is_discrete(intersect(d.subs));
  doc["product_support"] = support;
  doc["product_tuples"] = total;
  doc["exact"] = is_exact_factorization(d);
  doc["permutation_invariant"] = is_permutation_invariant_product(d);
  doc["witnesses"] = {{"non_discrete_pairs", std::move(bad_pairs)},
                      {"not_in_product", std::move(missing)},
                      {"several_decompositions", std::move(multiple)}};
  if (d.bundle) {
    const bool normalized = is_normalized_abelian_bundle(d);
    doc["bundle"] = {{"size", d.bundle->size()},
                     {"abelian", is_abelian(*d.bundle)},
                     {"normalized_abelian", normalized},
                     {"semi_factorization", normalized && is_semi_factorization(d)}};
  }
  return doc;
}

Json factors_to_json(const lorentz::IwasawaFactors& f) {
  // Adding 0.0 turns -0.0 into 0.0 so that reports read cleanly.
  auto clean = [](double x) { return x + 0.0; };
  return {{"k", {clean(f.k[0]), clean(f.k[1]), clean(f.k[2])}}, {"a", clean(f.a)}, {"n", {clean(f.n[0]), clean(f.n[1])}}};
}

lorentz::Mat4 matrix_from_json(const Json& doc) {
  return guarded("matrix", [&] {
    const Json& rows = doc.is_object() ? doc.at("matrix") : doc;
    if (!rows.is_array() || rows.size() != 4) parse_fail("matrix must be a 4×4 array");
    lorentz::Mat4 m;
    for (int r = 0; r < 4; ++r) {
      if (!rows[r].is_array() || rows[r].size() != 4) parse_fail("matrix must be a 4×4 array");
      for (int c = 0; c < 4; ++c) m(r, c) = rows[r][c].get<double>();
    }
    return m;
  });
}

Json matrix_to_json(const lorentz::Mat4& m) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
  return rows;
}

Json vector_to_json(const lorentz::Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

}  // namespace nfold
