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

#include "nfold/nfold.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "nfold/core.hpp"
#include "nfold/search.hpp"
#include "nfold/serialize.hpp"

using nfold::Json;

struct nfold_group {
  std::shared_ptr<const nfold::FiniteGroupoid> g;
};

struct nfold_datum {
  nfold::FactorizationDatum d;
  std::vector<std::string> names;
  std::string bundle_name;
};

struct nfold_ntuple {
  nfold::NTupleGroupoid tuple;
  std::optional<nfold::CoarseNTuple> frame;
  std::optional<nfold::Section> section;
};

namespace {

thread_local std::string last_error;

nfold_status status_of(nfold::Errc c) {
  switch (c) {
    case nfold::Errc::parse: return NFOLD_ERR_PARSE;
    case nfold::Errc::invalid_argument: return NFOLD_ERR_INVALID_ARGUMENT;
    case nfold::Errc::precondition: return NFOLD_ERR_PRECONDITION;
    case nfold::Errc::limit_exceeded: return NFOLD_ERR_LIMIT;
    case nfold::Errc::not_found: return NFOLD_ERR_NOT_FOUND;
  }
  return NFOLD_ERR_INTERNAL;
}

// Runs f, mapping exceptions to status codes and the thread-local message.
template <class F>
nfold_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const nfold::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const Json::exception& e) {
    last_error = e.what();
    return NFOLD_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NFOLD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NFOLD_ERR_INTERNAL;
  }
}

nfold_status require(bool cond, const char* what) {
  if (cond) return NFOLD_OK;
  last_error = what;
  return NFOLD_ERR_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Stamps the schema and ok flag, hands the document out, and returns the
// status matching ok.
nfold_status emit(Json doc, bool ok, char** report) {
  doc["schema"] = nfold::kReportSchema;
  doc["ok"] = ok;
  *report = dup(doc.dump(2));
  return ok ? NFOLD_OK : NFOLD_VIOLATION;
}

Json cell_counts(const nfold::NTupleGroupoid& t) {
  Json out = Json::array();
  for (std::uint32_t bits = 0; bits < (1u << t.dimension()); ++bits)
    out.push_back({{"index", nfold::CellIndex(bits).directions()}, {"count", t.cell_count(nfold::CellIndex(bits))}});
  return out;
}

}  // namespace

extern "C" {

const char* nfold_version(void) { return "0.1.0"; }

const char* nfold_last_error(void) { return last_error.c_str(); }

void nfold_string_free(char* s) { std::free(s); }

nfold_status nfold_group_from_json(const char* json, nfold_group** out) {
  if (auto s = require(json && out, "null argument")) return s;
  return guard([&] {
    auto g = nfold::group_from_json(nfold::parse_json(json));
    *out = new nfold_group{std::move(g)};
    return NFOLD_OK;
  });
}

void nfold_group_free(nfold_group* g) { delete g; }

size_t nfold_group_order(const nfold_group* g) { return g ? g->g->arrow_count() : 0; }

nfold_status nfold_group_validate(const nfold_group* g, char** report) {
  if (auto s = require(g && report, "null argument")) return s;
  return guard([&] {
    const auto r = nfold::validate_groupoid(*g->g);
    Json doc = nfold::report_to_json(r);
    doc["objects"] = g->g->object_count();
    doc["arrows"] = g->g->arrow_count();
    return emit(std::move(doc), r.ok(), report);
  });
}

nfold_status nfold_datum_create(const nfold_group* g, const char* subgroups_json, const char* bundle_json,
                                nfold_datum** out) {
  if (auto s = require(g && subgroups_json && out, "null argument")) return s;
  return guard([&] {
    auto spec = nfold::subgroups_from_json(g->g, nfold::parse_json(subgroups_json));
    if (bundle_json) spec.bundle = nfold::bundle_from_json(g->g, nfold::parse_json(bundle_json), &spec.bundle_name);
    auto d = spec.datum(g->g);
    *out = new nfold_datum{std::move(d), std::move(spec.names), std::move(spec.bundle_name)};
    return NFOLD_OK;
  });
}

void nfold_datum_free(nfold_datum* d) { delete d; }

nfold_status nfold_datum_factor_report(const nfold_datum* d, char** report) {
  if (auto s = require(d && report, "null argument")) return s;
  return guard([&] {
    Json doc = nfold::factor_report(d->d, d->names);
    bool ok;
    if (d->d.bundle) {
      doc["bundle"]["name"] = d->bundle_name;
      ok = doc["bundle"]["semi_factorization"].get<bool>();
    } else {
      ok = doc["exact"].get<bool>() && doc["permutation_invariant"].get<bool>();
    }
    return emit(std::move(doc), ok, report);
  });
}

nfold_status nfold_gamma(const nfold_datum* d, nfold_ntuple** out, char** report) {
  if (auto s = require(d && report, "null argument")) return s;
  return guard([&] {
    auto gc = nfold::gamma(d->d);
    const auto r = nfold::validate_ntuple(gc.tuple);
    const auto props = nfold::gamma_properties(d->d, gc);
    bool agree = true;
    for (const auto& p : props) agree = agree && p.agree();
    Json doc;
    doc["dimension"] = gc.tuple.dimension();
    doc["cubes"] = gc.tuple.cube_count();
    doc["cells"] = cell_counts(gc.tuple);
    doc["validation"] = nfold::report_to_json(r);
    doc["vacant"] = nfold::is_vacant(gc.tuple);
    doc["exact_factorization"] = nfold::is_exact_factorization(d->d);
    doc["properties"] = nfold::gamma_properties_to_json(props);
    doc["properties_agree"] = agree;
    const bool ok = r.ok() && agree;
    if (out) *out = new nfold_ntuple{std::move(gc.tuple), std::nullopt, std::nullopt};
    return emit(std::move(doc), ok, report);
  });
}

nfold_status nfold_gamma_tilde(const nfold_datum* d, nfold_ntuple** out, char** report) {
  if (auto s = require(d && report, "null argument")) return s;
  return guard([&] {
    auto tc = nfold::gamma_tilde(d->d);
    const auto r = nfold::validate_ntuple(tc.tuple);
    Json doc;
    doc["dimension"] = tc.tuple.dimension();
    doc["cubes"] = tc.tuple.cube_count();
    doc["cells"] = cell_counts(tc.tuple);
    doc["validation"] = nfold::report_to_json(r);
    doc["semi_factorization"] = nfold::is_semi_factorization(d->d);
    doc["core_bundle"] = nfold::core_bundle(tc.tuple).size();
    doc["slim"] = nfold::is_slim(tc.tuple);
    doc["maximally_exclusive"] = nfold::is_maximally_exclusive(tc.tuple);
    doc["frame_cubes"] = tc.frame.shells.size();
    doc["section_functorial"] = tc.section.functorial;
    const bool ok = r.ok() && tc.section.functorial;
    if (out) *out = new nfold_ntuple{std::move(tc.tuple), std::move(tc.frame), std::move(tc.section)};
    return emit(std::move(doc), ok, report);
  });
}

nfold_status nfold_ntuple_from_json(const char* json, nfold_ntuple** out) {
  if (auto s = require(json && out, "null argument")) return s;
  return guard([&] {
    auto loaded = nfold::ntuple_from_json(nfold::parse_json(json));
    *out = new nfold_ntuple{std::move(loaded.tuple), std::move(loaded.frame), std::move(loaded.section)};
    return NFOLD_OK;
  });
}

nfold_status nfold_ntuple_to_json(const nfold_ntuple* t, char** out) {
  if (auto s = require(t && out, "null argument")) return s;
  return guard([&] {
    const auto doc = nfold::ntuple_to_json(t->tuple, t->frame ? &*t->frame : nullptr,
                                           t->section ? &*t->section : nullptr);
    *out = dup(doc.dump());
    return NFOLD_OK;
  });
}

void nfold_ntuple_free(nfold_ntuple* t) { delete t; }

unsigned nfold_ntuple_dimension(const nfold_ntuple* t) { return t ? t->tuple.dimension() : 0; }

size_t nfold_ntuple_cube_count(const nfold_ntuple* t) { return t ? t->tuple.cube_count() : 0; }

nfold_status nfold_ntuple_validate(const nfold_ntuple* t, char** report) {
  if (auto s = require(t && report, "null argument")) return s;
  return guard([&] {
    const auto r = nfold::validate_ntuple(t->tuple);
    Json doc = nfold::report_to_json(r);
    doc["dimension"] = t->tuple.dimension();
    doc["cells"] = cell_counts(t->tuple);
    return emit(std::move(doc), r.ok(), report);
  });
}

nfold_status nfold_core_report(const nfold_ntuple* t, char** report) {
  if (auto s = require(t && report, "null argument")) return s;
  return guard([&] {
    const auto r = nfold::validate_ntuple(t->tuple);
    if (!r.ok()) throw nfold::Error(nfold::Errc::precondition, "n-tuple fails validation");
    Json doc = nfold::core_report(t->tuple);
    if (t->section) doc["section_functorial"] = t->section->functorial;
    return emit(std::move(doc), true, report);
  });
}

nfold_status nfold_roundtrip_datum(const nfold_datum* d, char** report) {
  if (auto s = require(d && report, "null argument")) return s;
  return guard([&] {
    const auto c = nfold::roundtrip_datum(d->d);
    return emit(nfold::certificate_to_json(c), c.ok, report);
  });
}

nfold_status nfold_roundtrip_ntuple(const nfold_ntuple* t, char** report) {
  if (auto s = require(t && report, "null argument")) return s;
  return guard([&] {
    const auto c = nfold::roundtrip_ntuple(t->tuple, t->section ? &*t->section : nullptr);
    return emit(nfold::certificate_to_json(c), c.ok, report);
  });
}

nfold_status nfold_search_matched(const nfold_group* g, unsigned n, int up_to_conjugacy, int cyclic_only,
                                  size_t max_order, char** report) {
  if (auto s = require(g && report, "null argument")) return s;
  return guard([&] {
    nfold::MatchedSearchOptions opt;
    opt.n = n;
    opt.up_to_conjugacy = up_to_conjugacy != 0;
    opt.cyclic_only = cyclic_only != 0;
    opt.max_order = max_order;
    const auto r = nfold::search_matched(g->g, opt);
    Json subs = Json::array(), tuples = Json::array();
    for (const auto& h : r.subgroups) {
      Json names = Json::array();
      for (auto a : h) names.push_back(g->g->name(a));
      subs.push_back({{"order", h.size()}, {"cyclic", nfold::is_cyclic(*g->g, h)}, {"elements", std::move(names)}});
    }
    for (const auto& t : r.tuples) {
      Json orders = Json::array();
      for (auto k : t) orders.push_back(r.subgroups[k].size());
      tuples.push_back({{"subgroups", t}, {"orders", std::move(orders)}});
    }
    Json doc;
    doc["group_order"] = g->g->arrow_count();
    doc["n"] = n;
    doc["up_to_conjugacy"] = opt.up_to_conjugacy;
    doc["cyclic_only"] = opt.cyclic_only;
    doc["subgroups"] = std::move(subs);
    doc["candidates"] = r.candidates;
    doc["matched"] = std::move(tuples);
    doc["count"] = r.tuples.size();
    return emit(std::move(doc), true, report);
  });
}

nfold_status nfold_iwasawa(const char* matrix_json, double tol, char** report) {
  if (auto s = require(matrix_json && report, "null argument")) return s;
  if (auto s = require(tol > 0 && std::isfinite(tol), "tolerance must be positive")) return s;
  return guard([&] {
    namespace lz = nfold::lorentz;
    const Json in = nfold::parse_json(matrix_json);
    lz::PoincareElement p;
    p.lorentz = nfold::matrix_from_json(in);
    if (in.is_object() && in.contains("translation")) {
      const auto v = in.at("translation").get<std::vector<double>>();
      if (v.size() != 4) throw nfold::Error(nfold::Errc::parse, "translation must have 4 entries");
      p.translation = lz::Vec4(v[0], v[1], v[2], v[3]);
    }
    const auto check = lz::check_lorentz(p.lorentz, tol);
    const auto dec = lz::decompose_poincare(p, tol);
    const auto back = lz::recompose(dec);
    const double err = std::max(lz::max_abs_diff(back.lorentz, p.lorentz),
                                (back.translation - p.translation).cwiseAbs().maxCoeff());
    Json doc;
    doc["factors"] = nfold::factors_to_json(dec.factors);
    doc["translation"] = nfold::vector_to_json(dec.translation);
    doc["recomposed"] = nfold::matrix_to_json(back.lorentz);
    doc["reconstruction_error"] = err;
    doc["metric_error"] = check.metric_error;
    doc["det_error"] = check.det_error;
    doc["tolerance"] = tol;
    return emit(std::move(doc), err <= tol, report);
  });
}

nfold_status nfold_iwasawa_sample(uint64_t seed, size_t count, double tol, char** report) {
  if (auto s = require(report != nullptr, "null argument")) return s;
  if (auto s = require(tol > 0 && std::isfinite(tol), "tolerance must be positive")) return s;
  return guard([&] {
    namespace lz = nfold::lorentz;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0, worst_poincare = 0, worst_param = 0;
    for (size_t k = 0; k < count; ++k) {
      const auto f = lz::sample_factors(rng);
      const lz::Mat4 m = lz::compose_factors(f);
      const auto g = lz::iwasawa_decompose(m, tol);
      worst = std::max(worst, lz::max_abs_diff(lz::compose_factors(g), m));
      worst_param = std::max({worst_param, std::abs(g.a - f.a), std::abs(g.n[0] - f.n[0]), std::abs(g.n[1] - f.n[1])});
      lz::PoincareElement p{m, lz::Vec4(u(rng), u(rng), u(rng), u(rng))};
      const auto back = lz::recompose(lz::decompose_poincare(p, tol));
      worst_poincare = std::max({worst_poincare, lz::max_abs_diff(back.lorentz, p.lorentz),
                                 (back.translation - p.translation).cwiseAbs().maxCoeff()});
    }
    // A-generator against its closed form cosh/sinh boost.
    double closed = 0;
    for (double a : {-2.0, -0.5, 0.0, 0.7, 2.0}) {
      lz::Mat4 boost = lz::Mat4::Identity();
      boost(0, 0) = boost(1, 1) = std::cosh(a);
      boost(0, 1) = boost(1, 0) = std::sinh(a);
      closed = std::max(closed, lz::max_abs_diff(lz::expm(lz::generator(lz::Kind::A, std::span(&a, 1))), boost));
    }
    Json doc;
    doc["seed"] = seed;
    doc["samples"] = count;
    doc["tolerance"] = tol;
    doc["max_reconstruction_error"] = worst;
    doc["max_an_parameter_error"] = worst_param;
    doc["max_poincare_error"] = worst_poincare;
    doc["a_closed_form_error"] = closed;
    return emit(std::move(doc), worst <= tol && worst_poincare <= tol && closed <= 1e-12, report);
  });
}

}  // extern "C"
