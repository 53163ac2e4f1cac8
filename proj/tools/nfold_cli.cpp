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

// nfold: command-line front end over the C API.
//
// Exit status: 0 when the report is clean, 1 on a violation or an unmet
// precondition, 2 on unreadable or malformed input.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nfold/nfold.h"

namespace {

using Json = nlohmann::json;

struct Options {
  std::string input, subgroups, bundle, out, save, format = "text";
  unsigned n = 2;
  double tol = 1e-9;
  std::uint64_t seed = 20260101;
  std::size_t max_order = 200, samples = 0;
  bool conjugacy = false, cyclic = false;
};

// Thrown for problems with the command line or input files.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Report strings from the library, freed on scope exit.
struct Report {
  char* text = nullptr;
  ~Report() { nfold_string_free(text); }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using Group = Handle<nfold_group, nfold_group_free>;
using Datum = Handle<nfold_datum, nfold_datum_free>;
using NTuple = Handle<nfold_ntuple, nfold_ntuple_free>;

// A status that is neither OK nor VIOLATION aborts the command.
struct CallError : std::runtime_error {
  nfold_status status;
  CallError(nfold_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

nfold_status check(nfold_status s, const char* what) {
  if (s != NFOLD_OK && s != NFOLD_VIOLATION) throw CallError(s, std::string(what) + ": " + nfold_last_error());
  return s;
}

Json take(Report& r) { return Json::parse(r.text); }

void load_group(const Options& o, Group& g) {
  if (o.input.empty()) throw InputError("--input is required");
  check(nfold_group_from_json(read_file(o.input).c_str(), &g.p), "group");
}

void load_datum(const Options& o, Group& g, Datum& d) {
  load_group(o, g);
  if (o.subgroups.empty()) throw InputError("--subgroups is required");
  const std::string bundle = o.bundle.empty() ? "" : read_file(o.bundle);
  check(nfold_datum_create(g.p, read_file(o.subgroups).c_str(), o.bundle.empty() ? nullptr : bundle.c_str(), &d.p),
        "subgroups");
}

bool is_ntuple_document(const std::string& text) {
  try {
    const Json doc = Json::parse(text);
    return doc.is_object() && doc.contains("format") && doc.contains("cells");
  } catch (const Json::exception&) {
    return false;
  }
}

bool datum_has_bundle(const Options& o) {
  if (!o.bundle.empty()) return true;
  const Json doc = Json::parse(read_file(o.subgroups), nullptr, false);
  return doc.is_object() && doc.contains("bundle");
}

void save_ntuple(const Options& o, const NTuple& t) {
  if (o.save.empty() || !t.p) return;
  Report r;
  check(nfold_ntuple_to_json(t.p, &r.text), "serialize");
  std::ofstream(o.save) << r.text << "\n";
}

// Builds Γ, or Γ̃ when a bundle is given, from --input/--subgroups, or loads
// a saved n-tuple document from --input.
Json obtain_ntuple(const Options& o, NTuple& t, bool& ok) {
  if (o.input.empty()) throw InputError("--input is required");
  const std::string text = read_file(o.input);
  if (is_ntuple_document(text)) {
    check(nfold_ntuple_from_json(text.c_str(), &t.p), "n-tuple");
    return {{"source", "file"}};
  }
  Group g;
  Datum d;
  load_datum(o, g, d);
  Report r;
  const bool twisted = datum_has_bundle(o);
  ok = check(twisted ? nfold_gamma_tilde(d.p, &t.p, &r.text) : nfold_gamma(d.p, &t.p, &r.text),
             twisted ? "gamma-tilde" : "gamma") == NFOLD_OK && ok;
  return {{"source", twisted ? "gamma-tilde" : "gamma"}, {"construction", take(r)}};
}

// Runs one subcommand and returns its result document and ok flag.
Json run(const std::string& cmd, const Options& o, bool& ok) {
  ok = true;
  Report r;
  auto collect = [&](nfold_status s, const char* what) {
    ok = check(s, what) == NFOLD_OK && ok;
    return take(r);
  };
  if (cmd == "validate") {
    if (o.input.empty()) throw InputError("--input is required");
    const std::string text = read_file(o.input);
    if (is_ntuple_document(text)) {
      NTuple t;
      check(nfold_ntuple_from_json(text.c_str(), &t.p), "n-tuple");
      return {{"kind", "ntuple"}, {"validation", collect(nfold_ntuple_validate(t.p, &r.text), "validate")}};
    }
    Group g;
    check(nfold_group_from_json(text.c_str(), &g.p), "group");
    return {{"kind", "groupoid"}, {"validation", collect(nfold_group_validate(g.p, &r.text), "validate")}};
  }
  if (cmd == "factor-check") {
    Group g;
    Datum d;
    load_datum(o, g, d);
    return collect(nfold_datum_factor_report(d.p, &r.text), "factor-check");
  }
  if (cmd == "gamma" || cmd == "gamma-tilde") {
    Group g;
    Datum d;
    NTuple t;
    load_datum(o, g, d);
    Json out = cmd == "gamma" ? collect(nfold_gamma(d.p, &t.p, &r.text), "gamma")
                              : collect(nfold_gamma_tilde(d.p, &t.p, &r.text), "gamma-tilde");
    save_ntuple(o, t);
    return out;
  }
  if (cmd == "core-report") {
    NTuple t;
    Json out = obtain_ntuple(o, t, ok);
    out["core"] = collect(nfold_core_report(t.p, &r.text), "core-report");
    save_ntuple(o, t);
    return out;
  }
  if (cmd == "roundtrip") {
    if (o.input.empty()) throw InputError("--input is required");
    Json out = Json::object();
    if (!is_ntuple_document(read_file(o.input))) {
      Group g;
      Datum d;
      load_datum(o, g, d);
      out["datum"] = collect(nfold_roundtrip_datum(d.p, &r.text), "roundtrip");
      nfold_string_free(r.text);
      r.text = nullptr;
    }
    NTuple t;
    out["ntuple_source"] = obtain_ntuple(o, t, ok)["source"];
    out["ntuple"] = collect(nfold_roundtrip_ntuple(t.p, &r.text), "roundtrip");
    return out;
  }
  if (cmd == "search-matched") {
    Group g;
    load_group(o, g);
    return collect(nfold_search_matched(g.p, o.n, o.conjugacy, o.cyclic, o.max_order, &r.text), "search-matched");
  }
  if (cmd == "iwasawa") {
    if (!o.input.empty())
      return collect(nfold_iwasawa(read_file(o.input).c_str(), o.tol, &r.text), "iwasawa");
    const std::string identity = "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]";
    if (o.samples == 0) return collect(nfold_iwasawa(identity.c_str(), o.tol, &r.text), "iwasawa");
    return collect(nfold_iwasawa_sample(o.seed, o.samples, o.tol, &r.text), "iwasawa");
  }
  throw InputError("unknown command " + cmd);
}

void print_text(const Json& doc, const std::string& prefix, std::ostream& os) {
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      print_text(value, prefix + key + ".", os);
    } else if (!value.is_array()) {
      os << "  " << prefix << key << ": " << value.dump() << "\n";
    } else if (value.size() <= 8 && std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_primitive(); })) {
      os << "  " << prefix << key << ": " << value.dump() << "\n";
    } else {
      os << "  " << prefix << key << ": [" << value.size() << " entries]\n";
    }
  }
}

int exit_code_for(nfold_status s) {
  return s == NFOLD_ERR_PARSE || s == NFOLD_ERR_INVALID_ARGUMENT ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nfold: n-tuple groupoids, factorizations and the Lorentz demo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nfold_version()));
  Options o;

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"validate", "check groupoid or n-tuple axioms"},
      {"factor-check", "exactness and permutation invariance of a subgroup tuple"},
      {"gamma", "build the n-tuple groupoid of an exact factorization"},
      {"gamma-tilde", "build the n-tuple groupoid of a semi-factorization with a bundle"},
      {"core-report", "core groupoid, core bundle and the predicate suite"},
      {"roundtrip", "check both round trips of the equivalence"},
      {"search-matched", "list matched n-tuples of subgroups"},
      {"iwasawa", "Iwasawa decomposition of a Lorentz matrix or random samples"},
  };
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--input", o.input, "group, n-tuple or matrix JSON file");
    sub->add_option("--out", o.out, "write the JSON report to this file");
    sub->add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"json", "text"}));
    const std::string name = s.name;
    if (name == "factor-check" || name == "gamma" || name == "gamma-tilde" || name == "core-report" ||
        name == "roundtrip") {
      sub->add_option("--subgroups", o.subgroups, "subgroup list JSON file");
      sub->add_option("--bundle", o.bundle, "bundle JSON file");
    }
    if (name == "gamma" || name == "gamma-tilde" || name == "core-report")
      sub->add_option("--save", o.save, "write the n-tuple document to this file");
    if (name == "search-matched") {
      sub->add_option("--n", o.n, "number of factors")->check(CLI::Range(1u, 6u));
      sub->add_option("--max-order", o.max_order, "largest group order searched");
      sub->add_flag("--conjugacy", o.conjugacy, "one tuple per conjugacy class");
      sub->add_flag("--cyclic", o.cyclic, "cyclic factors only");
    }
    if (name == "iwasawa") {
      sub->add_option("--tol", o.tol, "numerical tolerance")->check(CLI::PositiveNumber);
      sub->add_option("--seed", o.seed, "sampling seed");
      sub->add_option("--samples", o.samples, "number of random factor tuples");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  Json report;
  report["schema"] = "nfold-report/1";
  report["command"] = cmd;
  bool ok = false;
  int rc = 0;
  const auto start = std::chrono::steady_clock::now();
  try {
    report["result"] = run(cmd, o, ok);
    rc = ok ? 0 : 1;
  } catch (const InputError& e) {
    report["error"] = {{"status", "input"}, {"message", e.what()}};
    rc = 2;
  } catch (const CallError& e) {
    report["error"] = {{"status", int(e.status)}, {"message", e.what()}};
    rc = exit_code_for(e.status);
  } catch (const Json::exception& e) {
    report["error"] = {{"status", "parse"}, {"message", e.what()}};
    rc = 2;
  }
  report["ok"] = rc == 0;
  report["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) {
      std::cerr << "cannot write " << o.out << "\n";
      return 2;
    }
    out << report.dump(2) << "\n";
  }
  if (o.format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << cmd << ": " << (rc == 0 ? "ok" : rc == 1 ? "violation" : "input error") << "\n";
    if (report.contains("error")) std::cout << "  error: " << report["error"]["message"].get<std::string>() << "\n";
    if (report.contains("result")) print_text(report["result"], "", std::cout);
    std::cout << "  elapsed_ms: " << report["elapsed_ms"].get<double>() << "\n";
  }
  return rc;
}
