/* Copyright 2026 The nfold Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libnfold.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Functions returning a report write a JSON document into
 * *report, to be released with nfold_string_free. Reports carry an "ok" field
 * that is false exactly when the call returns NFOLD_VIOLATION. On any other
 * non-zero status *report and *out are left untouched and nfold_last_error()
 * describes the failure (thread-local, valid until the next call).
 */

#ifndef NFOLD_NFOLD_H
#define NFOLD_NFOLD_H

#include <stddef.h>
#include <stdint.h>

#if defined(NFOLD_BUILDING_LIBRARY)
#define NFOLD_API __attribute__((visibility("default")))
#else
#define NFOLD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nfold_status {
  NFOLD_OK = 0,
  NFOLD_VIOLATION = 1,
  NFOLD_ERR_PARSE = 2,
  NFOLD_ERR_INVALID_ARGUMENT = 3,
  NFOLD_ERR_PRECONDITION = 4,
  NFOLD_ERR_LIMIT = 5,
  NFOLD_ERR_NOT_FOUND = 6,
  NFOLD_ERR_INTERNAL = 7
} nfold_status;

typedef struct nfold_group nfold_group;
typedef struct nfold_datum nfold_datum;
typedef struct nfold_ntuple nfold_ntuple;

NFOLD_API const char* nfold_version(void);
NFOLD_API const char* nfold_last_error(void);
NFOLD_API void nfold_string_free(char* s);

/* Groups and groupoids: Cayley, permutation or groupoid JSON documents. */
NFOLD_API nfold_status nfold_group_from_json(const char* json, nfold_group** out);
NFOLD_API void nfold_group_free(nfold_group* g);
NFOLD_API size_t nfold_group_order(const nfold_group* g);
/* Groupoid axioms; NFOLD_VIOLATION lists the failures. */
NFOLD_API nfold_status nfold_group_validate(const nfold_group* g, char** report);

/* Subgroup list document, optionally with a "bundle" entry. bundle_json, if
 * not NULL, overrides the bundle of subgroups_json. */
NFOLD_API nfold_status nfold_datum_create(const nfold_group* g, const char* subgroups_json, const char* bundle_json,
                                          nfold_datum** out);
NFOLD_API void nfold_datum_free(nfold_datum* d);
/* Exactness and permutation invariance, plus the semi-factorization
 * predicates when a bundle is present. */
NFOLD_API nfold_status nfold_datum_factor_report(const nfold_datum* d, char** report);

/* Γ of the datum; the report holds validation, counts and the predicate
 * comparison. out may be NULL. */
NFOLD_API nfold_status nfold_gamma(const nfold_datum* d, nfold_ntuple** out, char** report);
/* Γ̃ of a datum with a normalized abelian bundle; the result keeps its
 * canonical section. */
NFOLD_API nfold_status nfold_gamma_tilde(const nfold_datum* d, nfold_ntuple** out, char** report);

NFOLD_API nfold_status nfold_ntuple_from_json(const char* json, nfold_ntuple** out);
NFOLD_API nfold_status nfold_ntuple_to_json(const nfold_ntuple* t, char** out);
NFOLD_API void nfold_ntuple_free(nfold_ntuple* t);
NFOLD_API unsigned nfold_ntuple_dimension(const nfold_ntuple* t);
NFOLD_API size_t nfold_ntuple_cube_count(const nfold_ntuple* t);
NFOLD_API nfold_status nfold_ntuple_validate(const nfold_ntuple* t, char** report);
NFOLD_API nfold_status nfold_core_report(const nfold_ntuple* t, char** report);

/* Λ∘Γ (or Λ̃∘Γ̃ when the datum has a bundle). */
NFOLD_API nfold_status nfold_roundtrip_datum(const nfold_datum* d, char** report);
/* Γ∘Λ, or Γ̃∘Λ̃ when the n-tuple carries a section. */
NFOLD_API nfold_status nfold_roundtrip_ntuple(const nfold_ntuple* t, char** report);

NFOLD_API nfold_status nfold_search_matched(const nfold_group* g, unsigned n, int up_to_conjugacy, int cyclic_only,
                                            size_t max_order, char** report);

/* Decomposes a 4×4 JSON matrix (or {"matrix": ..., "translation": ...}). */
NFOLD_API nfold_status nfold_iwasawa(const char* matrix_json, double tol, char** report);
/* Compose, decompose and recompose `count` random factor tuples. */
NFOLD_API nfold_status nfold_iwasawa_sample(uint64_t seed, size_t count, double tol, char** report);

#ifdef __cplusplus
}
#endif

#endif /* NFOLD_NFOLD_H */
