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

/* Exercises the shared library from plain C. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "nfold/nfold.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static const char* kS3 = "{\"degree\": 3, \"generators\": [[2, 1, 3], [2, 3, 1]]}";
static const char* kS3Pair =
    "{\"subgroups\": [{\"name\": \"C2\", \"generators\": [\"(1 2)\"]},"
    " {\"name\": \"C3\", \"generators\": [\"(1 2 3)\"]}]}";
static const char* kS4 = "{\"degree\": 4, \"generators\": [[2, 1, 3, 4], [2, 3, 4, 1]]}";
static const char* kS4Semi =
    "{\"subgroups\": [{\"generators\": [\"(1 2 3)\"]}, {\"generators\": [\"(1 2)\"]}],"
    " \"bundle\": {\"name\": \"V4\", \"generators\": [\"(1 2)(3 4)\", \"(1 3)(2 4)\"]}}";

static int has(const char* report, const char* needle) { return report && strstr(report, needle) != NULL; }

static void test_errors(void) {
  nfold_group* g = NULL;
  EXPECT(nfold_group_from_json("{\"degree\": 3", &g) == NFOLD_ERR_PARSE);
  EXPECT(g == NULL);
  EXPECT(strlen(nfold_last_error()) > 0);
  EXPECT(nfold_group_from_json(NULL, &g) == NFOLD_ERR_INVALID_ARGUMENT);
  EXPECT(nfold_group_from_json("{\"elements\": [\"e\"], \"table\": [[1]], \"identity\": 0}", &g) != NFOLD_OK);
  EXPECT(nfold_iwasawa("[[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]", 1e-9, NULL) == NFOLD_ERR_INVALID_ARGUMENT);
  char* report = NULL;
  EXPECT(nfold_iwasawa("[[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]", 1e-9, &report) == NFOLD_ERR_INVALID_ARGUMENT);
  EXPECT(report == NULL);
  EXPECT(nfold_iwasawa("[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]", -1.0, &report) == NFOLD_ERR_INVALID_ARGUMENT);
}

static void test_vacant(void) {
  nfold_group* g = NULL;
  nfold_datum* d = NULL;
  nfold_ntuple* t = NULL;
  nfold_ntuple* copy = NULL;
  char* report = NULL;
  char* json = NULL;

  EXPECT(strcmp(nfold_version(), "") != 0);
  EXPECT(nfold_group_from_json(kS3, &g) == NFOLD_OK);
  EXPECT(nfold_group_order(g) == 6);
  EXPECT(nfold_group_validate(g, &report) == NFOLD_OK);
  EXPECT(has(report, "\"ok\": true"));
  nfold_string_free(report);

  EXPECT(nfold_datum_create(g, kS3Pair, NULL, &d) == NFOLD_OK);
  EXPECT(nfold_datum_factor_report(d, &report) == NFOLD_OK);
  EXPECT(has(report, "\"exact\": true"));
  nfold_string_free(report);

  EXPECT(nfold_gamma(d, &t, &report) == NFOLD_OK);
  EXPECT(has(report, "\"vacant\": true"));
  nfold_string_free(report);
  EXPECT(nfold_ntuple_dimension(t) == 2);
  EXPECT(nfold_ntuple_cube_count(t) == 6);

  EXPECT(nfold_ntuple_to_json(t, &json) == NFOLD_OK);
  EXPECT(nfold_ntuple_from_json(json, &copy) == NFOLD_OK);
  nfold_string_free(json);
  EXPECT(nfold_ntuple_validate(copy, &report) == NFOLD_OK);
  nfold_string_free(report);
  EXPECT(nfold_roundtrip_ntuple(copy, &report) == NFOLD_OK);
  EXPECT(has(report, "\"kind\": \"ntuple\""));
  nfold_string_free(report);
  EXPECT(nfold_roundtrip_datum(d, &report) == NFOLD_OK);
  nfold_string_free(report);
  EXPECT(nfold_core_report(t, &report) == NFOLD_OK);
  EXPECT(has(report, "\"vacant\": true"));
  nfold_string_free(report);

  /* Γ̃ needs a bundle. */
  EXPECT(nfold_gamma_tilde(d, NULL, &report) == NFOLD_ERR_INVALID_ARGUMENT);

  EXPECT(nfold_search_matched(g, 2, 0, 0, 200, &report) == NFOLD_OK);
  EXPECT(has(report, "\"count\": 8"));
  nfold_string_free(report);

  nfold_ntuple_free(copy);
  nfold_ntuple_free(t);
  nfold_datum_free(d);
  nfold_group_free(g);
}

static void test_twisted(void) {
  nfold_group* g = NULL;
  nfold_datum* d = NULL;
  nfold_ntuple* t = NULL;
  char* report = NULL;

  EXPECT(nfold_group_from_json(kS4, &g) == NFOLD_OK);
  EXPECT(nfold_datum_create(g, kS4Semi, NULL, &d) == NFOLD_OK);
  EXPECT(nfold_datum_factor_report(d, &report) == NFOLD_OK);
  EXPECT(has(report, "\"semi_factorization\": true"));
  nfold_string_free(report);
  EXPECT(nfold_gamma_tilde(d, &t, &report) == NFOLD_OK);
  EXPECT(has(report, "\"cubes\": 24"));
  EXPECT(has(report, "\"core_bundle\": 4"));
  nfold_string_free(report);
  EXPECT(nfold_roundtrip_ntuple(t, &report) == NFOLD_OK);
  EXPECT(has(report, "twisted-ntuple"));
  nfold_string_free(report);
  EXPECT(nfold_roundtrip_datum(d, &report) == NFOLD_OK);
  EXPECT(has(report, "twisted-datum"));
  nfold_string_free(report);

  /* Without the bundle, (C3, C2) is not an exact factorization of S4. */
  nfold_datum* plain = NULL;
  EXPECT(nfold_datum_create(g, "[{\"generators\": [\"(1 2 3)\"]}, {\"generators\": [\"(1 2)\"]}]", NULL, &plain) ==
         NFOLD_OK);
  EXPECT(nfold_datum_factor_report(plain, &report) == NFOLD_VIOLATION);
  EXPECT(has(report, "\"ok\": false"));
  nfold_string_free(report);

  nfold_datum_free(plain);
  nfold_ntuple_free(t);
  nfold_datum_free(d);
  nfold_group_free(g);
}

static void test_lorentz(void) {
  char* report = NULL;
  EXPECT(nfold_iwasawa("[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]", 1e-9, &report) == NFOLD_OK);
  EXPECT(has(report, "\"a\": 0.0"));
  nfold_string_free(report);
  EXPECT(nfold_iwasawa_sample(42, 100, 1e-9, &report) == NFOLD_OK);
  EXPECT(has(report, "\"samples\": 100"));
  nfold_string_free(report);
}

int main(void) {
  test_errors();
  test_vacant();
  test_twisted();
  test_lorentz();
  if (failures) {
    fprintf(stderr, "%d failed expectations\n", failures);
    return 1;
  }
  printf("C API: all expectations met\n");
  return 0;
}
