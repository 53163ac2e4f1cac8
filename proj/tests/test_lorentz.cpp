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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nfold/error.hpp"
#include "nfold/lorentz.hpp"

using namespace nfold::lorentz;

TEST_CASE("generators lie in so(3,1)") {
  const Mat4 eta = metric();
  const double k[] = {0.3, -1.1, 0.7}, a[] = {0.9}, n[] = {-0.4, 1.3};
  for (const Mat4& g : {generator(Kind::K, k), generator(Kind::A, a), generator(Kind::N, n)})
    CHECK((g.transpose() * eta + eta * g).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  const Mat4 nn = generator(Kind::N, n);
  CHECK((nn * nn * nn).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK_THROWS_AS(generator(Kind::A, k), nfold::Error);
}

TEST_CASE("exponentials are Lorentz transformations") {
  const double k[] = {0.3, -1.1, 0.7}, n[] = {-0.4, 1.3};
  CHECK(check_lorentz(expm(generator(Kind::K, k))).ok);
  CHECK(check_lorentz(expm(generator(Kind::N, n)), 1e-10).ok);
  for (double a : {-2.0, -0.3, 0.0, 1.5}) {
    const Mat4 m = expm(generator(Kind::A, std::span(&a, 1)));
    CHECK(m(0, 0) == doctest::Approx(std::cosh(a)).epsilon(1e-14));
    CHECK(m(0, 1) == doctest::Approx(std::sinh(a)).epsilon(1e-14));
    CHECK(m(2, 2) == 1.0);
  }
}

TEST_CASE("Iwasawa decomposition recovers A and N parameters") {
  std::mt19937_64 rng(11);
  for (int s = 0; s < 200; ++s) {
    const auto f = sample_factors(rng);
    const Mat4 m = compose_factors(f);
    const auto g = iwasawa_decompose(m);
    CHECK(g.a == doctest::Approx(f.a).epsilon(1e-10));
    CHECK(g.n[0] == doctest::Approx(f.n[0]).epsilon(1e-10));
    CHECK(g.n[1] == doctest::Approx(f.n[1]).epsilon(1e-10));
    CHECK(max_abs_diff(compose_factors(g), m) < 1e-9);
  }
}

TEST_CASE("identity and invalid input") {
  const auto f = iwasawa_decompose(Mat4::Identity());
  CHECK(f.a == 0.0);
  CHECK(std::abs(f.k[0]) + std::abs(f.k[1]) + std::abs(f.k[2]) == 0.0);
  CHECK(std::abs(f.n[0]) + std::abs(f.n[1]) == 0.0);
  Mat4 scaled = 2 * Mat4::Identity();
  CHECK_THROWS_AS(iwasawa_decompose(scaled), nfold::Error);
  // Time reversal is Lorentz but not orthochronous.
  Mat4 flip = Mat4::Identity();
  flip(0, 0) = -1;
  flip(1, 1) = -1;
  CHECK_THROWS_AS(iwasawa_decompose(flip), nfold::Error);
  Mat4 nan = Mat4::Identity();
  nan(2, 3) = std::nan("");
  CHECK_THROWS_AS(iwasawa_decompose(nan), nfold::Error);
}

TEST_CASE("Poincaré products and decomposition") {
  std::mt19937_64 rng(5);
  const PoincareElement p{compose_factors(sample_factors(rng)), Vec4(1, 2, 3, 4)};
  const PoincareElement q{compose_factors(sample_factors(rng)), Vec4(-1, 0.5, 0, 2)};
  const auto pq = p * q;
  CHECK(max_abs_diff(pq.lorentz, p.lorentz * q.lorentz) == 0.0);
  CHECK((pq.translation - (p.translation + p.lorentz * q.translation)).cwiseAbs().maxCoeff() == 0.0);
  const auto back = recompose(decompose_poincare(pq));
  CHECK(max_abs_diff(back.lorentz, pq.lorentz) < 1e-9);
  CHECK(back.translation == pq.translation);
}
