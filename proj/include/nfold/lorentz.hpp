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

// Iwasawa KAN decomposition of SO+(3,1) and the Poincaré semidirect product.
// Coordinates are (t, x, y, z) with metric η = diag(-1, 1, 1, 1).

#ifndef NFOLD_LORENTZ_HPP
#define NFOLD_LORENTZ_HPP

#include <array>
#include <random>
#include <span>

#include <Eigen/Dense>

namespace nfold::lorentz {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

inline Mat4 metric() { return Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal(); }

enum class Kind { K, A, N };

// Lie algebra elements: K takes (a, b, c), A takes (a), N takes (a, b).
// Throws Errc::invalid_argument on the wrong arity.
Mat4 generator(Kind kind, std::span<const double> params);
Mat4 expm(const Mat4& m);

struct LorentzCheck {
  double metric_error = 0;  // max |MᵀηM - η|
  double det_error = 0;     // |det M - 1|
  double time_entry = 0;    // M(0,0)
  bool ok = false;
};
LorentzCheck check_lorentz(const Mat4& m, double tol = 1e-12);

struct IwasawaFactors {
  std::array<double, 3> k{};
  double a = 0;
  std::array<double, 2> n{};
};

Mat4 compose_factors(const IwasawaFactors& f);
// m = exp K(k) · exp A(a) · exp N(n). Throws Errc::invalid_argument for
// non-Lorentz or non-orthochronous input at the given tolerance.
IwasawaFactors iwasawa_decompose(const Mat4& m, double tol = 1e-9);

struct PoincareElement {
  Mat4 lorentz = Mat4::Identity();
  Vec4 translation = Vec4::Zero();
};
// (M1, t1)(M2, t2) = (M1 M2, t1 + M1 t2).
PoincareElement operator*(const PoincareElement& p, const PoincareElement& q);

struct PoincareDecomposition {
  IwasawaFactors factors;
  Vec4 translation = Vec4::Zero();
};
PoincareDecomposition decompose_poincare(const PoincareElement& p, double tol = 1e-9);
PoincareElement recompose(const PoincareDecomposition& d);

double max_abs_diff(const Mat4& a, const Mat4& b);

// Parameters drawn uniformly from [-range, range].
IwasawaFactors sample_factors(std::mt19937_64& rng, double range = 2.0);

}  // namespace nfold::lorentz

#endif  // NFOLD_LORENTZ_HPP
