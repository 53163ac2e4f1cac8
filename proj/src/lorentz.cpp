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

#include "nfold/lorentz.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "nfold/error.hpp"

namespace nfold::lorentz {

Mat4 generator(Kind kind, std::span<const double> p) {
  const std::size_t arity = kind == Kind::K ? 3 : kind == Kind::A ? 1 : 2;
  if (p.size() != arity)
    throw Error(Errc::invalid_argument, "generator expects " + std::to_string(arity) + " parameters");
  Mat4 g = Mat4::Zero();
  switch (kind) {
    case Kind::K:
      g(1, 2) = p[0], g(1, 3) = p[1], g(2, 3) = p[2];
      g(2, 1) = -p[0], g(3, 1) = -p[1], g(3, 2) = -p[2];
      break;
    case Kind::A:
      g(0, 1) = g(1, 0) = p[0];
      break;
    case Kind::N:
      g(0, 2) = g(1, 2) = p[0];
      g(0, 3) = g(1, 3) = p[1];
      g(2, 0) = p[0], g(2, 1) = -p[0];
      g(3, 0) = p[1], g(3, 1) = -p[1];
      break;
  }
  return g;
}

Mat4 expm(const Mat4& m) { return m.exp(); }

LorentzCheck check_lorentz(const Mat4& m, double tol) {
  const Mat4 eta = metric();
  LorentzCheck c;
  c.metric_error = (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff();
  c.det_error = std::abs(m.determinant() - 1.0);
  c.time_entry = m(0, 0);
  c.ok = c.metric_error <= tol && c.det_error <= tol && c.time_entry >= 1.0 - tol;
  return c;
}

Mat4 compose_factors(const IwasawaFactors& f) {
  return expm(generator(Kind::K, f.k)) * expm(generator(Kind::A, std::span(&f.a, 1))) *
         expm(generator(Kind::N, f.n));
}

IwasawaFactors iwasawa_decompose(const Mat4& m, double tol) {
  if (!m.allFinite()) throw Error(Errc::invalid_argument, "matrix has non-finite entries");
  const LorentzCheck c = check_lorentz(m, tol);
  if (c.metric_error > tol || c.det_error > tol) throw Error(Errc::invalid_argument, "matrix is not in SO(3,1)");
  if (c.time_entry < 1.0 - tol) throw Error(Errc::invalid_argument, "matrix is not orthochronous");

  // w = m⁻¹ e0 = n⁻¹ a⁻¹ e0, since K fixes e0. With N fixing e0 + e1:
  // w0 - w1 = e^α, w2 = -a e^α, w3 = -b e^α.
  const Mat4 eta = metric();
  const Vec4 w = eta * m.transpose() * eta * Vec4::UnitX();
  IwasawaFactors f;
  const double scale = w(0) - w(1);
  f.a = std::log(scale);
  f.n = {-w(2) / scale, -w(3) / scale};

  const Mat4 k = m * expm(-generator(Kind::N, f.n)) * expm(-generator(Kind::A, std::span(&f.a, 1)));
  const Eigen::Matrix3d r = k.bottomRightCorner<3, 3>();
  const Eigen::AngleAxisd aa{Eigen::Matrix3d(r)};
  const Eigen::Vector3d w3 = aa.angle() * aa.axis();
  // Skew matrix of w3 is [[0,-z,y],[z,0,-x],[-y,x,0]]; match the K layout.
  f.k = {-w3.z(), w3.y(), -w3.x()};
  return f;
}

PoincareElement operator*(const PoincareElement& p, const PoincareElement& q) {
  return {p.lorentz * q.lorentz, p.translation + p.lorentz * q.translation};
}

PoincareDecomposition decompose_poincare(const PoincareElement& p, double tol) {
  return {iwasawa_decompose(p.lorentz, tol), p.translation};
}

PoincareElement recompose(const PoincareDecomposition& d) { return {compose_factors(d.factors), d.translation}; }

double max_abs_diff(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

IwasawaFactors sample_factors(std::mt19937_64& rng, double range) {
  std::uniform_real_distribution<double> u(-range, range);
  IwasawaFactors f;
  for (double& x : f.k) x = u(rng);
  f.a = u(rng);
  for (double& x : f.n) x = u(rng);
  return f;
}

}  // namespace nfold::lorentz
