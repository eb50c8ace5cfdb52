// Copyright 2026 The Madawipol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MADAWIPOL_GEOMETRY_SCALAR_H_
#define MADAWIPOL_GEOMETRY_SCALAR_H_

#include <cmath>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/LU>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace madawipol::geometry {

// Exact scalar used for every fitting decision. Expression templates are off
// so that the type composes cleanly with Eigen's own expression machinery.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

// A 2x2 matrix acting on column vectors.
template <typename Scalar>
using LinearTransform2D = Eigen::Matrix<Scalar, 2, 2>;

inline double toDouble(const Rational& r) { return r.convert_to<double>(); }
inline double toDouble(double d) { return d; }

template <typename Scalar>
Scalar fromRational(const Rational& r);
template <>
inline Rational fromRational<Rational>(const Rational& r) {
  return r;
}
template <>
inline double fromRational<double>(const Rational& r) {
  return toDouble(r);
}

template <typename Scalar>
Scalar cross(const Vector2<Scalar>& a, const Vector2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

template <typename Scalar>
int signOf(const Scalar& s) {
  return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

// Lexicographic (x, then y) order.
template <typename Scalar>
bool lexLess(const Vector2<Scalar>& a, const Vector2<Scalar>& b) {
  if (a.x() < b.x()) return true;
  if (b.x() < a.x()) return false;
  return a.y() < b.y();
}

// Accepts "p/q", integers and plain decimals ("-0.05"). Throws
// std::invalid_argument on anything else.
Rational parseRational(std::string_view text);

// "p/q", or "p" when the denominator is one.
std::string formatRational(const Rational& r);

template <typename Scalar>
LinearTransform2D<Scalar> uniformScale(const Scalar& factor) {
  LinearTransform2D<Scalar> m;
  m << factor, Scalar(0), Scalar(0), factor;
  return m;
}

}  // namespace madawipol::geometry

#endif  // MADAWIPOL_GEOMETRY_SCALAR_H_
