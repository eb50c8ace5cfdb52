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

#ifndef MADAWIPOL_GEOMETRY_REGION_H_
#define MADAWIPOL_GEOMETRY_REGION_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "madawipol/geometry/scalar.h"

namespace madawipol::geometry {

class SingularTransform : public std::invalid_argument {
 public:
  SingularTransform() : std::invalid_argument("singular linear transform") {}
};

// A closed planar point set bounded by simple polygonal rings.
//
// Rings are stored with the interior on their left: outer boundaries run
// counter-clockwise and holes clockwise. Each ring starts at its
// lexicographically least vertex, carries no collinear vertices, and the ring
// list is sorted, so two regions are equal as point sets exactly when their
// ring lists compare equal.
template <typename Scalar>
class Region2D {
 public:
  using Point = Vector2<Scalar>;
  using Ring = std::vector<Point>;

  Region2D() = default;

  // Interprets arbitrary closed rings (any orientation, possibly
  // self-intersecting) under the even-odd rule.
  static Region2D fromRings(const std::vector<Ring>& rings);
  static Region2D polygon(const Ring& ring) { return fromRings({ring}); }
  static Region2D rectangle(const Scalar& x0, const Scalar& y0,
                            const Scalar& x1, const Scalar& y1);
  // Centered square of half-side h.
  static Region2D square(const Scalar& h) { return rectangle(-h, -h, h, h); }

  // Adopts rings that are already canonical. No checking is done.
  static Region2D fromCanonicalRings(std::vector<Ring> rings) {
    Region2D r;
    r.rings_ = std::move(rings);
    return r;
  }

  const std::vector<Ring>& rings() const { return rings_; }
  bool empty() const { return rings_.empty(); }
  std::size_t vertexCount() const {
    std::size_t n = 0;
    for (const Ring& r : rings_) n += r.size();
    return n;
  }

  template <typename Other>
  Region2D<Other> cast() const {
    std::vector<typename Region2D<Other>::Ring> out;
    out.reserve(rings_.size());
    for (const Ring& r : rings_) {
      typename Region2D<Other>::Ring o;
      o.reserve(r.size());
      for (const Point& p : r) {
        o.emplace_back(convertScalar<Other>(p.x()), convertScalar<Other>(p.y()));
      }
      out.push_back(std::move(o));
    }
    return Region2D<Other>::fromCanonicalRings(std::move(out));
  }

  friend bool operator==(const Region2D& a, const Region2D& b) {
    if (a.rings_.size() != b.rings_.size()) return false;
    for (std::size_t i = 0; i < a.rings_.size(); ++i) {
      const Ring& ra = a.rings_[i];
      const Ring& rb = b.rings_[i];
      if (ra.size() != rb.size()) return false;
      for (std::size_t k = 0; k < ra.size(); ++k) {
        if (ra[k].x() != rb[k].x() || ra[k].y() != rb[k].y()) return false;
      }
    }
    return true;
  }
  friend bool operator!=(const Region2D& a, const Region2D& b) {
    return !(a == b);
  }

 private:
  template <typename Other, typename From>
  static Other convertScalar(const From& v) {
    if constexpr (std::is_same_v<Other, From>) {
      return v;
    } else if constexpr (std::is_same_v<Other, double>) {
      return toDouble(v);
    } else {
      return Other(v);
    }
  }

  std::vector<Ring> rings_;
};

template <typename Scalar>
struct Box2 {
  Vector2<Scalar> min;
  Vector2<Scalar> max;
};

enum class BooleanKind { kUnion, kDifference, kIntersection };

template <typename Scalar>
Region2D<Scalar> booleanOp(BooleanKind kind, const Region2D<Scalar>& a,
                           const Region2D<Scalar>& b);

template <typename Scalar>
Region2D<Scalar> unite(const Region2D<Scalar>& a, const Region2D<Scalar>& b) {
  return booleanOp(BooleanKind::kUnion, a, b);
}
template <typename Scalar>
Region2D<Scalar> subtract(const Region2D<Scalar>& a,
                          const Region2D<Scalar>& b) {
  return booleanOp(BooleanKind::kDifference, a, b);
}
template <typename Scalar>
Region2D<Scalar> intersect(const Region2D<Scalar>& a,
                           const Region2D<Scalar>& b) {
  return booleanOp(BooleanKind::kIntersection, a, b);
}

// Pointwise image L*S. Throws SingularTransform when det(L) == 0.
template <typename Scalar>
Region2D<Scalar> transformRegion(const LinearTransform2D<Scalar>& l,
                                 const Region2D<Scalar>& s);

template <typename Scalar>
Region2D<Scalar> translateRegion(const Region2D<Scalar>& s,
                                 const Vector2<Scalar>& offset);

// L applied after L2.
template <typename Scalar>
LinearTransform2D<Scalar> composeTransforms(const LinearTransform2D<Scalar>& l,
                                            const LinearTransform2D<Scalar>& l2) {
  return l * l2;
}

template <typename Scalar>
LinearTransform2D<Scalar> invertTransform(const LinearTransform2D<Scalar>& l) {
  const Scalar det = l(0, 0) * l(1, 1) - l(0, 1) * l(1, 0);
  if (det == 0) throw SingularTransform();
  LinearTransform2D<Scalar> inv;
  inv << l(1, 1) / det, -l(0, 1) / det, -l(1, 0) / det, l(0, 0) / det;
  return inv;
}

// True iff b is a subset of a as closed point sets.
template <typename Scalar>
bool regionContains(const Region2D<Scalar>& a, const Region2D<Scalar>& b);

// Closed-set membership.
template <typename Scalar>
bool containsPoint(const Region2D<Scalar>& s, const Vector2<Scalar>& p);

template <typename Scalar>
Scalar area(const Region2D<Scalar>& s);

template <typename Scalar>
std::optional<Box2<Scalar>> boundingBox(const Region2D<Scalar>& s);

// Points of s at Chebyshev distance at least eps from its boundary.
template <typename Scalar>
Region2D<Scalar> erode(const Region2D<Scalar>& s, const Scalar& eps);

template <typename Scalar>
Region2D<Scalar> convexHull(const Region2D<Scalar>& s);

template <typename Scalar>
struct Triangle2 {
  Vector2<Scalar> a, b, c;
};

// Counter-clockwise triangles covering s without T-junctions between them.
// The returned vertex set may include points on ring edges that are not ring
// vertices; boundaryPoints lists every such point.
template <typename Scalar>
struct Triangulation {
  std::vector<Triangle2<Scalar>> triangles;
  std::vector<Vector2<Scalar>> boundaryPoints;
};

template <typename Scalar>
Triangulation<Scalar> triangulate(const Region2D<Scalar>& s);

}  // namespace madawipol::geometry

#endif  // MADAWIPOL_GEOMETRY_REGION_H_
