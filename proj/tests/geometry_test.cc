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

#include <random>

#include <gtest/gtest.h>

#include "madawipol/geometry/prism.h"
#include "madawipol/geometry/raster.h"
#include "madawipol/geometry/region.h"

namespace madawipol::geometry {
namespace {

using Q = Rational;
using R = Region2D<Q>;
using Pt = Vector2<Q>;

Q q(const char* s) { return parseRational(s); }

R box(const char* x0, const char* y0, const char* x1, const char* y1) {
  return R::rectangle(q(x0), q(y0), q(x1), q(y1));
}

R randomPolygon(std::mt19937& rng, int vertices) {
  std::uniform_int_distribution<int> coord(-20, 20);
  R::Ring ring;
  for (int i = 0; i < vertices; ++i) {
    ring.emplace_back(Q(coord(rng), 16), Q(coord(rng), 16));
  }
  return R::polygon(ring);
}

TEST(RationalText, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(q("7/20"), Q(7, 20));
  EXPECT_EQ(q("-3"), Q(-3));
  EXPECT_EQ(q("-0.05"), Q(-1, 20));
  EXPECT_EQ(q(" 0.7 "), Q(7, 10));
  EXPECT_THROW(q("1/0"), std::invalid_argument);
  EXPECT_THROW(q("abc"), std::invalid_argument);
  EXPECT_EQ(formatRational(Q(-7, 20)), "-7/20");
  EXPECT_EQ(formatRational(Q(4)), "4");
}

TEST(Region, RectangleIsCanonicalCounterClockwise) {
  const R r = box("1", "1", "0", "0");
  ASSERT_EQ(r.rings().size(), 1u);
  const auto& ring = r.rings()[0];
  ASSERT_EQ(ring.size(), 4u);
  EXPECT_EQ(ring[0], Pt(Q(0), Q(0)));
  EXPECT_EQ(ring[1], Pt(Q(1), Q(0)));
  EXPECT_EQ(ring[2], Pt(Q(1), Q(1)));
  EXPECT_EQ(area(r), Q(1));
}

TEST(Region, SelfIntersectingBowtieUsesEvenOdd) {
  R::Ring bowtie{Pt(Q(0), Q(0)), Pt(Q(2), Q(2)), Pt(Q(2), Q(0)), Pt(Q(0), Q(2))};
  const R r = R::polygon(bowtie);
  EXPECT_EQ(r.rings().size(), 2u);
  EXPECT_EQ(area(r), Q(2));
}

TEST(Region, CollinearVerticesAreMerged) {
  R::Ring ring{Pt(Q(0), Q(0)), Pt(Q(1), Q(0)), Pt(Q(2), Q(0)), Pt(Q(2), Q(2)),
               Pt(Q(0), Q(2))};
  EXPECT_EQ(R::polygon(ring).rings()[0].size(), 4u);
}

TEST(Boolean, IdentityAndSelfDifference) {
  const R a = box("0", "0", "3", "2");
  EXPECT_EQ(unite(a, R()), a);
  EXPECT_TRUE(subtract(a, a).empty());
  EXPECT_EQ(intersect(a, a), a);
  EXPECT_EQ(unite(a, a), a);
}

TEST(Boolean, OverlappingSquares) {
  const R a = box("0", "0", "2", "2");
  const R b = box("1", "1", "3", "3");
  EXPECT_EQ(area(unite(a, b)), Q(7));
  EXPECT_EQ(area(intersect(a, b)), Q(1));
  EXPECT_EQ(intersect(a, b), box("1", "1", "2", "2"));
  EXPECT_EQ(area(subtract(a, b)), Q(3));
}

TEST(Boolean, HoleRunsClockwise) {
  const R ring = subtract(box("0", "0", "4", "4"), box("1", "1", "3", "3"));
  ASSERT_EQ(ring.rings().size(), 2u);
  EXPECT_EQ(area(ring), Q(12));
  EXPECT_TRUE(containsPoint(ring, Pt(Q(1, 2), Q(2))));
  EXPECT_FALSE(containsPoint(ring, Pt(Q(2), Q(2))));
  EXPECT_TRUE(containsPoint(ring, Pt(Q(1), Q(2))));
}

TEST(Boolean, CheckerboardPinchGivesSeparateRings) {
  const R u = unite(box("0", "0", "1", "1"), box("1", "1", "2", "2"));
  ASSERT_EQ(u.rings().size(), 2u);
  EXPECT_EQ(u.rings()[0].size(), 4u);
  EXPECT_EQ(u.rings()[1].size(), 4u);
}

TEST(Boolean, SharedEdgesMerge) {
  const R u = unite(box("0", "0", "1", "1"), box("1", "0", "2", "1"));
  EXPECT_EQ(u, box("0", "0", "2", "1"));
  EXPECT_TRUE(intersect(box("0", "0", "1", "1"), box("1", "0", "2", "1")).empty());
}

TEST(Boolean, RandomPolygonsSatisfyInclusionExclusion) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const R a = randomPolygon(rng, 3 + trial % 5);
    const R b = randomPolygon(rng, 3 + (trial / 5) % 5);
    const R u = unite(a, b);
    const R i = intersect(a, b);
    EXPECT_EQ(area(u) + area(i), area(a) + area(b));
    EXPECT_EQ(area(subtract(a, b)), area(a) - area(i));
    EXPECT_EQ(unite(subtract(a, b), i), a.empty() ? R() : unite(a, R()));
    EXPECT_EQ(unite(a, b), unite(b, a));
  }
}

TEST(Boolean, IntersectionAgreesWithRasterMembership) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const R a = randomPolygon(rng, 5);
    const R b = randomPolygon(rng, 6);
    const auto i = intersect(a, b).cast<double>();
    const auto ad = a.cast<double>();
    const auto bd = b.cast<double>();
    // Membership at grid points away from every boundary.
    for (int gx = 0; gx < 64; ++gx) {
      for (int gy = 0; gy < 64; ++gy) {
        const Eigen::Vector2d p(-1.3 + gx * 2.6 / 63, -1.3 + gy * 2.6 / 63);
        if (boundaryDistance(ad, p) < 1e-6 || boundaryDistance(bd, p) < 1e-6) continue;
        EXPECT_EQ(containsPoint(i, p), containsPoint(ad, p) && containsPoint(bd, p));
      }
    }
  }
}

TEST(Transform, IdentityScaleAndComposition) {
  const R s = box("-1/2", "-1/2", "1/2", "1/2");
  EXPECT_EQ(transformRegion(LinearTransform2D<Q>::Identity().eval(), s), s);
  EXPECT_EQ(transformRegion(uniformScale(Q(1, 2)), s), box("-1/4", "-1/4", "1/4", "1/4"));
  EXPECT_EQ(composeTransforms(uniformScale(Q(1, 2)), uniformScale(Q(1, 2))),
            uniformScale(Q(1, 4)));
  LinearTransform2D<Q> singular;
  singular << Q(1), Q(2), Q(2), Q(4);
  EXPECT_THROW(transformRegion(singular, s), SingularTransform);
}

TEST(Transform, RandomCompositionAndInverseRoundTrip) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-5, 5);
  auto randomTransform = [&]() {
    for (;;) {
      LinearTransform2D<Q> l;
      l << Q(entry(rng), 3), Q(entry(rng), 4), Q(entry(rng), 5), Q(entry(rng), 2);
      if (l.determinant() != 0) return l;
    }
  };
  for (int trial = 0; trial < 30; ++trial) {
    const R s = randomPolygon(rng, 5);
    const auto l = randomTransform();
    const auto l2 = randomTransform();
    const auto l3 = randomTransform();
    EXPECT_EQ(transformRegion(composeTransforms(l, l2), s),
              transformRegion(l, transformRegion(l2, s)));
    EXPECT_EQ(composeTransforms(composeTransforms(l, l2), l3),
              composeTransforms(l, composeTransforms(l2, l3)));
    EXPECT_EQ(transformRegion(l, transformRegion(invertTransform(l), s)), s);
    const Q det = l.determinant();
    EXPECT_EQ(area(transformRegion(l, s)), area(s) * (det < 0 ? Q(-det) : det));
  }
}

TEST(Containment, BasicCases) {
  const R outer = box("0", "0", "4", "4");
  const R inner = box("1", "1", "2", "2");
  EXPECT_TRUE(regionContains(outer, outer));
  EXPECT_TRUE(regionContains(outer, inner));
  EXPECT_FALSE(regionContains(inner, outer));
  EXPECT_TRUE(regionContains(outer, box("0", "0", "4", "1")));
  EXPECT_FALSE(regionContains(outer, box("3", "3", "5", "5")));
  EXPECT_TRUE(regionContains(outer, R()));
}

TEST(Containment, AgreesWithEmptyDifference) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const R a = randomPolygon(rng, 4 + trial % 3);
    const R b = trial % 4 == 0 ? intersect(a, randomPolygon(rng, 4)) : randomPolygon(rng, 4);
    EXPECT_EQ(regionContains(a, b), subtract(b, a).empty());
  }
}

TEST(Containment, RasterOracle) {
  const R a = box("0", "0", "1", "1");
  EXPECT_TRUE(rasterRegionContains(a, a, 64));
  EXPECT_FALSE(rasterRegionContains(a, box("2", "2", "3", "3"), 64));
  EXPECT_THROW(rasterRegionContains(a, a, 32), std::invalid_argument);
}

TEST(Erode, ShrinksSquareAndRing) {
  const R s = box("0", "0", "1", "1");
  EXPECT_EQ(erode(s, Q(1, 10)), box("1/10", "1/10", "9/10", "9/10"));
  const R ring = subtract(box("0", "0", "4", "4"), box("1", "1", "3", "3"));
  EXPECT_EQ(erode(ring, Q(1, 4)),
            subtract(box("1/4", "1/4", "15/4", "15/4"), box("3/4", "3/4", "13/4", "13/4")));
}

TEST(ConvexHull, OfLShape) {
  const R l = unite(box("0", "0", "2", "1"), box("0", "0", "1", "2"));
  EXPECT_EQ(area(convexHull(l)), Q(7, 2));
}

TEST(Triangulate, CoversAreaWithoutGaps) {
  const R ring = subtract(box("0", "0", "4", "4"), box("1", "1", "3", "2"));
  const auto t = triangulate(ring);
  Q total(0);
  for (const auto& tri : t.triangles) {
    const Q twice = cross<Q>(Pt(tri.b - tri.a), Pt(tri.c - tri.a));
    EXPECT_GT(twice, 0);
    total += twice / 2;
  }
  EXPECT_EQ(total, area(ring));
  EXPECT_EQ(triangulate(box("0", "0", "1", "1")).triangles.size(), 2u);
}

TEST(Prism, RejectsEmptyHeightRange) {
  EXPECT_THROW(Prism3D<Q>(box("0", "0", "1", "1"), Q(1), Q(1)), std::invalid_argument);
}

}  // namespace
}  // namespace madawipol::geometry
