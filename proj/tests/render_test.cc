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

#include "madawipol/render.h"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "madawipol/default_library.h"

namespace madawipol::render {
namespace {

using textlang::parseAds;
using textlang::parseTypeExpr;

std::shared_ptr<forms::FormCompiler> defaultCompiler() {
  static auto compiler =
      std::make_shared<forms::FormCompiler>(std::make_shared<const forms::TranslationConfig>(forms::defaultConfig()));
  return compiler;
}

forms::JointForm3D joint(forms::Gender g, const char* type) {
  const auto c = defaultCompiler();
  const auto tf = c->typeForm(parseTypeExpr(type));
  return g == forms::Gender::kMale ? forms::maleJointForm3D(c->config(), *tf)
                                   : forms::femaleJointForm3D(c->config(), *tf);
}

int countRole(const CrossSection& cs, StrokeRole role) {
  int n = 0;
  for (const Stroke& s : cs.strokes) n += s.role == role;
  return n;
}

// Every undirected edge is used by exactly two triangles, once in each
// direction.
bool closedAndOriented(const MeshGroup& g) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : g.triangles) {
    for (int i = 0; i < 3; ++i) ++directed[{t[i], t[(i + 1) % 3]}];
  }
  for (const auto& [e, n] : directed) {
    if (n != 1) return false;
    auto back = directed.find({e.second, e.first});
    if (back == directed.end() || back->second != 1) return false;
  }
  return true;
}

double signedVolume(const MeshGroup& g) {
  double v = 0;
  for (const auto& t : g.triangles) {
    v += g.vertices[t[0]].dot(g.vertices[t[1]].cross(g.vertices[t[2]])) / 6;
  }
  return v;
}

TEST(SliceRegionTest, IntervalsAlongBothAxes) {
  const Region ring = geometry::subtract(Region::square(Rational(2)), Region::square(Rational(1)));
  const auto h = sliceRegion(ring, 1, Rational(0));
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], std::make_pair(Rational(-2), Rational(-1)));
  EXPECT_EQ(h[1], std::make_pair(Rational(1), Rational(2)));
  const auto v = sliceRegion(ring, 0, Rational(3, 2));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], std::make_pair(Rational(-2), Rational(2)));
  EXPECT_TRUE(sliceRegion(ring, 1, Rational(5)).empty());
}

TEST(CrossSectionTest, MaleBoolHasNoColouredLines) {
  const CrossSection cs = crossSection(joint(forms::Gender::kMale, "Bool"));
  EXPECT_EQ(countRole(cs, StrokeRole::kPolySurfaceRed), 0);
  EXPECT_EQ(countRole(cs, StrokeRole::kPolySurfaceBlue), 0);
  EXPECT_GT(countRole(cs, StrokeRole::kRigid), 0);
  for (const Stroke& s : cs.strokes) {
    for (const Eigen::Vector2d& p : s.points) {
      EXPECT_GE(p.y(), 0);
    }
  }
  const std::string svg = toSvg(cs);
  EXPECT_EQ(svg.find("#CC2222"), std::string::npos);
  EXPECT_EQ(svg.find("-0.0000"), std::string::npos);
}

TEST(CrossSectionTest, SurfaceLinesAreOffsetPairs) {
  const CrossSection cs = crossSection(joint(forms::Gender::kFemale, "List a"));
  ASSERT_EQ(countRole(cs, StrokeRole::kPolySurfaceRed), 1);
  ASSERT_EQ(countRole(cs, StrokeRole::kPolySurfaceBlue), 1);
  EXPECT_EQ(countRole(cs, StrokeRole::kSkirt), 2);
  double red = 0, blue = 0;
  for (const Stroke& s : cs.strokes) {
    if (s.role == StrokeRole::kPolySurfaceRed) red = s.points[0].y();
    if (s.role == StrokeRole::kPolySurfaceBlue) blue = s.points[0].y();
  }
  EXPECT_NEAR((red + blue) / 2, -0.125, 1e-12);
  EXPECT_NEAR(blue - red, 0.008, 1e-12);
}

TEST(CrossSectionTest, FlexiConsShowsTwoJointsWithLines) {
  assembly::Assembly a(defaultCompiler());
  a.addMConstructor("FlexiCons");
  const CrossSection cs = crossSection(a);
  EXPECT_EQ(countRole(cs, StrokeRole::kPolySurfaceRed), 2);
  EXPECT_EQ(countRole(cs, StrokeRole::kPolySurfaceBlue), 2);
  EXPECT_EQ(countRole(cs, StrokeRole::kBlock), 1);
}

TEST(CrossSectionTest, ListOfListsStripIsDeterministic) {
  const auto ads = parseAds("Cons (Cons Red _) (Cons (Cons _ _) _)");
  const auto a1 = assembly::translateAds(defaultCompiler(), ads);
  const auto a2 = assembly::translateAds(defaultCompiler(), ads);
  ASSERT_TRUE(a1 && a2);
  const CrossSection cs = crossSection(*a1);
  EXPECT_EQ(countRole(cs, StrokeRole::kBlock), 5);
  // Four Cons blocks with three membranes each.
  EXPECT_EQ(countRole(cs, StrokeRole::kPolySurfaceRed), 12);
  EXPECT_EQ(toSvg(cs), crossSectionSvg(*a2));
}

TEST(CrossSectionTest, PlaneMisses) {
  try {
    crossSection(joint(forms::Gender::kMale, "Bool"), CutPlane{1, 5.0});
    FAIL();
  } catch (const RenderError& e) {
    EXPECT_EQ(e.kind(), RenderErrorKind::kPlaneMisses);
  }
  assembly::Assembly empty(defaultCompiler());
  EXPECT_THROW(crossSection(empty), RenderError);
  EXPECT_THROW(crossSection(joint(forms::Gender::kMale, "Bool"), CutPlane{2, 0}), std::invalid_argument);
}

TEST(CrossSectionTest, OtherAxisCutsJointsToo) {
  const CrossSection cs = crossSection(joint(forms::Gender::kMale, "List a"), CutPlane{0, 0.0});
  EXPECT_EQ(countRole(cs, StrokeRole::kPolySurfaceBlue), 1);
}

TEST(MeshTest, UnitCube) {
  const Prism cube(Region::rectangle(Rational(0), Rational(0), Rational(1), Rational(1)), Rational(0), Rational(1));
  const MeshGroup g = prismMesh(cube, "cube");
  EXPECT_EQ(g.vertices.size(), 8u);
  EXPECT_EQ(g.triangles.size(), 12u);
  EXPECT_TRUE(closedAndOriented(g));
  EXPECT_NEAR(signedVolume(g), 1.0, 1e-12);
}

TEST(MeshTest, PrismWithHoleIsWatertight) {
  const Region ring = geometry::subtract(Region::square(Rational(2)), Region::square(Rational(1)));
  const MeshGroup g = prismMesh(Prism(ring, Rational(0), Rational(1, 2)), "ring");
  EXPECT_TRUE(closedAndOriented(g));
  EXPECT_NEAR(signedVolume(g), 6.0, 1e-12);
}

TEST(MeshTest, MaleListJointSolidsAndSurface) {
  const forms::JointForm3D j = joint(forms::Gender::kMale, "List a");
  const std::vector<MeshGroup> groups = jointMesh(j);
  ASSERT_EQ(groups.size(), j.solids.size() + 1);
  for (std::size_t i = 0; i < j.solids.size(); ++i) {
    EXPECT_TRUE(closedAndOriented(groups[i])) << groups[i].name;
    const double expected = geometry::toDouble(geometry::area(j.solids[i].prism.crossSection) *
                                               (j.solids[i].prism.zHigh - j.solids[i].prism.zLow));
    EXPECT_NEAR(signedVolume(groups[i]), expected, 1e-9) << groups[i].name;
  }
  const MeshGroup& surface = groups.back();
  EXPECT_EQ(surface.name, "surface");
  for (const Eigen::Vector3d& v : surface.vertices) EXPECT_DOUBLE_EQ(v.z(), 0.125);
  EXPECT_EQ(surface.triangles.size(), 2u);
}

TEST(MeshTest, FemaleBoolHasBottomCap) {
  const forms::JointForm3D j = joint(forms::Gender::kFemale, "Bool");
  const std::vector<MeshGroup> groups = jointMesh(j);
  bool capAtBottom = false;
  for (const MeshGroup& g : groups) {
    EXPECT_TRUE(closedAndOriented(g)) << g.name;
    if (g.name.rfind("cap", 0) == 0) {
      std::set<double> zs;
      for (const auto& v : g.vertices) zs.insert(v.z());
      capAtBottom = zs == std::set<double>{-0.28125, -0.25};
    }
  }
  EXPECT_TRUE(capAtBottom);
}

TEST(MeshTest, ObjFormat) {
  const Prism cube(Region::rectangle(Rational(0), Rational(0), Rational(1), Rational(1)), Rational(0), Rational(1));
  const std::string obj = toObj({prismMesh(cube, "a"), prismMesh(cube, "b")}, "cubes");
  EXPECT_EQ(obj.rfind("# Wavefront OBJ written by madawipol\no cubes\ng a\nv 0.000000 0.000000 0.000000\n", 0), 0u);
  EXPECT_NE(obj.find("\ng b\n"), std::string::npos);
  EXPECT_NE(obj.find("f 9 "), std::string::npos);
  EXPECT_EQ(obj.find(" 17"), std::string::npos);
}

TEST(DeformationTest, TwoRegionLaw) {
  const Region surface = Region::square(Rational(7, 20));
  const Region pushed = Region::rectangle(Rational(-1, 10), Rational(-1, 10), Rational(1, 10), Rational(1, 10));
  const DeformationProfile rest = deformationProfile(surface, pushed, Rational(0), Rational(1, 4));
  EXPECT_EQ(rest.pushedHeight(), 0);
  EXPECT_EQ(rest.untouchedHeight(), 0);
  const DeformationProfile half = deformationProfile(surface, pushed, Rational(1, 2), Rational(1, 4));
  EXPECT_EQ(half.pushedHeight(), Rational(-1, 8));
  EXPECT_EQ(half.untouchedHeight(), Rational(1, 8));
  EXPECT_EQ(*half.heightAt({Rational(0), Rational(0)}), Rational(-1, 8));
  EXPECT_EQ(*half.heightAt({Rational(1, 10), Rational(0)}), Rational(-1, 8));
  EXPECT_EQ(*half.heightAt({Rational(3, 10), Rational(0)}), Rational(1, 8));
  EXPECT_FALSE(half.heightAt({Rational(1), Rational(0)}).has_value());
  EXPECT_EQ(geometry::area(half.untouched) + geometry::area(half.pushed), geometry::area(surface));

  const std::vector<MeshGroup> mesh = profileMesh(half);
  ASSERT_EQ(mesh.size(), 3u);
  EXPECT_EQ(mesh[1].name, "skirt");
  EXPECT_EQ(profileMesh(rest).size(), 2u);
}

TEST(DeformationTest, Errors) {
  const Region surface = Region::square(Rational(1));
  try {
    deformationProfile(surface, Region::square(Rational(2)), Rational(1), Rational(1));
    FAIL();
  } catch (const RenderError& e) {
    EXPECT_EQ(e.kind(), RenderErrorKind::kRegionOutsideSurface);
  }
  EXPECT_THROW(deformationProfile(surface, surface, Rational(3, 2), Rational(1)), std::invalid_argument);
  EXPECT_THROW(deformationProfile(surface, surface, Rational(-1), Rational(1)), std::invalid_argument);
}

}  // namespace
}  // namespace madawipol::render
