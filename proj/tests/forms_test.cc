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

#include "madawipol/forms.h"

#include <gtest/gtest.h>

#include <fstream>
#include <memory>

#include "madawipol/config_io.h"
#include "madawipol/default_library.h"

namespace madawipol::forms {
namespace {

using geometry::area;
using geometry::regionContains;

TypeExpr T(const char* s) { return textlang::parseTypeExpr(s); }

const TranslationConfig& cfg() {
  static const TranslationConfig c = defaultConfig();
  return c;
}

bool fits(const char* male, const char* female) {
  return maleFitsFemale(typeFormProcedure(cfg(), T(male)), typeFormProcedure(cfg(), T(female)), cfg().edgeEpsilon);
}

TEST(TypeFormTest, GroundAndVariable) {
  const TypeForm b = typeFormProcedure(cfg(), T("Bool"));
  EXPECT_EQ(b.rigid, pinRing({0, 2, 4, 6}));
  EXPECT_FALSE(b.poly);
  const TypeForm v = typeFormProcedure(cfg(), T("a"));
  EXPECT_TRUE(v.rigid.empty());
  ASSERT_TRUE(v.poly);
  EXPECT_EQ(v.poly->surface, cfg().alignment.outer());
  EXPECT_EQ(v.poly->argTransform, Transform::Identity());
}

TEST(TypeFormTest, NestedComposition) {
  const TypeForm la = typeFormProcedure(cfg(), T("List a"));
  const TypeConsForm& list = cfg().typeConsMapping.at("List");
  EXPECT_EQ(la.rigid, list.rigid);
  ASSERT_TRUE(la.poly);
  EXPECT_EQ(la.poly->surface, list.poly->surface);

  const TypeForm lb = typeFormProcedure(cfg(), T("List Bool"));
  const Transform& ta = list.poly->argTransform;
  EXPECT_EQ(lb.rigid, geometry::unite(list.rigid, geometry::transformRegion(ta, pinRing({0, 2, 4, 6}))));
  EXPECT_FALSE(lb.poly);

  const TypeForm lla = typeFormProcedure(cfg(), T("List (List a)"));
  ASSERT_TRUE(lla.poly);
  EXPECT_EQ(lla.poly->argTransform, geometry::composeTransforms(ta, ta));
  EXPECT_EQ(lla.poly->surface, geometry::transformRegion(ta, list.poly->surface));
  EXPECT_TRUE(regionContains(lla.rigid, la.rigid));
}

TEST(TypeFormTest, Errors) {
  try {
    typeFormProcedure(cfg(), T("Maybe Bool"));
    FAIL();
  } catch (const FormError& e) {
    EXPECT_EQ(e.kind(), FormErrorKind::kUnmappedTypeConstructor);
  }
  try {
    typeFormProcedure(cfg(), T("Bool Bool"));
    FAIL();
  } catch (const FormError& e) {
    EXPECT_EQ(e.kind(), FormErrorKind::kArityMismatch);
  }
}

TEST(BottomRegionTest, OpenSurface) {
  const TypeForm la = typeFormProcedure(cfg(), T("List a"));
  const Region bottom = femaleBottomRegion(la, cfg().edgeEpsilon);
  EXPECT_TRUE(regionContains(bottom, la.rigid));
  EXPECT_FALSE(regionContains(bottom, la.poly->surface));
  EXPECT_LT(area(bottom), area(geometry::unite(la.rigid, la.poly->surface)));
  const TypeForm b = typeFormProcedure(cfg(), T("Bool"));
  EXPECT_EQ(femaleBottomRegion(b, cfg().edgeEpsilon), b.rigid);
}

TEST(FitTest, PaperVerdicts) {
  EXPECT_TRUE(fits("List a", "a"));
  EXPECT_FALSE(fits("List (List a)", "List Bool"));
  EXPECT_FALSE(fits("List (List Bool)", "List (List Colour)"));
  EXPECT_TRUE(fits("List (List a)", "List a"));
  EXPECT_TRUE(fits("Bool", "Bool"));
  EXPECT_FALSE(fits("Bool", "Colour"));
  EXPECT_TRUE(fits("Pair Bool", "Pair a"));
  EXPECT_TRUE(fits("Pair a", "Pair Bool"));
  EXPECT_FALSE(fits("Pair Colour", "Pair Bool"));
  EXPECT_TRUE(fits("a", "a"));
}

TEST(FitTest, CompilerAgreesWithFreeFunction) {
  FormCompiler compiler(std::make_shared<const TranslationConfig>(cfg()));
  for (const char* m : {"Bool", "List a", "List Bool", "Pair (List a)", "SimpleType Colour"}) {
    for (const char* f : {"a", "Bool", "List a", "List Colour", "Pair a", "SimpleType a"}) {
      EXPECT_EQ(compiler.fits(T(m), T(f)), fits(m, f)) << m << " => " << f;
      EXPECT_EQ(compiler.fits(T(m), T(f)), fits(m, f)) << m << " => " << f;
    }
  }
}

TEST(FormToTypeTest, RoundTrip) {
  for (const char* t : {"Bool", "a", "List a", "List (Pair Colour)", "SimpleType (SimpleType b)"}) {
    EXPECT_TRUE(typesys::alphaEquivalent(formToType(cfg(), typeFormProcedure(cfg(), T(t))), T(t))) << t;
  }
  TypeForm bare = typeFormProcedure(cfg(), T("Bool"));
  bare.trace.reset();
  try {
    formToType(cfg(), bare);
    FAIL();
  } catch (const FormError& e) {
    EXPECT_EQ(e.kind(), FormErrorKind::kUnrecognizedForm);
  }
}

TEST(JointFormTest, MaleAndFemale) {
  const TypeForm la = typeFormProcedure(cfg(), T("List a"));
  const JointForm3D m = maleJointForm3D(cfg(), la);
  const JointForm3D f = femaleJointForm3D(cfg(), la);
  EXPECT_EQ(m.gender, Gender::kMale);
  EXPECT_EQ(f.gender, Gender::kFemale);
  EXPECT_FALSE(m.skirt);
  EXPECT_TRUE(f.skirt);
  ASSERT_TRUE(m.surface && f.surface);
  EXPECT_EQ(m.surfaceZ, cfg().vJntSz / 2);
  EXPECT_EQ(f.surfaceZ, -cfg().vJntSz / 2);
  for (const RolePrism& p : m.solids) EXPECT_GE(p.prism.zLow, 0);
  for (const RolePrism& p : f.solids) EXPECT_LE(p.prism.zHigh, 0);
  bool hasFrame = false;
  for (const RolePrism& p : m.solids) hasFrame |= p.role == SolidRole::kAlignmentFrame;
  EXPECT_TRUE(hasFrame);
  EXPECT_FALSE(maleJointForm3D(cfg(), typeFormProcedure(cfg(), T("Bool"))).surface);
  EXPECT_STREQ(genderName(Gender::kFemale), "female");
}

TEST(ValidateTest, DefaultLibraryIsClean) { EXPECT_TRUE(validateConfig(cfg()).empty()); }

TEST(ValidateTest, DuplicateFormsMutuallyFit) {
  TranslationConfig c = cfg();
  c.typeConsMapping["Colour"] = c.typeConsMapping["Bool"];
  const auto v = validateConfig(c);
  ASSERT_FALSE(v.empty());
  bool found = false;
  for (const Violation& x : v) {
    if (x.kind == ViolationKind::kMutualFit) {
      found = true;
      EXPECT_EQ(x.subjects, (std::vector<std::string>{"Bool", "Colour"}));
    }
  }
  EXPECT_TRUE(found);
}

TEST(ValidateTest, MissingBlockMapping) {
  TranslationConfig c = cfg();
  c.blockMapping.erase("Nil");
  const auto v = validateConfig(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kMissingMapping);
  EXPECT_EQ(v[0].subjects, std::vector<std::string>{"Nil"});
  EXPECT_STREQ(violationKindName(v[0].kind), "MissingMapping");
}

TEST(ConfigIoTest, JsonRoundTrip) {
  const nlohmann::json j = configToJson(cfg());
  const TranslationConfig back = configFromJson(j);
  EXPECT_EQ(configToJson(back), j);
  EXPECT_EQ(back.vJntSz, cfg().vJntSz);
  EXPECT_EQ(back.typeConsMapping.at("List").rigid, cfg().typeConsMapping.at("List").rigid);
  EXPECT_THROW(configFromJson(nlohmann::json{{"vJntSz", "x"}}), ConfigError);
  EXPECT_EQ(regionFromJson(regionToJson(pinRing({1, 5}))), pinRing({1, 5}));
}

TEST(ConfigIoTest, ShippedDefaultMatchesLibrary) {
  std::ifstream in(MADAWIPOL_SOURCE_DIR "/configs/default.json");
  ASSERT_TRUE(in);
  EXPECT_EQ(nlohmann::json::parse(in), configToJson(cfg()));
  EXPECT_EQ(configToJson(loadConfigFile(MADAWIPOL_SOURCE_DIR "/configs/default.json")), configToJson(cfg()));
}

}  // namespace
}  // namespace madawipol::forms
