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

#include "madawipol/assembly.h"

#include <gtest/gtest.h>

#include "madawipol/default_library.h"
#include "madawipol/snapshot.h"

namespace madawipol::assembly {
namespace {

using textlang::parseAds;
using textlang::parseTypeExpr;
using textlang::printAds;

std::shared_ptr<forms::FormCompiler> defaultCompiler() {
  static auto compiler =
      std::make_shared<forms::FormCompiler>(std::make_shared<const forms::TranslationConfig>(forms::defaultConfig()));
  return compiler;
}

JointRef result(InstanceId id) { return {id, JointRef::kResult}; }
JointRef arg(InstanceId id, int i) { return {id, i}; }

bool typeIs(const Assembly& a, const JointRef& r, const char* text) {
  return typesys::alphaEquivalent(a.jointType(r), parseTypeExpr(text));
}

TEST(JointRefTest, FormatAndParse) {
  EXPECT_EQ(formatJointRef(result(5)), "5:result");
  EXPECT_EQ(formatJointRef(arg(5, 1)), "5:arg1");
  EXPECT_EQ(parseJointRef("12:arg3"), arg(12, 3));
  EXPECT_EQ(parseJointRef("7:result"), result(7));
  for (const char* bad : {"", "5", ":result", "5:", "5:arg", "5:argx", "x:result", "5:arg-1", "5:res"}) {
    EXPECT_THROW(parseJointRef(bad), std::invalid_argument) << bad;
  }
}

TEST(AssemblyTest, FreshInstancesAreGeneral) {
  Assembly a(defaultCompiler());
  const InstanceId cons = a.addMConstructor("Cons");
  EXPECT_TRUE(typeIs(a, result(cons), "List a"));
  EXPECT_TRUE(typeIs(a, arg(cons, 0), "a"));
  EXPECT_TRUE(typeIs(a, arg(cons, 1), "List a"));
  const InstanceId other = a.addMConstructor("Cons");
  EXPECT_NE(a.jointType(arg(cons, 0)), a.jointType(arg(other, 0)));
  const InstanceId annotated = a.addMConstructor("Cons", parseTypeExpr("List Bool"));
  EXPECT_TRUE(typeIs(a, arg(annotated, 0), "Bool"));
  EXPECT_FALSE(a.instances().at(a.addMConstructor("SimpleFemCons")).result.has_value());
}

TEST(AssemblyTest, AddErrors) {
  Assembly a(defaultCompiler());
  try {
    a.addMConstructor("Nope");
    FAIL();
  } catch (const AssemblyError& e) {
    EXPECT_EQ(e.kind(), AssemblyErrorKind::kUnknownConstructor);
  }
  try {
    a.addMConstructor("Cons", parseTypeExpr("Bool"));
    FAIL();
  } catch (const AssemblyError& e) {
    EXPECT_EQ(e.kind(), AssemblyErrorKind::kNotAnInstance);
  }
  EXPECT_TRUE(a.instances().empty());
}

TEST(AssemblyTest, RedIntoFlexiConsPropagates) {
  Assembly a(defaultCompiler());
  const InstanceId flexi = a.addMConstructor("FlexiCons");
  const InstanceId red = a.addMConstructor("Red");
  const JoinOutcome r = a.tryJoin(result(red), arg(flexi, 0));
  ASSERT_TRUE(r.joined);
  EXPECT_TRUE(typeIs(a, result(flexi), "Colour"));
  EXPECT_TRUE(typeIs(a, arg(flexi, 0), "Colour"));
  EXPECT_EQ(r.delta.size(), 2u);
  EXPECT_TRUE(r.delta.count(result(flexi)));

  const TypeDelta back = a.unjoin(result(red));
  EXPECT_EQ(back.size(), 2u);
  EXPECT_TRUE(typeIs(a, result(flexi), "a"));
  EXPECT_TRUE(typeIs(a, arg(flexi, 0), "a"));
  EXPECT_EQ(a.jointType(result(flexi)), a.jointType(arg(flexi, 0)));
}

TEST(AssemblyTest, SatDoesNotFitListOfBooleans) {
  Assembly a(defaultCompiler());
  const InstanceId cons = a.addMConstructor("Cons", parseTypeExpr("List Bool"));
  const InstanceId sat = a.addMConstructor("Sat");
  const nlohmann::json before = snapshot::snapshotJson(a);
  const JoinOutcome r = a.tryJoin(result(sat), arg(cons, 0));
  EXPECT_FALSE(r.joined);
  EXPECT_TRUE(r.delta.empty());
  EXPECT_EQ(snapshot::snapshotJson(a), before);
}

TEST(AssemblyTest, StructuralErrors) {
  Assembly a(defaultCompiler());
  const InstanceId c1 = a.addMConstructor("Cons");
  const InstanceId c2 = a.addMConstructor("Cons");
  const InstanceId t = a.addMConstructor("True");
  auto kindOf = [&](auto&& f) {
    try {
      f();
    } catch (const AssemblyError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error";
    return AssemblyErrorKind::kMultipleRoots;
  };
  EXPECT_EQ(kindOf([&] { a.tryJoin(result(c1), result(c2)); }), AssemblyErrorKind::kSameGender);
  EXPECT_EQ(kindOf([&] { a.tryJoin(arg(c1, 0), arg(c2, 0)); }), AssemblyErrorKind::kSameGender);
  EXPECT_EQ(kindOf([&] { a.tryJoin(result(t), arg(c1, 2)); }), AssemblyErrorKind::kUnknownJoint);
  EXPECT_EQ(kindOf([&] { a.tryJoin(result(99), arg(c1, 0)); }), AssemblyErrorKind::kUnknownJoint);
  EXPECT_EQ(kindOf([&] { a.jointType(arg(t, 0)); }), AssemblyErrorKind::kUnknownJoint);
  ASSERT_TRUE(a.tryJoin(result(c2), arg(c1, 1)).joined);
  EXPECT_EQ(kindOf([&] { a.tryJoin(result(c1), arg(c2, 1)); }), AssemblyErrorKind::kCycleRejected);
  EXPECT_EQ(kindOf([&] { a.tryJoin(result(t), arg(c1, 1)); }), AssemblyErrorKind::kOccupiedJoint);
  EXPECT_EQ(kindOf([&] { a.unjoin(result(t)); }), AssemblyErrorKind::kNotJoined);
  EXPECT_EQ(kindOf([&] { a.unjoin(arg(c1, 1)); }), AssemblyErrorKind::kNotJoined);
}

TEST(AssemblyTest, SwappedArgumentsAreAccepted) {
  Assembly a(defaultCompiler());
  const InstanceId flexi = a.addMConstructor("FlexiCons");
  const InstanceId red = a.addMConstructor("Red");
  EXPECT_TRUE(a.tryJoin(arg(flexi, 0), result(red)).joined);
  EXPECT_EQ(a.partnerOf(result(red)), arg(flexi, 0));
}

TEST(AssemblyTest, UnjoinInChainResetsOnlySeveredSide) {
  Assembly a(defaultCompiler());
  const InstanceId outer = a.addMConstructor("FlexiCons");
  const InstanceId inner = a.addMConstructor("FlexiCons");
  const InstanceId red = a.addMConstructor("Red");
  ASSERT_TRUE(a.tryJoin(result(red), arg(inner, 0)).joined);
  ASSERT_TRUE(a.tryJoin(result(inner), arg(outer, 0)).joined);
  EXPECT_TRUE(typeIs(a, result(outer), "Colour"));
  a.unjoin(result(inner));
  EXPECT_TRUE(typeIs(a, result(outer), "a"));
  EXPECT_TRUE(typeIs(a, arg(outer, 0), "a"));
  EXPECT_TRUE(typeIs(a, result(inner), "Colour"));
  EXPECT_TRUE(typeIs(a, arg(inner, 0), "Colour"));
}

// Blocks numbered as in the list-of-lists figure: Cons3 (Cons2 Red1 _)
// (Cons4 (Cons5 _ _) _).
class ListOfListsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    red = a.addMConstructor("Red");
    c2 = a.addMConstructor("Cons");
    c3 = a.addMConstructor("Cons");
    c4 = a.addMConstructor("Cons");
    c5 = a.addMConstructor("Cons");
    ASSERT_TRUE(a.tryJoin(result(c5), arg(c4, 0)).joined);
    ASSERT_TRUE(a.tryJoin(result(c4), arg(c3, 1)).joined);
    ASSERT_TRUE(a.tryJoin(result(c2), arg(c3, 0)).joined);
    ASSERT_TRUE(a.tryJoin(result(red), arg(c2, 0)).joined);
  }

  bool fitsFresh(const char* consName, const std::optional<TypeExpr>& annotation, const JointRef& female) {
    Assembly probe = a;
    const InstanceId id = probe.addMConstructor(consName, annotation);
    return probe.tryJoin(result(id), female).joined;
  }

  Assembly a{defaultCompiler()};
  InstanceId red = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
};

TEST_F(ListOfListsTest, PropagatesThroughTheStrip) {
  EXPECT_TRUE(typeIs(a, result(c2), "List Colour"));
  EXPECT_TRUE(typeIs(a, arg(c3, 0), "List Colour"));
  EXPECT_TRUE(typeIs(a, arg(c3, 1), "List (List Colour)"));
  EXPECT_TRUE(typeIs(a, arg(c4, 0), "List Colour"));
  EXPECT_TRUE(typeIs(a, arg(c5, 0), "Colour"));
  const std::vector<Ads> back = readBack(a);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(printAds(back[0]), "Cons (Cons Red _) (Cons (Cons _ _) _)");
}

TEST_F(ListOfListsTest, OnlyColourFitsTheLeftFemaleOfFive) {
  EXPECT_FALSE(fitsFresh("True", std::nullopt, arg(c5, 0)));
  EXPECT_FALSE(fitsFresh("Nil", std::nullopt, arg(c5, 0)));
  EXPECT_FALSE(fitsFresh("Nil", parseTypeExpr("List Bool"), arg(c5, 0)));
  EXPECT_FALSE(fitsFresh("Nil", parseTypeExpr("List (List Bool)"), arg(c5, 0)));
  EXPECT_TRUE(fitsFresh("Blue", std::nullopt, arg(c5, 0)));
}

TEST_F(ListOfListsTest, ReplacingRedByTrue) {
  a.unjoin(result(red));
  const InstanceId t = a.addMConstructor("True");
  ASSERT_TRUE(a.tryJoin(result(t), arg(c2, 0)).joined);
  EXPECT_TRUE(fitsFresh("True", std::nullopt, arg(c5, 0)));
  EXPECT_FALSE(fitsFresh("Red", std::nullopt, arg(c5, 0)));
}

TEST_F(ListOfListsTest, ReplacingRedByCons) {
  a.unjoin(result(red));
  const InstanceId c6 = a.addMConstructor("Cons");
  ASSERT_TRUE(a.tryJoin(result(c6), arg(c2, 0)).joined);
  EXPECT_TRUE(typeIs(a, result(c3), "List (List (List a))"));
  EXPECT_TRUE(typeIs(a, result(c4), "List (List (List a))"));

  const InstanceId holder = a.addMConstructor("Cons", parseTypeExpr("List (List (List (List (List Colour))))"));
  ASSERT_TRUE(typeIs(a, arg(holder, 0), "List (List (List (List Colour)))"));
  ASSERT_TRUE(a.tryJoin(result(c3), arg(holder, 0)).joined);
  EXPECT_TRUE(typeIs(a, arg(c2, 0), "List (List Colour)"));
}

TEST(TranslateTest, RoundTrips) {
  for (const char* text : {"True", "Cons True Nil", "Cons (Cons Red _) (Cons (Cons _ _) _)", "FlexiCons (FlexiCons Red)",
                           "Cons:[List Bool] _ _", "MkPair _ Sat", "PolyCons (Simple Blue)", "SimpleFemCons Green"}) {
    const Ads ads = parseAds(text);
    const std::optional<Assembly> a = translateAds(defaultCompiler(), ads);
    ASSERT_TRUE(a.has_value()) << text;
    const std::vector<Ads> back = readBack(*a);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0], ads) << text;
  }
}

TEST(TranslateTest, IllTypedIsUnjoinable) {
  for (const char* text : {"Cons Sat (Cons True Nil)", "FlexiCons:[Bool] Red", "MkPair True Red",
                           "SimpleFemCons True", "Cons Nil (Cons True Nil)", "PolyCons (Simple (Cons Red Nil)) "}) {
    const Ads ads = parseAds(text);
    EXPECT_EQ(translateAds(defaultCompiler(), ads).has_value(), typesys::isWellTyped(forms::defaultConfig().adtdSet, ads))
        << text;
  }
  EXPECT_THROW(translateAds(defaultCompiler(), Ads::hole()), std::invalid_argument);
}

TEST(AssemblyTest, PolyConsIntoPolyCons) {
  Assembly a(defaultCompiler());
  const InstanceId outer = a.addMConstructor("PolyCons");
  const InstanceId inner = a.addMConstructor("PolyCons");
  ASSERT_TRUE(a.tryJoin(result(inner), arg(outer, 0)).joined);
  EXPECT_TRUE(typeIs(a, result(outer), "SimpleType (SimpleType a)"));
  EXPECT_TRUE(typeIs(a, arg(inner, 0), "a"));
}

TEST(TranslateTest, ShapeOfTranslation) {
  const std::optional<Assembly> a = translateAds(defaultCompiler(), parseAds("Cons True Nil"));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->instances().size(), 3u);
  EXPECT_EQ(a->joins().size(), 2u);
  const InstanceId root = a->components().at(0).at(0);
  EXPECT_TRUE(typeIs(*a, result(root), "List Bool"));

  const std::optional<Assembly> open = translateAds(defaultCompiler(), parseAds("Cons _ (Cons True Nil)"));
  ASSERT_TRUE(open);
  int openFemales = 0;
  for (const auto& [id, inst] : open->instances()) {
    for (std::size_t i = 0; i < inst.args.size(); ++i) {
      const JointRef r = arg(id, static_cast<int>(i));
      if (!open->partnerOf(r)) {
        ++openFemales;
        EXPECT_TRUE(typeIs(*open, r, "Bool"));
      }
    }
  }
  EXPECT_EQ(openFemales, 1);
}

TEST(ReadBackTest, EmptyAssembly) { EXPECT_TRUE(readBack(Assembly(defaultCompiler())).empty()); }

TEST(ReadBackTest, OneStructurePerComponentInIdOrder) {
  Assembly a(defaultCompiler());
  a.addMConstructor("True");
  a.addMConstructor("Nil");
  const std::vector<Ads> back = readBack(a);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(printAds(back[0]), "True");
  EXPECT_EQ(printAds(back[1]), "Nil");
}

TEST(SnapshotTest, EmptyAndShared) {
  Assembly a(defaultCompiler());
  EXPECT_EQ(snapshot::snapshotJson(a).dump(), R"({"instances":[],"joins":[]})");
  const InstanceId c = a.addMConstructor("Cons");
  const nlohmann::json s = snapshot::snapshotJson(a);
  EXPECT_EQ(s["instances"][0]["joints"][0]["type"], "List a");
  EXPECT_EQ(s["instances"][0]["joints"][1]["type"], "a");
  EXPECT_EQ(s["instances"][0]["joints"][2]["type"], "List a");
  EXPECT_EQ(s["instances"][0]["joints"][0]["ref"], formatJointRef(result(c)));
}

TEST(BlockTransformsTest, ChildBlockAbutsParentFace) {
  const std::optional<Assembly> a = translateAds(defaultCompiler(), parseAds("FlexiCons Red"));
  ASSERT_TRUE(a);
  const auto t = blockTransforms(*a);
  // FlexiCons is instance 1, Red instance 2; the default female sits on the
  // x = 2 face and the male reaches in from x = 0.
  EXPECT_NEAR((t.at(2).translation() - t.at(1).translation()).x(), 2.0, 1e-12);
  EXPECT_NEAR((t.at(2).translation() - t.at(1).translation()).norm(), 2.0, 1e-12);
}

}  // namespace
}  // namespace madawipol::assembly
