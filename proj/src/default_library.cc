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

#include "madawipol/default_library.h"

#include <cmath>
#include <stdexcept>

namespace madawipol::forms {
namespace {

constexpr std::string_view kAdtText =
    "::WeekendDay   = Sat | Sun\n"
    "::Bool         = True | False\n"
    "::Colour       = Red | Blue | Green\n"
    "::List a       = Cons a (List a) | Nil\n"
    "::Pair a       = MkPair a a\n"
    "::SimpleType a = Simple a\n";

constexpr std::string_view kFlexText =
    "FlexiCons: a <- a\n"
    "SimpleFemCons: <- Colour\n"
    "PolyCons: SimpleType a <- a\n"
    "SimplePairCons: <- a a\n";

struct LibraryEntry {
  const char* name;
  std::vector<int> slots;
  bool polymorphic;
};

const std::vector<LibraryEntry>& entries() {
  static const std::vector<LibraryEntry> kEntries{
      {"Bool", {0, 2, 4, 6}, false},   {"Colour", {1, 3, 5, 7}, false},
      {"WeekendDay", {0, 1, 2, 3}, false}, {"List", {0, 3, 5, 6}, true},
      {"Pair", {1, 2, 4, 7}, true},    {"SimpleType", {4, 5, 6, 7}, true},
  };
  return kEntries;
}

Region tooth(int slot) {
  const Rational inner(2, 5), tip(7, 20), half(3, 100), shift(1, 5);
  const Rational zero(0);
  switch (slot) {
    case 0:
      return Region::rectangle(-inner, -half, -tip, half);
    case 1:
      return Region::rectangle(tip, -half, inner, half);
    case 2:
      return Region::rectangle(-half, -inner, half, -tip);
    case 3:
      return Region::rectangle(-half, tip, half, inner);
    case 4:
      return Region::rectangle(-inner, shift - half, -tip, shift + half);
    case 5:
      return Region::rectangle(tip, -shift - half, inner, -shift + half);
    case 6:
      return Region::rectangle(shift - half, -inner, shift + half, -tip);
    case 7:
      return Region::rectangle(-shift - half, tip, -shift + half, inner);
    default:
      throw std::out_of_range("pin slot must be in 0..7");
  }
}

Placement facing(double x, double y, double z, bool alongX) {
  Placement p;
  p.position = Eigen::Vector3d(x, y, z);
  if (alongX) {
    p.orientation = Eigen::Quaterniond(Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitY()));
  }
  return p;
}

}  // namespace

std::string_view defaultAdtText() { return kAdtText; }
std::string_view defaultFlexText() { return kFlexText; }

Region pinRing(const std::vector<int>& slots) {
  Region ring = geometry::subtract(Region::square(Rational(9, 20)), Region::square(Rational(2, 5)));
  for (int s : slots) ring = geometry::unite(ring, tooth(s));
  return ring;
}

TypeConsForm pinRingForm(const std::vector<int>& slots, bool polymorphic) {
  TypeConsForm f{pinRing(slots), std::nullopt};
  if (polymorphic) {
    f.poly = PolySubspace{Region::square(Rational(7, 20)), geometry::uniformScale(Rational(7, 10))};
  }
  return f;
}

TranslationConfig defaultConfig() {
  TranslationConfig cfg;
  cfg.flexible = true;
  cfg.adtdSet = typesys::DefinitionSet::parse(kAdtText, kFlexText);
  for (const LibraryEntry& e : entries()) {
    cfg.typeConsMapping[e.name] = pinRingForm(e.slots, e.polymorphic);
  }
  const double v = 0.25;
  const Rational width(2);
  for (const std::string& c : cfg.adtdSet.constructorNames()) {
    const typesys::ConstructorSig sig = typesys::constructorSigOf(cfg.adtdSet, c);
    cfg.blockMapping[c] = {
        Prism(Region::rectangle(Rational(0), Rational(-3, 5), width, Rational(3, 5)), Rational(0),
              Rational(1))};
    if (sig.resultType) cfg.resultLocationMapping[c] = facing(-v, 0, 0.5, true);
    std::vector<Placement>& args = cfg.argLocationMapping[c];
    if (sig.argTypes.size() == 1) {
      args.push_back(facing(2.0, 0, 0.5, true));
    } else if (sig.argTypes.size() == 2) {
      args.push_back(facing(1.0, 0, 1.0, false));
      args.push_back(facing(2.0, 0, 0.5, true));
    }
  }
  return cfg;
}

}  // namespace madawipol::forms
