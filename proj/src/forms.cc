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

#include <algorithm>
#include <cmath>

namespace madawipol::forms {
namespace {

using geometry::regionContains;
using geometry::transformRegion;
using geometry::unite;

Rational det(const Transform& t) { return t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0); }

std::string typeKey(const TypeExpr& t) {
  return textlang::printType(typesys::normalizeVars(t));
}

void checkPlacement(const std::string& where, const Placement& p, std::vector<Violation>& out) {
  if (std::abs(p.orientation.norm() - 1.0) > 1e-9) {
    out.push_back({ViolationKind::kStructural, {where}, where + ": orientation is not a unit quaternion"});
  }
  if (!p.position.allFinite()) {
    out.push_back({ViolationKind::kStructural, {where}, where + ": position is not finite"});
  }
}

}  // namespace

FormError::FormError(FormErrorKind kind, const std::string& detail)
    : std::runtime_error(detail), kind_(kind) {}

TypeForm variableForm(const TranslationConfig& cfg, const std::string& name) {
  TypeForm tf;
  tf.poly = PolySubspace{cfg.alignment.outer(), Transform::Identity()};
  tf.trace = FormTrace{{}, name};
  return tf;
}

TypeForm typeFormProcedure(const TranslationConfig& cfg, const TypeExpr& t) {
  if (t.isVar()) return variableForm(cfg, t.name);
  auto it = cfg.typeConsMapping.find(t.name);
  if (it == cfg.typeConsMapping.end()) {
    throw FormError(FormErrorKind::kUnmappedTypeConstructor,
                    "type constructor " + t.name + " has no form in the configuration");
  }
  const TypeConsForm& f = it->second;
  const TypeExpr* arg = t.arg();
  if (arg == nullptr || arg->isVar()) {
    TypeForm out{f.rigid, f.poly, FormTrace{{t.name}, std::nullopt}};
    if (arg != nullptr) out.trace->variable = arg->name;
    return out;
  }
  if (!f.poly) {
    throw FormError(FormErrorKind::kArityMismatch,
                    "type constructor " + t.name + " has no polymorphic subspace to receive " +
                        textlang::printType(*arg));
  }
  const TypeForm inner = typeFormProcedure(cfg, *arg);
  const Transform& ta = f.poly->argTransform;
  TypeForm out;
  out.rigid = unite(f.rigid, transformRegion(ta, inner.rigid));
  if (inner.poly) {
    out.poly = PolySubspace{transformRegion(ta, inner.poly->surface),
                            geometry::composeTransforms(ta, inner.poly->argTransform)};
  }
  out.trace = FormTrace{{t.name}, std::nullopt};
  if (inner.trace) {
    out.trace->typeConstructors.insert(out.trace->typeConstructors.end(),
                                       inner.trace->typeConstructors.begin(),
                                       inner.trace->typeConstructors.end());
    out.trace->variable = inner.trace->variable;
  }
  return out;
}

Region femaleBottomRegion(const TypeForm& tf, const Rational& edgeEpsilon) {
  if (!tf.poly) return tf.rigid;
  const Transform& ta = tf.poly->argTransform;
  const Region local = transformRegion(geometry::invertTransform(ta), tf.poly->surface);
  const Region open = transformRegion(ta, geometry::erode(local, edgeEpsilon));
  return unite(tf.rigid, open);
}

bool maleFitsFemale(const TypeForm& male, const TypeForm& female, const Rational& edgeEpsilon) {
  return regionContains(femaleBottomRegion(female, edgeEpsilon), male.rigid);
}

TypeExpr formToType(const TranslationConfig& cfg, const TypeForm& tf) {
  if (!tf.trace || (tf.trace->typeConstructors.empty() && !tf.trace->variable)) {
    throw FormError(FormErrorKind::kUnrecognizedForm, "form carries no construction trace");
  }
  const auto& names = tf.trace->typeConstructors;
  for (const std::string& n : names) {
    if (!cfg.typeConsMapping.count(n)) {
      throw FormError(FormErrorKind::kUnrecognizedForm,
                      "trace mentions " + n + ", which has no form in the configuration");
    }
  }
  std::optional<TypeExpr> t;
  if (tf.trace->variable) t = TypeExpr::var("a");
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    t = t ? TypeExpr::app(*it, *t) : TypeExpr::app(*it);
  }
  return *t;
}

const char* genderName(Gender g) { return g == Gender::kMale ? "male" : "female"; }

const char* solidRoleName(SolidRole r) {
  switch (r) {
    case SolidRole::kAlignmentFrame:
      return "alignmentFrame";
    case SolidRole::kRigid:
      return "rigid";
    case SolidRole::kCap:
      return "cap";
  }
  return "solid";
}

JointForm3D maleJointForm3D(const TranslationConfig& cfg, const TypeForm& tf) {
  const Rational& v = cfg.vJntSz;
  JointForm3D j;
  j.gender = Gender::kMale;
  j.vJntSz = v;
  j.solids.push_back({SolidRole::kAlignmentFrame, Prism(cfg.alignment.frame(), Rational(0), v)});
  if (!tf.rigid.empty()) j.solids.push_back({SolidRole::kRigid, Prism(tf.rigid, Rational(0), v)});
  j.solids.push_back({SolidRole::kCap, Prism(cfg.alignment.outer(), v, v * Rational(9, 8))});
  if (tf.poly) {
    j.surface = tf.poly->surface;
    j.surfaceZ = v / 2;
  }
  return j;
}

JointForm3D femaleJointForm3D(const TranslationConfig& cfg, const TypeForm& tf) {
  const Rational& v = cfg.vJntSz;
  JointForm3D j;
  j.gender = Gender::kFemale;
  j.vJntSz = v;
  Region occupied = unite(cfg.alignment.frame(), tf.rigid);
  if (tf.poly) occupied = unite(occupied, tf.poly->surface);
  const Region material = geometry::subtract(cfg.alignment.outer(), occupied);
  if (!material.empty()) j.solids.push_back({SolidRole::kRigid, Prism(material, -v, Rational(0))});
  j.solids.push_back({SolidRole::kCap, Prism(cfg.alignment.outer(), -v * Rational(9, 8), -v)});
  if (tf.poly) {
    j.surface = tf.poly->surface;
    j.surfaceZ = -v / 2;
    j.skirt = true;
  }
  return j;
}

const char* violationKindName(ViolationKind k) {
  switch (k) {
    case ViolationKind::kMissingMapping:
      return "MissingMapping";
    case ViolationKind::kMutualFit:
      return "MutualFitViolation";
    case ViolationKind::kStructural:
      return "StructuralViolation";
    case ViolationKind::kAmbiguousConstructor:
      return "AmbiguousConstructor";
  }
  return "Violation";
}

std::vector<Violation> validateConfig(const TranslationConfig& cfg) {
  std::vector<Violation> out;
  const typesys::DefinitionSet& defs = cfg.adtdSet;

  for (const std::string& name : defs.ambiguousConstructors()) {
    out.push_back({ViolationKind::kAmbiguousConstructor, {name},
                   "constructor " + name + " is defined more than once"});
  }
  if (!cfg.flexible && !defs.flexDecls().empty()) {
    out.push_back({ViolationKind::kStructural, {},
                   "flexible declarations are present but the configuration is not flexible"});
  }
  if (!(cfg.alignment.frameThickness > 0) ||
      !(cfg.alignment.frameThickness * 4 < cfg.alignment.outerSide)) {
    out.push_back({ViolationKind::kStructural, {"alignmentSquare"},
                   "frame thickness must be positive and below a quarter of the outer side"});
  }
  if (!(cfg.vJntSz > 0)) {
    out.push_back({ViolationKind::kStructural, {"vJntSz"}, "vJntSz must be positive"});
  }

  // (a) totality of the mappings.
  for (const std::string& tc : defs.typeConstructorNames()) {
    if (!cfg.typeConsMapping.count(tc)) {
      out.push_back({ViolationKind::kMissingMapping, {tc}, "typeConsMapping has no entry for " + tc});
    }
  }
  const auto ambiguous = defs.ambiguousConstructors();
  for (const std::string& c : defs.constructorNames()) {
    if (std::find(ambiguous.begin(), ambiguous.end(), c) != ambiguous.end()) continue;
    const typesys::ConstructorSig sig = typesys::constructorSigOf(defs, c);
    if (!cfg.blockMapping.count(c)) {
      out.push_back({ViolationKind::kMissingMapping, {c}, "blockMapping has no entry for " + c});
    }
    if (sig.resultType && !cfg.resultLocationMapping.count(c)) {
      out.push_back({ViolationKind::kMissingMapping, {c}, "resultLocationMapping has no entry for " + c});
    }
    auto args = cfg.argLocationMapping.find(c);
    const std::size_t have = args == cfg.argLocationMapping.end() ? 0 : args->second.size();
    if (have != sig.argTypes.size()) {
      out.push_back({ViolationKind::kMissingMapping, {c},
                     "argLocationMapping for " + c + " lists " + std::to_string(have) +
                         " placements but the constructor has " +
                         std::to_string(sig.argTypes.size()) + " arguments"});
    }
  }

  // (c) structure of each type-constructor form.
  const Region inner = cfg.alignment.inner();
  for (const auto& [name, form] : cfg.typeConsMapping) {
    const std::optional<bool> param = defs.typeConsHasParam(name);
    if (!param) {
      out.push_back({ViolationKind::kStructural, {name}, name + " is mapped but never defined"});
    } else if (*param != form.poly.has_value()) {
      out.push_back({ViolationKind::kStructural, {name},
                     name + (*param ? " has a type parameter but no polymorphic subspace"
                                    : " has a polymorphic subspace but no type parameter")});
    }
    if (!regionContains(inner, form.rigid)) {
      out.push_back({ViolationKind::kStructural, {name}, name + ": rigid part leaves the frame interior"});
    }
    if (!form.poly) continue;
    const PolySubspace& poly = *form.poly;
    if (!geometry::intersect(form.rigid, poly.surface).empty()) {
      out.push_back({ViolationKind::kStructural, {name},
                     name + ": rigid part and polymorphic surface overlap"});
    }
    if (!regionContains(inner, poly.surface)) {
      out.push_back({ViolationKind::kStructural, {name},
                     name + ": polymorphic surface leaves the frame interior"});
    }
    if (det(poly.argTransform) == 0) {
      out.push_back({ViolationKind::kStructural, {name}, name + ": argument transformation is singular"});
      continue;
    }
    if (!regionContains(geometry::convexHull(poly.surface),
                        transformRegion(poly.argTransform, cfg.alignment.outer()))) {
      out.push_back({ViolationKind::kStructural, {name},
                     name + ": transformed alignment square leaves the polymorphic surface"});
    }
  }
  for (const auto& [c, placements] : cfg.argLocationMapping) {
    for (std::size_t i = 0; i < placements.size(); ++i) {
      checkPlacement(c + ".arg" + std::to_string(i), placements[i], out);
    }
  }
  for (const auto& [c, placement] : cfg.resultLocationMapping) checkPlacement(c + ".result", placement, out);

  // (b) no two distinct type-constructor forms fit into each other.
  std::vector<std::string> names;
  for (const auto& [name, form] : cfg.typeConsMapping) names.push_back(name);
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t k = i + 1; k < names.size(); ++k) {
      const TypeConsForm& a = cfg.typeConsMapping.at(names[i]);
      const TypeConsForm& b = cfg.typeConsMapping.at(names[k]);
      const TypeForm fa{a.rigid, a.poly, std::nullopt};
      const TypeForm fb{b.rigid, b.poly, std::nullopt};
      const bool ab = maleFitsFemale(fa, fb, cfg.edgeEpsilon);
      const bool ba = maleFitsFemale(fb, fa, cfg.edgeEpsilon);
      if (!ab && !ba) continue;
      std::string how;
      if (ab) how = names[i] + " fits into " + names[k];
      if (ba) how += (how.empty() ? "" : " and ") + names[k] + " fits into " + names[i];
      out.push_back({ViolationKind::kMutualFit, {names[i], names[k]}, how});
    }
  }
  return out;
}

FormCompiler::FormCompiler(std::shared_ptr<const TranslationConfig> cfg) : cfg_(std::move(cfg)) {}

std::shared_ptr<const TypeForm> FormCompiler::typeForm(const TypeExpr& t) {
  const std::string key = typeKey(t);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = forms_.find(key);
    if (it != forms_.end()) return it->second;
  }
  auto form = std::make_shared<const TypeForm>(typeFormProcedure(*cfg_, typesys::normalizeVars(t)));
  std::lock_guard<std::mutex> lock(mu_);
  return forms_.emplace(key, std::move(form)).first->second;
}

std::shared_ptr<const Region> FormCompiler::bottomRegion(const std::string& key, const TypeForm& tf) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = bottoms_.find(key);
    if (it != bottoms_.end()) return it->second;
  }
  auto region = std::make_shared<const Region>(femaleBottomRegion(tf, cfg_->edgeEpsilon));
  std::lock_guard<std::mutex> lock(mu_);
  return bottoms_.emplace(key, std::move(region)).first->second;
}

bool FormCompiler::fits(const TypeExpr& male, const TypeExpr& female) {
  const std::string femaleKey = typeKey(female);
  const std::string key = typeKey(male) + " => " + femaleKey;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = verdicts_.find(key);
    if (it != verdicts_.end()) return it->second;
  }
  const auto maleForm = typeForm(male);
  const auto femaleForm = typeForm(female);
  const auto bottom = bottomRegion(femaleKey, *femaleForm);
  const bool verdict = regionContains(*bottom, maleForm->rigid);
  std::lock_guard<std::mutex> lock(mu_);
  verdicts_.emplace(key, verdict);
  return verdict;
}

}  // namespace madawipol::forms
