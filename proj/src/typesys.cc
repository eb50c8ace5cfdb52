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

#include "madawipol/typesys.h"

#include <algorithm>

namespace madawipol::typesys {
namespace {

bool occurs(const std::string& v, const TypeExpr& t) {
  if (t.isVar()) return t.name == v;
  for (const TypeExpr& a : t.args) {
    if (occurs(v, a)) return true;
  }
  return false;
}

void collectVars(const TypeExpr& t, std::vector<std::string>& out) {
  if (t.isVar()) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const TypeExpr& a : t.args) collectVars(a, out);
}

TypeExpr renameWith(const TypeExpr& t, const std::map<std::string, std::string>& names) {
  if (t.isVar()) {
    auto it = names.find(t.name);
    return TypeExpr::var(it == names.end() ? t.name : it->second);
  }
  TypeExpr out = TypeExpr::app(t.name);
  for (const TypeExpr& a : t.args) out.args.push_back(renameWith(a, names));
  return out;
}

std::string variableName(std::size_t i) {
  std::string name(1, static_cast<char>('a' + i % 26));
  if (i >= 26) name += std::to_string(i / 26);
  return name;
}

void bind(Substitution& s, const std::string& v, const TypeExpr& t) {
  const Substitution single{{v, t}};
  for (auto& [name, image] : s) image = applySubst(single, image);
  s.emplace(v, t);
}

bool unifyResolved(Substitution& s, const TypeExpr& a, const TypeExpr& b) {
  if (a.isVar() && b.isVar() && a.name == b.name) return true;
  if (a.isVar()) {
    if (occurs(a.name, b)) return false;
    bind(s, a.name, b);
    return true;
  }
  if (b.isVar()) {
    if (occurs(b.name, a)) return false;
    bind(s, b.name, a);
    return true;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!unifyResolved(s, applySubst(s, a.args[i]), applySubst(s, b.args[i]))) return false;
  }
  return true;
}

bool matchInto(Substitution& s, const TypeExpr& p, const TypeExpr& t) {
  if (p.isVar()) {
    auto it = s.find(p.name);
    if (it == s.end()) {
      s.emplace(p.name, t);
      return true;
    }
    return it->second == t;
  }
  if (t.isVar() || p.name != t.name || p.args.size() != t.args.size()) return false;
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (!matchInto(s, p.args[i], t.args[i])) return false;
  }
  return true;
}

ConstructorSig renameSig(const ConstructorSig& sig, const std::string& suffix) {
  ConstructorSig out{sig.consName, {}, std::nullopt};
  for (const TypeExpr& t : sig.argTypes) out.argTypes.push_back(renameVars(t, suffix));
  if (sig.resultType) out.resultType = renameVars(*sig.resultType, suffix);
  return out;
}

class Inferencer {
 public:
  explicit Inferencer(const DefinitionSet& defs) : defs_(defs) {}

  // Returns false when ill-typed. type is left empty for result-less nodes.
  bool infer(const Ads& ads, std::optional<TypeExpr>& type) {
    if (ads.isHole()) {
      type = TypeExpr::var("t" + std::to_string(counter_++));
      return true;
    }
    const ConstructorSig sig =
        renameSig(constructorSigOf(defs_, ads.consName), "t" + std::to_string(counter_++));
    if (ads.annotation) {
      if (!sig.resultType) return false;
      const TypeExpr ann = renameVars(*ads.annotation, "t" + std::to_string(counter_++));
      if (!unifyInto(subst_, *sig.resultType, ann)) return false;
    }
    if (ads.args.size() != sig.argTypes.size()) return false;
    for (std::size_t i = 0; i < ads.args.size(); ++i) {
      std::optional<TypeExpr> argType;
      if (!infer(ads.args[i], argType)) return false;
      if (!argType) return false;
      if (!unifyInto(subst_, sig.argTypes[i], *argType)) return false;
    }
    if (sig.resultType) type = applySubst(subst_, *sig.resultType);
    return true;
  }

  const Substitution& subst() const { return subst_; }

 private:
  const DefinitionSet& defs_;
  Substitution subst_;
  int counter_ = 0;
};

void checkFlexType(const DefinitionSet& defs, const TypeExpr& t, const std::string& cons) {
  if (t.isVar()) return;
  const std::optional<bool> param = defs.typeConsHasParam(t.name);
  if (!param) {
    throw TypeError(TypeErrorKind::kUnknownTypeConstructor,
                    "type constructor " + t.name + " used by " + cons + " is not defined");
  }
  if (*param != !t.args.empty()) {
    throw TypeError(TypeErrorKind::kArityMismatch,
                    "type constructor " + t.name + " used by " + cons + " takes " +
                        (*param ? "one argument" : "no arguments"));
  }
  for (const TypeExpr& a : t.args) checkFlexType(defs, a, cons);
}

}  // namespace

const char* typeErrorKindName(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::kUnknownConstructor:
      return "UnknownConstructor";
    case TypeErrorKind::kAmbiguousConstructor:
      return "AmbiguousConstructor";
    case TypeErrorKind::kNotAnInstance:
      return "NotAnInstance";
    case TypeErrorKind::kUnknownTypeConstructor:
      return "UnknownTypeConstructor";
    case TypeErrorKind::kArityMismatch:
      return "ArityMismatch";
  }
  return "TypeError";
}

TypeError::TypeError(TypeErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(typeErrorKindName(kind)) + ": " + detail), kind_(kind) {}

DefinitionSet::DefinitionSet(std::vector<AdtDefinition> adts,
                             std::vector<FlexConstructorDecl> flexDecls)
    : adts_(std::move(adts)), flexDecls_(std::move(flexDecls)) {
  for (const FlexConstructorDecl& d : flexDecls_) {
    if (d.resultType) checkFlexType(*this, *d.resultType, d.consName);
    for (const TypeExpr& t : d.argTypes) checkFlexType(*this, t, d.consName);
  }
}

DefinitionSet DefinitionSet::parse(std::string_view adtText, std::string_view flexText) {
  return DefinitionSet(textlang::parseAdtDefs(adtText), textlang::parseFlexDecls(flexText));
}

std::vector<std::string> DefinitionSet::constructorNames() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& n) {
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  };
  for (const AdtDefinition& d : adts_) {
    for (const auto& alt : d.alternatives) add(alt.consName);
  }
  for (const FlexConstructorDecl& d : flexDecls_) add(d.consName);
  return out;
}

std::vector<std::string> DefinitionSet::typeConstructorNames() const {
  std::vector<std::string> out;
  for (const AdtDefinition& d : adts_) out.push_back(d.typeConsName);
  return out;
}

std::vector<std::string> DefinitionSet::ambiguousConstructors() const {
  std::map<std::string, int> count;
  for (const AdtDefinition& d : adts_) {
    for (const auto& alt : d.alternatives) ++count[alt.consName];
  }
  for (const FlexConstructorDecl& d : flexDecls_) ++count[d.consName];
  std::vector<std::string> out;
  for (const auto& [name, n] : count) {
    if (n > 1) out.push_back(name);
  }
  return out;
}

bool DefinitionSet::hasConstructor(std::string_view name) const {
  for (const AdtDefinition& d : adts_) {
    for (const auto& alt : d.alternatives) {
      if (alt.consName == name) return true;
    }
  }
  for (const FlexConstructorDecl& d : flexDecls_) {
    if (d.consName == name) return true;
  }
  return false;
}

std::optional<bool> DefinitionSet::typeConsHasParam(std::string_view name) const {
  for (const AdtDefinition& d : adts_) {
    if (d.typeConsName == name) return d.typeParam.has_value();
  }
  return std::nullopt;
}

ConstructorSig constructorSigOf(const DefinitionSet& defs, std::string_view consName) {
  std::vector<ConstructorSig> found;
  for (const AdtDefinition& d : defs.adts()) {
    for (const auto& alt : d.alternatives) {
      if (alt.consName != consName) continue;
      TypeExpr result = d.typeParam ? TypeExpr::app(d.typeConsName, TypeExpr::var(*d.typeParam))
                                    : TypeExpr::app(d.typeConsName);
      found.push_back({alt.consName, alt.argTypes, std::move(result)});
    }
  }
  for (const FlexConstructorDecl& d : defs.flexDecls()) {
    if (d.consName == consName) found.push_back({d.consName, d.argTypes, d.resultType});
  }
  if (found.empty()) {
    throw TypeError(TypeErrorKind::kUnknownConstructor,
                    "constructor " + std::string(consName) + " is not defined");
  }
  if (found.size() > 1) {
    throw TypeError(TypeErrorKind::kAmbiguousConstructor,
                    "constructor " + std::string(consName) + " is defined more than once");
  }
  return found.front();
}

ConstructorSig instantiateConstructor(const DefinitionSet& defs, std::string_view consName,
                                      const TypeExpr& resultInstance) {
  const ConstructorSig general = constructorSigOf(defs, consName);
  const std::string shown = textlang::printType(resultInstance);
  if (!general.resultType) {
    throw TypeError(TypeErrorKind::kNotAnInstance,
                    std::string(consName) + " has no result type to instantiate at " + shown);
  }
  // Rename the signature apart from the instance, which keeps its own names.
  const ConstructorSig sig = renameSig(general, "0");
  const std::optional<Substitution> s = unify(*sig.resultType, resultInstance);
  if (!s) {
    throw TypeError(TypeErrorKind::kNotAnInstance,
                    shown + " is not an instance of " + textlang::printType(*general.resultType));
  }
  ConstructorSig out{sig.consName, {}, applySubst(*s, *sig.resultType)};
  for (const TypeExpr& t : sig.argTypes) out.argTypes.push_back(applySubst(*s, t));
  return out;
}

TypeExpr applySubst(const Substitution& s, const TypeExpr& t) {
  if (t.isVar()) {
    auto it = s.find(t.name);
    return it == s.end() ? t : it->second;
  }
  if (t.args.empty() || s.empty()) return t;
  TypeExpr out = TypeExpr::app(t.name);
  for (const TypeExpr& a : t.args) out.args.push_back(applySubst(s, a));
  return out;
}

bool unifyInto(Substitution& s, const TypeExpr& t1, const TypeExpr& t2) {
  Substitution trial = s;
  if (!unifyResolved(trial, applySubst(trial, t1), applySubst(trial, t2))) return false;
  s = std::move(trial);
  return true;
}

std::optional<Substitution> unify(const TypeExpr& t1, const TypeExpr& t2) {
  Substitution s;
  if (!unifyInto(s, t1, t2)) return std::nullopt;
  return s;
}

std::optional<Substitution> unifyFresh(const TypeExpr& t1, const TypeExpr& t2) {
  return unify(renameVars(t1, "1"), renameVars(t2, "2"));
}

Substitution compose(const Substitution& second, const Substitution& first) {
  Substitution out;
  for (const auto& [v, t] : first) out.emplace(v, applySubst(second, t));
  for (const auto& [v, t] : second) out.emplace(v, t);
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.isVar() && it->second.name == it->first) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::optional<Substitution> match(const TypeExpr& pattern, const TypeExpr& target) {
  Substitution s;
  if (!matchInto(s, pattern, target)) return std::nullopt;
  return s;
}

std::set<std::string> freeVars(const TypeExpr& t) {
  std::vector<std::string> v;
  collectVars(t, v);
  return {v.begin(), v.end()};
}

bool isGround(const TypeExpr& t) {
  if (t.isVar()) return false;
  for (const TypeExpr& a : t.args) {
    if (!isGround(a)) return false;
  }
  return true;
}

TypeExpr renameVars(const TypeExpr& t, const std::string& suffix) {
  std::vector<std::string> vars;
  collectVars(t, vars);
  std::map<std::string, std::string> names;
  for (const std::string& v : vars) names[v] = v + suffix;
  return renameWith(t, names);
}

TypeExpr normalizeVars(const TypeExpr& t) {
  std::vector<std::string> vars;
  collectVars(t, vars);
  std::map<std::string, std::string> names;
  for (std::size_t i = 0; i < vars.size(); ++i) names[vars[i]] = variableName(i);
  return renameWith(t, names);
}

bool alphaEquivalent(const TypeExpr& a, const TypeExpr& b) {
  return normalizeVars(a) == normalizeVars(b);
}

int typeDepth(const TypeExpr& t) {
  int inner = 0;
  for (const TypeExpr& a : t.args) inner = std::max(inner, typeDepth(a));
  return 1 + inner;
}

std::vector<TypeExpr> enumerateTypes(const std::vector<std::string>& base,
                                     const std::vector<std::string>& unary, int maxDepth,
                                     bool withVariable) {
  std::vector<TypeExpr> out;
  if (maxDepth < 1) return out;
  for (const std::string& b : base) out.push_back(TypeExpr::app(b));
  if (withVariable) out.push_back(TypeExpr::var("a"));
  std::size_t levelStart = 0;
  for (int depth = 2; depth <= maxDepth; ++depth) {
    const std::size_t levelEnd = out.size();
    for (const std::string& u : unary) {
      for (std::size_t i = levelStart; i < levelEnd; ++i) out.push_back(TypeExpr::app(u, out[i]));
    }
    levelStart = levelEnd;
  }
  return out;
}

AdsTyping typeAds(const DefinitionSet& defs, const Ads& ads) {
  if (ads.isHole()) return {true, TypeExpr::var("a")};
  Inferencer inf(defs);
  std::optional<TypeExpr> type;
  if (!inf.infer(ads, type)) return {false, std::nullopt};
  if (type) type = normalizeVars(applySubst(inf.subst(), *type));
  return {true, type};
}

std::optional<TypeExpr> inferAdsType(const DefinitionSet& defs, const Ads& ads) {
  return typeAds(defs, ads).type;
}

bool isWellTyped(const DefinitionSet& defs, const Ads& ads) {
  return typeAds(defs, ads).wellTyped;
}

}  // namespace madawipol::typesys
