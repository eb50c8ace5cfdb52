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

#ifndef MADAWIPOL_TYPESYS_H_
#define MADAWIPOL_TYPESYS_H_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "madawipol/textlang.h"

namespace madawipol::typesys {

using textlang::AdtDefinition;
using textlang::Ads;
using textlang::FlexConstructorDecl;
using textlang::TypeExpr;

struct ConstructorSig {
  std::string consName;
  std::vector<TypeExpr> argTypes;
  std::optional<TypeExpr> resultType;

  friend bool operator==(const ConstructorSig&, const ConstructorSig&) = default;
};

// Variable name to type. Kept idempotent by every function here.
using Substitution = std::map<std::string, TypeExpr>;

enum class TypeErrorKind {
  kUnknownConstructor,
  kAmbiguousConstructor,
  kNotAnInstance,
  kUnknownTypeConstructor,
  kArityMismatch,
};

const char* typeErrorKindName(TypeErrorKind kind);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, const std::string& detail);
  TypeErrorKind kind() const { return kind_; }

 private:
  TypeErrorKind kind_;
};

// ADT definitions plus flexible declarations. Duplicated constructor names
// are kept and reported when the name is looked up.
class DefinitionSet {
 public:
  DefinitionSet() = default;
  // Throws TypeError when a flexible declaration mentions an undefined type
  // constructor or applies one with the wrong arity.
  explicit DefinitionSet(std::vector<AdtDefinition> adts,
                         std::vector<FlexConstructorDecl> flexDecls = {});

  static DefinitionSet parse(std::string_view adtText, std::string_view flexText = "");

  const std::vector<AdtDefinition>& adts() const { return adts_; }
  const std::vector<FlexConstructorDecl>& flexDecls() const { return flexDecls_; }

  // In definition order, ADTs first; duplicates listed once.
  std::vector<std::string> constructorNames() const;
  std::vector<std::string> typeConstructorNames() const;
  // Names defined more than once.
  std::vector<std::string> ambiguousConstructors() const;

  bool hasConstructor(std::string_view name) const;
  // Absent when the type constructor is unknown.
  std::optional<bool> typeConsHasParam(std::string_view name) const;

 private:
  std::vector<AdtDefinition> adts_;
  std::vector<FlexConstructorDecl> flexDecls_;
};

// Most general signature. Throws UnknownConstructor or AmbiguousConstructor.
ConstructorSig constructorSigOf(const DefinitionSet& defs, std::string_view consName);

// The signature specialised so that its result is resultInstance. Throws
// NotAnInstance when the two do not unify.
ConstructorSig instantiateConstructor(const DefinitionSet& defs, std::string_view consName,
                                      const TypeExpr& resultInstance);

// Most general unifier; callers rename variables apart first.
std::optional<Substitution> unify(const TypeExpr& t1, const TypeExpr& t2);
// Extends s so that it also unifies t1 and t2.
bool unifyInto(Substitution& s, const TypeExpr& t1, const TypeExpr& t2);
// Renames t1's variables with suffix "1" and t2's with "2", then unifies.
std::optional<Substitution> unifyFresh(const TypeExpr& t1, const TypeExpr& t2);

TypeExpr applySubst(const Substitution& s, const TypeExpr& t);
// The substitution that applies first and then second.
Substitution compose(const Substitution& second, const Substitution& first);
// Substitution pattern -> target with only pattern variables bound.
std::optional<Substitution> match(const TypeExpr& pattern, const TypeExpr& target);

std::set<std::string> freeVars(const TypeExpr& t);
bool isGround(const TypeExpr& t);
TypeExpr renameVars(const TypeExpr& t, const std::string& suffix);
// Renames variables to a, b, c, ... in order of first occurrence.
TypeExpr normalizeVars(const TypeExpr& t);
bool alphaEquivalent(const TypeExpr& a, const TypeExpr& b);
// Number of nodes on the longest path: Bool and a have depth 1.
int typeDepth(const TypeExpr& t);

// Every type of depth at most maxDepth built from the given parameterless
// and unary type constructors, optionally with the variable "a" as a leaf.
// Ordered by depth, then by construction order.
std::vector<TypeExpr> enumerateTypes(const std::vector<std::string>& base,
                                     const std::vector<std::string>& unary, int maxDepth,
                                     bool withVariable);

struct AdsTyping {
  bool wellTyped = false;
  // Absent for ill-typed structures and for roots built from a constructor
  // without a result type.
  std::optional<TypeExpr> type;
};

// Holes are fresh variables. Throws UnknownConstructor.
AdsTyping typeAds(const DefinitionSet& defs, const Ads& ads);
std::optional<TypeExpr> inferAdsType(const DefinitionSet& defs, const Ads& ads);
bool isWellTyped(const DefinitionSet& defs, const Ads& ads);

}  // namespace madawipol::typesys

#endif  // MADAWIPOL_TYPESYS_H_
