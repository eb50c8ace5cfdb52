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

#ifndef MADAWIPOL_TEXTLANG_H_
#define MADAWIPOL_TEXTLANG_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace madawipol::textlang {

// A type variable or a type-constructor application with at most one
// argument.
struct TypeExpr {
  enum class Kind { kVar, kApp };

  Kind kind = Kind::kVar;
  std::string name;
  std::vector<TypeExpr> args;  // empty or a single element

  static TypeExpr var(std::string name) { return {Kind::kVar, std::move(name), {}}; }
  static TypeExpr app(std::string name) { return {Kind::kApp, std::move(name), {}}; }
  static TypeExpr app(std::string name, TypeExpr arg) {
    return {Kind::kApp, std::move(name), {std::move(arg)}};
  }

  bool isVar() const { return kind == Kind::kVar; }
  const TypeExpr* arg() const { return args.empty() ? nullptr : &args.front(); }

  friend bool operator==(const TypeExpr&, const TypeExpr&) = default;
};

struct ConstructorAlt {
  std::string consName;
  std::vector<TypeExpr> argTypes;

  friend bool operator==(const ConstructorAlt&, const ConstructorAlt&) = default;
};

struct AdtDefinition {
  std::string typeConsName;
  std::optional<std::string> typeParam;
  std::vector<ConstructorAlt> alternatives;

  friend bool operator==(const AdtDefinition&, const AdtDefinition&) = default;
};

// An algebraic data structure, possibly unfinished: Hole marks an empty
// argument position.
struct Ads {
  enum class Kind { kApply, kHole };

  Kind kind = Kind::kHole;
  std::string consName;
  std::optional<TypeExpr> annotation;  // "Cons:[List Bool]"
  std::vector<Ads> args;

  static Ads hole() { return {}; }
  static Ads apply(std::string consName, std::vector<Ads> args = {},
                   std::optional<TypeExpr> annotation = std::nullopt) {
    return {Kind::kApply, std::move(consName), std::move(annotation), std::move(args)};
  }

  bool isHole() const { return kind == Kind::kHole; }

  friend bool operator==(const Ads&, const Ads&) = default;
};

// "Name: Result <- Args", where either side of the arrow may be empty.
struct FlexConstructorDecl {
  std::string consName;
  std::optional<TypeExpr> resultType;
  std::vector<TypeExpr> argTypes;

  friend bool operator==(const FlexConstructorDecl&, const FlexConstructorDecl&) = default;
};

enum class ParseErrorKind {
  kSyntax,
  kDuplicateTypeCons,
  kDuplicateConstructor,
  kUnknownTypeParam,
  kUnknownTypeConstructor,
  kArityMismatch,
  kHoleAtHeadPosition,
  kMissingArrow,
};

const char* parseErrorKindName(ParseErrorKind kind);

// Positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, int column, const std::string& detail);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
};

// One "::Name [param] = Alt | Alt ..." definition per line; blank lines are
// skipped.
std::vector<AdtDefinition> parseAdtDefs(std::string_view text);

Ads parseAds(std::string_view text);

FlexConstructorDecl parseFlexDecl(std::string_view text);
std::vector<FlexConstructorDecl> parseFlexDecls(std::string_view text);

TypeExpr parseTypeExpr(std::string_view text);

std::string printType(const TypeExpr& t);
std::string printAds(const Ads& ads);
std::string printAdtDef(const AdtDefinition& def);
std::string printFlexDecl(const FlexConstructorDecl& decl);

}  // namespace madawipol::textlang

#endif  // MADAWIPOL_TEXTLANG_H_
