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

#include "madawipol/textlang.h"

#include <cctype>
#include <map>
#include <set>

namespace madawipol::textlang {
namespace {

enum class Tok {
  kUpper,
  kLower,
  kHole,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kColon,
  kDoubleColon,
  kEquals,
  kBar,
  kArrow,
  kEnd,
};

const char* tokName(Tok t) {
  switch (t) {
    case Tok::kUpper:
      return "constructor name";
    case Tok::kLower:
      return "type variable";
    case Tok::kHole:
      return "'_'";
    case Tok::kLParen:
      return "'('";
    case Tok::kRParen:
      return "')'";
    case Tok::kLBracket:
      return "'['";
    case Tok::kRBracket:
      return "']'";
    case Tok::kColon:
      return "':'";
    case Tok::kDoubleColon:
      return "'::'";
    case Tok::kEquals:
      return "'='";
    case Tok::kBar:
      return "'|'";
    case Tok::kArrow:
      return "'<-'";
    case Tok::kEnd:
      return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind;
  std::string text;
  int column;
};

std::vector<Token> lex(std::string_view line, int lineNo) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < line.size() && std::isalnum(static_cast<unsigned char>(line[j]))) ++j;
      const bool upper = std::isupper(static_cast<unsigned char>(c));
      out.push_back({upper ? Tok::kUpper : Tok::kLower, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), col});
      ++i;
    };
    switch (c) {
      case '_':
        if (i + 1 < line.size() && std::isalnum(static_cast<unsigned char>(line[i + 1]))) {
          throw ParseError(ParseErrorKind::kSyntax, lineNo, col, "identifiers cannot start with '_'");
        }
        single(Tok::kHole);
        break;
      case '(':
        single(Tok::kLParen);
        break;
      case ')':
        single(Tok::kRParen);
        break;
      case '[':
        single(Tok::kLBracket);
        break;
      case ']':
        single(Tok::kRBracket);
        break;
      case '=':
        single(Tok::kEquals);
        break;
      case '|':
        single(Tok::kBar);
        break;
      case ':':
        if (i + 1 < line.size() && line[i + 1] == ':') {
          out.push_back({Tok::kDoubleColon, "::", col});
          i += 2;
        } else {
          single(Tok::kColon);
        }
        break;
      case '<':
        if (i + 1 < line.size() && line[i + 1] == '-') {
          out.push_back({Tok::kArrow, "<-", col});
          i += 2;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError(ParseErrorKind::kSyntax, lineNo, col,
                         std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, "", static_cast<int>(line.size()) + 1});
  return out;
}

class Parser {
 public:
  Parser(std::string_view line, int lineNo) : tokens_(lex(line, lineNo)), line_(lineNo) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok t) const { return peek().kind == t; }

  Token expect(Tok t) {
    if (!at(t)) fail(tokName(t));
    return tokens_[pos_++];
  }

  bool accept(Tok t) {
    if (!at(t)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(ParseErrorKind::kSyntax, line_, t.column,
                     "expected " + expected + ", found " + found);
  }

  void expectEnd() {
    if (!at(Tok::kEnd)) fail("end of input");
  }

  int line() const { return line_; }

  // type := lower | Upper [atom]
  TypeExpr type() {
    if (at(Tok::kLower)) return TypeExpr::var(expect(Tok::kLower).text);
    if (at(Tok::kUpper)) {
      std::string name = expect(Tok::kUpper).text;
      if (startsAtom()) return TypeExpr::app(std::move(name), atom());
      return TypeExpr::app(std::move(name));
    }
    if (at(Tok::kLParen)) return atom();
    fail("type");
  }

  bool startsAtom() const { return at(Tok::kLower) || at(Tok::kUpper) || at(Tok::kLParen); }

  // atom := lower | Upper | '(' type ')'
  TypeExpr atom() {
    if (at(Tok::kLower)) return TypeExpr::var(expect(Tok::kLower).text);
    if (at(Tok::kUpper)) return TypeExpr::app(expect(Tok::kUpper).text);
    if (accept(Tok::kLParen)) {
      TypeExpr t = type();
      expect(Tok::kRParen);
      return t;
    }
    fail("type");
  }

  std::optional<TypeExpr> annotation() {
    if (!accept(Tok::kColon)) return std::nullopt;
    expect(Tok::kLBracket);
    TypeExpr t = type();
    expect(Tok::kRBracket);
    return t;
  }

  // ads := Upper [annotation] arg*
  Ads ads() {
    if (at(Tok::kHole)) {
      throw ParseError(ParseErrorKind::kHoleAtHeadPosition, line_, peek().column,
                       "'_' may only fill an argument position");
    }
    std::string name = expect(Tok::kUpper).text;
    std::optional<TypeExpr> ann = annotation();
    std::vector<Ads> args;
    while (at(Tok::kHole) || at(Tok::kUpper) || at(Tok::kLParen)) args.push_back(adsArg());
    return Ads::apply(std::move(name), std::move(args), std::move(ann));
  }

  Ads adsArg() {
    if (accept(Tok::kHole)) return Ads::hole();
    if (at(Tok::kUpper)) {
      std::string name = expect(Tok::kUpper).text;
      return Ads::apply(std::move(name), {}, annotation());
    }
    expect(Tok::kLParen);
    Ads inner = accept(Tok::kHole) ? Ads::hole() : ads();
    expect(Tok::kRParen);
    return inner;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

std::vector<std::pair<std::string_view, int>> splitLines(std::string_view text) {
  std::vector<std::pair<std::string_view, int>> lines;
  int lineNo = 1;
  std::size_t start = 0;
  for (;;) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = true;
    for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank) lines.emplace_back(line, lineNo);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
    ++lineNo;
  }
  return lines;
}

void collectVars(const TypeExpr& t, std::vector<std::string>& out) {
  if (t.isVar()) {
    out.push_back(t.name);
    return;
  }
  for (const TypeExpr& a : t.args) collectVars(a, out);
}

void collectApps(const TypeExpr& t, std::vector<const TypeExpr*>& out) {
  if (t.isVar()) return;
  out.push_back(&t);
  for (const TypeExpr& a : t.args) collectApps(a, out);
}

bool needsParens(const TypeExpr& t) { return !t.isVar() && !t.args.empty(); }

std::string printAtom(const TypeExpr& t) {
  return needsParens(t) ? "(" + printType(t) + ")" : printType(t);
}

std::string printHead(const Ads& ads) {
  std::string out = ads.consName;
  if (ads.annotation) out += ":[" + printType(*ads.annotation) + "]";
  return out;
}

}  // namespace

const char* parseErrorKindName(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kSyntax:
      return "SyntaxError";
    case ParseErrorKind::kDuplicateTypeCons:
      return "DuplicateTypeCons";
    case ParseErrorKind::kDuplicateConstructor:
      return "DuplicateConstructor";
    case ParseErrorKind::kUnknownTypeParam:
      return "UnknownTypeParam";
    case ParseErrorKind::kUnknownTypeConstructor:
      return "UnknownTypeConstructor";
    case ParseErrorKind::kArityMismatch:
      return "ArityMismatch";
    case ParseErrorKind::kHoleAtHeadPosition:
      return "HoleAtHeadPosition";
    case ParseErrorKind::kMissingArrow:
      return "MissingArrow";
  }
  return "ParseError";
}

ParseError::ParseError(ParseErrorKind kind, int line, int column, const std::string& detail)
    : std::runtime_error(std::string(parseErrorKindName(kind)) + " at line " +
                         std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         detail),
      kind_(kind),
      line_(line),
      column_(column) {}

std::vector<AdtDefinition> parseAdtDefs(std::string_view text) {
  std::vector<AdtDefinition> defs;
  struct Use {
    const TypeExpr* type;
    int line;
  };
  std::vector<Use> uses;
  std::map<std::string, int> lineOf;
  std::set<std::string> consNames;
  for (const auto& [line, lineNo] : splitLines(text)) {
    Parser p(line, lineNo);
    p.expect(Tok::kDoubleColon);
    const Token name = p.expect(Tok::kUpper);
    AdtDefinition def;
    def.typeConsName = name.text;
    if (lineOf.count(def.typeConsName)) {
      throw ParseError(ParseErrorKind::kDuplicateTypeCons, lineNo, name.column,
                       "type constructor " + def.typeConsName + " is already defined");
    }
    if (p.at(Tok::kLower)) def.typeParam = p.expect(Tok::kLower).text;
    if (p.at(Tok::kLower)) {
      throw ParseError(ParseErrorKind::kSyntax, lineNo, p.peek().column,
                       "expected '=', found a second type parameter '" + p.peek().text + "'");
    }
    p.expect(Tok::kEquals);
    do {
      const Token cons = p.expect(Tok::kUpper);
      if (!consNames.insert(cons.text).second) {
        throw ParseError(ParseErrorKind::kDuplicateConstructor, lineNo, cons.column,
                         "constructor " + cons.text + " is already defined");
      }
      ConstructorAlt alt{cons.text, {}};
      while (p.startsAtom()) {
        const int col = p.peek().column;
        alt.argTypes.push_back(p.atom());
        std::vector<std::string> vars;
        collectVars(alt.argTypes.back(), vars);
        for (const std::string& v : vars) {
          if (!def.typeParam || *def.typeParam != v) {
            throw ParseError(ParseErrorKind::kUnknownTypeParam, lineNo, col,
                             "type variable " + v + " is not a parameter of " + def.typeConsName);
          }
        }
      }
      def.alternatives.push_back(std::move(alt));
    } while (p.accept(Tok::kBar));
    p.expectEnd();
    lineOf[def.typeConsName] = lineNo;
    defs.push_back(std::move(def));
  }
  std::map<std::string, bool> hasParam;
  for (const AdtDefinition& d : defs) hasParam[d.typeConsName] = d.typeParam.has_value();
  for (const AdtDefinition& d : defs) {
    for (const ConstructorAlt& alt : d.alternatives) {
      for (const TypeExpr& t : alt.argTypes) {
        std::vector<const TypeExpr*> apps;
        collectApps(t, apps);
        for (const TypeExpr* a : apps) {
          auto it = hasParam.find(a->name);
          if (it == hasParam.end()) {
            throw ParseError(ParseErrorKind::kUnknownTypeConstructor, lineOf[d.typeConsName], 1,
                             "type constructor " + a->name + " is not defined");
          }
          if (it->second != !a->args.empty()) {
            throw ParseError(ParseErrorKind::kArityMismatch, lineOf[d.typeConsName], 1,
                             "type constructor " + a->name + " takes " +
                                 (it->second ? "one argument" : "no arguments"));
          }
        }
      }
    }
  }
  return defs;
}

Ads parseAds(std::string_view text) {
  Parser p(text, 1);
  Ads ads = [&] {
    if (p.accept(Tok::kLParen)) {
      Ads inner = p.ads();
      p.expect(Tok::kRParen);
      return inner;
    }
    return p.ads();
  }();
  p.expectEnd();
  return ads;
}

FlexConstructorDecl parseFlexDecl(std::string_view text) {
  Parser p(text, 1);
  FlexConstructorDecl decl;
  decl.consName = p.expect(Tok::kUpper).text;
  p.expect(Tok::kColon);
  if (!p.at(Tok::kArrow)) {
    if (p.at(Tok::kEnd)) {
      throw ParseError(ParseErrorKind::kMissingArrow, 1, p.peek().column, "expected '<-'");
    }
    decl.resultType = p.type();
  }
  if (!p.accept(Tok::kArrow)) {
    throw ParseError(ParseErrorKind::kMissingArrow, 1, p.peek().column, "expected '<-'");
  }
  while (p.startsAtom()) decl.argTypes.push_back(p.atom());
  p.expectEnd();
  return decl;
}

std::vector<FlexConstructorDecl> parseFlexDecls(std::string_view text) {
  std::vector<FlexConstructorDecl> out;
  for (const auto& [line, lineNo] : splitLines(text)) {
    try {
      out.push_back(parseFlexDecl(line));
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), lineNo, e.column(), e.what());
    }
  }
  return out;
}

TypeExpr parseTypeExpr(std::string_view text) {
  Parser p(text, 1);
  TypeExpr t = p.type();
  p.expectEnd();
  return t;
}

std::string printType(const TypeExpr& t) {
  if (t.isVar() || t.args.empty()) return t.name;
  return t.name + " " + printAtom(t.args.front());
}

std::string printAds(const Ads& ads) {
  if (ads.isHole()) return "_";
  std::string out = printHead(ads);
  for (const Ads& a : ads.args) {
    out += ' ';
    if (!a.isHole() && !a.args.empty()) {
      out += "(" + printAds(a) + ")";
    } else {
      out += printAds(a);
    }
  }
  return out;
}

std::string printAdtDef(const AdtDefinition& def) {
  std::string out = "::" + def.typeConsName;
  if (def.typeParam) out += " " + *def.typeParam;
  out += " =";
  for (std::size_t i = 0; i < def.alternatives.size(); ++i) {
    if (i > 0) out += " |";
    out += " " + def.alternatives[i].consName;
    for (const TypeExpr& t : def.alternatives[i].argTypes) out += " " + printAtom(t);
  }
  return out;
}

std::string printFlexDecl(const FlexConstructorDecl& decl) {
  std::string out = decl.consName + ":";
  if (decl.resultType) out += " " + printType(*decl.resultType);
  out += " <-";
  for (const TypeExpr& t : decl.argTypes) out += " " + printAtom(t);
  return out;
}

}  // namespace madawipol::textlang
