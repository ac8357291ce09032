// Copyright 2026 The upw Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "upw/parser.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "upw/error.hpp"

namespace upw {
namespace {

enum class Tok {
  kEnd, kVar, kNat, kDiv, kExists, kForall, kTrue, kFalse, kNot, kAnd, kOr, kImp, kIff,
  kEq, kLt, kLe, kPlus, kStar, kDot, kLParen, kRParen
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token Next() {
    SkipSpace();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) return tok;
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Tok::kNat;
      tok.text = TakeWhile([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word = TakeWhile([](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
      });
      tok.text = word;
      if (word == "exists") {
        tok.kind = Tok::kExists;
      } else if (word == "forall") {
        tok.kind = Tok::kForall;
      } else if (word == "true") {
        tok.kind = Tok::kTrue;
      } else if (word == "false") {
        tok.kind = Tok::kFalse;
      } else if (word.rfind("Div_", 0) == 0) {
        const std::string digits = word.substr(4);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) {
              return std::isdigit(static_cast<unsigned char>(ch)) != 0;
            })) {
          throw ParseError("unknown symbol '" + word + "'", tok.line, tok.column);
        }
        tok.kind = Tok::kDiv;
        tok.text = digits;
      } else if (std::islower(static_cast<unsigned char>(word[0]))) {
        tok.kind = Tok::kVar;
      } else {
        throw ParseError("unknown symbol '" + word + "'", tok.line, tok.column);
      }
      return tok;
    }
    auto take = [&](Tok kind, std::size_t len) {
      tok.kind = kind;
      tok.text = std::string(text_.substr(pos_, len));
      Advance(len);
      return tok;
    };
    if (Starts("<->")) return take(Tok::kIff, 3);
    if (Starts("->")) return take(Tok::kImp, 2);
    if (Starts("<=")) return take(Tok::kLe, 2);
    switch (c) {
      case '<': return take(Tok::kLt, 1);
      case '=': return take(Tok::kEq, 1);
      case '!': return take(Tok::kNot, 1);
      case '&': return take(Tok::kAnd, 1);
      case '|': return take(Tok::kOr, 1);
      case '+': return take(Tok::kPlus, 1);
      case '*': return take(Tok::kStar, 1);
      case '.': return take(Tok::kDot, 1);
      case '(': return take(Tok::kLParen, 1);
      case ')': return take(Tok::kRParen, 1);
      default:
        break;
    }
    throw ParseError(std::string("unknown symbol '") + c + "'", tok.line, tok.column);
  }

 private:
  bool Starts(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void Advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) Advance(1);
  }

  template <typename Pred>
  std::string TakeWhile(Pred pred) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) Advance(1);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { current_ = lexer_.Next(); }

  Formula ParseFormulaToEnd() {
    Formula f = ParseIff();
    Expect(Tok::kEnd, "end of input");
    return f;
  }

  LinearTerm ParseTermToEnd() {
    LinearTerm t = ParseTermExpr();
    Expect(Tok::kEnd, "end of input");
    return t;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) {
    std::string got = current_.kind == Tok::kEnd ? "end of input" : "'" + current_.text + "'";
    throw ParseError("syntax error: expected " + what + ", got " + got, current_.line, current_.column);
  }

  void Advance() { current_ = lexer_.Next(); }

  bool Accept(Tok kind) {
    if (current_.kind != kind) return false;
    Advance();
    return true;
  }

  Token Expect(Tok kind, const std::string& what) {
    if (current_.kind != kind) Fail(what);
    Token t = current_;
    Advance();
    return t;
  }

  Formula ParseIff() {
    Formula f = ParseImp();
    while (Accept(Tok::kIff)) f = Formula::Iff(f, ParseImp());
    return f;
  }

  Formula ParseImp() {
    Formula f = ParseOr();
    if (Accept(Tok::kImp)) return Formula::Implies(f, ParseImp());
    return f;
  }

  Formula ParseOr() {
    std::vector<Formula> parts{ParseAnd()};
    while (Accept(Tok::kOr)) parts.push_back(ParseAnd());
    return parts.size() == 1 ? parts.front() : Formula::Or(std::move(parts));
  }

  Formula ParseAnd() {
    std::vector<Formula> parts{ParseUnary()};
    while (Accept(Tok::kAnd)) parts.push_back(ParseUnary());
    return parts.size() == 1 ? parts.front() : Formula::And(std::move(parts));
  }

  Formula ParseUnary() {
    if (Accept(Tok::kNot)) return Formula::Not(ParseUnary());
    if (current_.kind == Tok::kExists || current_.kind == Tok::kForall) {
      const bool exists = current_.kind == Tok::kExists;
      Advance();
      const Variable var = Expect(Tok::kVar, "variable").text;
      Expect(Tok::kDot, "'.'");
      Formula body = ParseUnary();
      return exists ? Formula::Exists(var, body) : Formula::Forall(var, body);
    }
    return ParseAtom();
  }

  Formula ParseAtom() {
    switch (current_.kind) {
      case Tok::kTrue:
        Advance();
        return Formula::True();
      case Tok::kFalse:
        Advance();
        return Formula::False();
      case Tok::kLParen: {
        Advance();
        Formula f = ParseIff();
        Expect(Tok::kRParen, "')'");
        return f;
      }
      case Tok::kDiv: {
        const Token div = current_;
        Advance();
        const Integer m(div.text);
        if (m < 2) throw ParseError("modulus must be at least 2 in Div_" + div.text, div.line, div.column);
        Expect(Tok::kLParen, "'('");
        LinearTerm t = ParseTermExpr();
        Expect(Tok::kRParen, "')'");
        return Formula::Divides(m, t);
      }
      case Tok::kVar:
      case Tok::kNat: {
        LinearTerm lhs = ParseTermExpr();
        const Tok rel = current_.kind;
        if (rel != Tok::kEq && rel != Tok::kLt && rel != Tok::kLe) Fail("'=', '<' or '<='");
        Advance();
        LinearTerm rhs = ParseTermExpr();
        if (rel == Tok::kEq) return Formula::Equal(lhs, rhs);
        if (rel == Tok::kLt) return Formula::Less(lhs, rhs);
        return Formula::LessEq(lhs, rhs);
      }
      default:
        Fail("formula");
    }
  }

  LinearTerm ParseTermExpr() {
    LinearTerm t = ParseProd();
    while (Accept(Tok::kPlus)) t += ParseProd();
    return t;
  }

  LinearTerm ParseProd() {
    if (current_.kind == Tok::kVar) {
      const Variable v = current_.text;
      Advance();
      return LinearTerm::Var(v);
    }
    if (current_.kind == Tok::kNat) {
      const Integer n(current_.text);
      Advance();
      if (Accept(Tok::kStar)) {
        const Variable v = Expect(Tok::kVar, "variable after '*'").text;
        return LinearTerm::Var(v, n);
      }
      return LinearTerm(n);
    }
    Fail("term");
  }

  Lexer lexer_;
  Token current_;
};

}  // namespace

Formula Parse(std::string_view text) { return Canonicalize(Parser(text).ParseFormulaToEnd()); }

LinearTerm ParseTerm(std::string_view text) { return Parser(text).ParseTermToEnd(); }

}  // namespace upw
