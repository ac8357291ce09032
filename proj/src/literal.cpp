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


#include "upw/literal.hpp"

#include <cctype>
#include <string>

#include "upw/error.hpp"
#include "upw/parser.hpp"

namespace upw {
namespace {

bool IsBlank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && IsBlank(s[b])) ++b;
  while (e > b && IsBlank(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

class LiteralReader {
 public:
  LiteralReader(std::string_view text, const QeOptions& options) : text_(text), options_(options) {}

  bool AtEnd() {
    SkipSeparators();
    return pos_ >= text_.size();
  }

  GeneralizedTerm Read() {
    SkipBlanks();
    Expect('[');
    SkipBlanks();
    const std::string head = Word();
    SkipBlanks();
    if (head == "id" || head == "const") {
      Expect('@');
      const std::string body = Trim(Until(']'));
      Expect(']');
      if (head == "id") return GeneralizedTerm::Generator(IndexLabel::Parse(body));
      const Rational value = ParseRational(body);
      if (value < 0 || denominator(value) != 1) Fail("constant must be a natural number");
      return Embed(numerator(value));
    }
    if (head == "graph") {
      const std::string graph = Quoted();
      SkipBlanks();
      Keyword("vars");
      SkipBlanks();
      Expect('(');
      const std::vector<std::string> inputs = SplitList(Until(')'));
      Expect(')');
      SkipBlanks();
      Keyword("out");
      SkipBlanks();
      const std::string output = Word();
      if (output.empty()) Fail("expected output variable");
      SkipBlanks();
      Expect('@');
      std::vector<IndexLabel> labels = ParseLabelList(Until(']'));
      Expect(']');
      return GeneralizedTerm::Make(Parse(graph), inputs, output, std::move(labels), options_);
    }
    if (head == "term") {
      const std::string term = Quoted();
      SkipBlanks();
      Expect('@');
      std::vector<IndexLabel> labels = ParseLabelList(Until(']'));
      Expect(']');
      std::vector<Variable> inputs;
      for (std::size_t i = 0; i < labels.size(); ++i) inputs.push_back(GeneralizedTerm::InputName(i));
      return GeneralizedTerm::FromTerm(ParseTerm(term), inputs, std::move(labels));
    }
    Fail("unknown term literal '" + head + "'");
  }

 private:
  [[noreturn]] void Fail(const std::string& why) const { throw ParseError(why, 1, pos_ + 1); }

  void SkipBlanks() {
    while (pos_ < text_.size() && IsBlank(text_[pos_])) ++pos_;
  }

  void SkipSeparators() {
    while (pos_ < text_.size() && (IsBlank(text_[pos_]) || text_[pos_] == ',')) ++pos_;
  }

  void Expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void Keyword(const std::string& word) {
    if (Word() != word) Fail("expected '" + word + "'");
  }

  std::string Word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string Until(char stop) {
    const std::size_t end = text_.find(stop, pos_);
    if (end == std::string_view::npos) Fail(std::string("missing '") + stop + "'");
    std::string out(text_.substr(pos_, end - pos_));
    pos_ = end;
    return out;
  }

  std::string Quoted() {
    Expect('"');
    std::string out = Until('"');
    Expect('"');
    return out;
  }

  std::string_view text_;
  const QeOptions& options_;
  std::size_t pos_ = 0;
};

}  // namespace

GeneralizedTerm ParseTermLiteral(std::string_view text, const QeOptions& options) {
  LiteralReader reader(text, options);
  GeneralizedTerm t = reader.Read();
  if (!reader.AtEnd()) throw ParseError("trailing text after term literal", 1, text.size());
  return t;
}

std::vector<GeneralizedTerm> ParseTermLiterals(std::string_view text, const QeOptions& options) {
  LiteralReader reader(text, options);
  std::vector<GeneralizedTerm> out;
  while (!reader.AtEnd()) out.push_back(reader.Read());
  return out;
}

std::vector<std::string> SplitList(std::string_view text) {
  std::vector<std::string> out;
  const std::string all = Trim(text);
  if (all.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = all.find(',', start);
    const std::string item = Trim(std::string_view(all).substr(start, comma - start));
    if (item.empty()) throw ParseError("empty list item", 1, start + 1);
    out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<IndexLabel> ParseLabelList(std::string_view text) {
  std::string body = Trim(text);
  if (!body.empty() && body.front() == '{') {
    if (body.back() != '}') throw ParseError("unbalanced '{'", 1, body.size());
    body = body.substr(1, body.size() - 2);
  }
  std::vector<IndexLabel> out;
  for (const std::string& item : SplitList(body)) out.push_back(IndexLabel::Parse(item));
  return out;
}

Assignment ParseAssignment(std::string_view text) {
  Assignment out;
  for (const std::string& item : SplitList(text)) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected name=value in '" + item + "'", 1, 1);
    const std::string name = Trim(std::string_view(item).substr(0, eq));
    const std::string value = Trim(std::string_view(item).substr(eq + 1));
    if (name.empty() || value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("bad assignment '" + item + "'", 1, 1);
    }
    if (!out.emplace(name, Integer(value)).second) throw ParseError("'" + name + "' assigned twice", 1, 1);
  }
  return out;
}

}  // namespace upw
