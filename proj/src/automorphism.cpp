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

#include "upw/automorphism.hpp"

#include <algorithm>
#include <sstream>

#include "upw/error.hpp"

namespace upw {
namespace {

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

LinearPiece ParsePiece(const std::string& text) {
  const std::vector<std::string> parts = Split(text, ',');
  if (parts.size() != 2) throw ParseError("a piece is 'slope,offset', got '" + text + "'", 1, 1);
  return {ParseRational(parts[0]), ParseRational(parts[1])};
}

}  // namespace

OrderAutomorphism::OrderAutomorphism(std::vector<Rational> breakpoints, std::vector<LinearPiece> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breakpoints_.size() + 1) {
    throw DomainError("need one more piece than breakpoints, got " + std::to_string(pieces_.size()) + " and " +
                      std::to_string(breakpoints_.size()));
  }
  for (const LinearPiece& p : pieces_) {
    if (p.slope <= 0) throw DomainError("slopes must be positive, got " + ToString(p.slope));
  }
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (k > 0 && breakpoints_[k] <= breakpoints_[k - 1]) throw DomainError("breakpoints must increase");
    if (pieces_[k](breakpoints_[k]) != pieces_[k + 1](breakpoints_[k])) {
      throw DomainError("pieces disagree at breakpoint " + ToString(breakpoints_[k]));
    }
  }
  Simplify();
}

OrderAutomorphism OrderAutomorphism::Translation(const Rational& delta) { return Affine(1, delta); }

OrderAutomorphism OrderAutomorphism::Affine(const Rational& slope, const Rational& offset) {
  return OrderAutomorphism({}, {LinearPiece{slope, offset}});
}

OrderAutomorphism OrderAutomorphism::Parse(const std::string& text) {
  if (text == "id") return Identity();
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("unknown automorphism '" + text + "'", 1, 1);
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (kind == "translate") return Translation(ParseRational(body));
  if (kind == "affine") {
    const LinearPiece p = ParsePiece(body);
    return Affine(p.slope, p.offset);
  }
  if (kind == "pl") {
    const std::vector<std::string> parts = Split(body, ';');
    if (parts.size() < 2) throw ParseError("pl needs breakpoints and pieces", 1, 1);
    std::vector<Rational> breakpoints;
    if (!parts[0].empty()) {
      for (const std::string& b : Split(parts[0], ',')) breakpoints.push_back(ParseRational(b));
    }
    std::vector<LinearPiece> pieces;
    for (std::size_t k = 1; k < parts.size(); ++k) pieces.push_back(ParsePiece(parts[k]));
    return OrderAutomorphism(std::move(breakpoints), std::move(pieces));
  }
  throw ParseError("unknown automorphism kind '" + kind + "'", 1, 1);
}

std::size_t OrderAutomorphism::piece_index(const Rational& x) const {
  return static_cast<std::size_t>(std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                  breakpoints_.begin());
}

Rational OrderAutomorphism::operator()(const Rational& x) const { return pieces_[piece_index(x)](x); }

void OrderAutomorphism::Simplify() {
  std::vector<Rational> breakpoints;
  std::vector<LinearPiece> pieces{pieces_.front()};
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (pieces_[k + 1] == pieces.back()) continue;
    breakpoints.push_back(breakpoints_[k]);
    pieces.push_back(pieces_[k + 1]);
  }
  breakpoints_ = std::move(breakpoints);
  pieces_ = std::move(pieces);
}

OrderAutomorphism OrderAutomorphism::inverse() const {
  std::vector<Rational> breakpoints;
  std::vector<LinearPiece> pieces;
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) breakpoints.push_back((*this)(breakpoints_[k]));
  for (const LinearPiece& p : pieces_) pieces.push_back({1 / p.slope, -p.offset / p.slope});
  return OrderAutomorphism(std::move(breakpoints), std::move(pieces));
}

OrderAutomorphism OrderAutomorphism::compose(const OrderAutomorphism& inner) const {
  const OrderAutomorphism inner_inverse = inner.inverse();
  std::vector<Rational> cuts = inner.breakpoints_;
  for (const Rational& b : breakpoints_) cuts.push_back(inner_inverse(b));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<LinearPiece> pieces;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    Rational sample;
    if (cuts.empty()) {
      sample = 0;
    } else if (k == 0) {
      sample = cuts.front() - 1;
    } else if (k == cuts.size()) {
      sample = cuts.back() + 1;
    } else {
      sample = (cuts[k - 1] + cuts[k]) / 2;
    }
    const LinearPiece& in = inner.pieces_[inner.piece_index(sample)];
    const LinearPiece& out = pieces_[piece_index(in(sample))];
    pieces.push_back({out.slope * in.slope, out.slope * in.offset + out.offset});
  }
  return OrderAutomorphism(std::move(cuts), std::move(pieces));
}

OrderAutomorphism OrderAutomorphism::power(long long n) const {
  const OrderAutomorphism base = n < 0 ? inverse() : *this;
  OrderAutomorphism out;
  for (long long k = 0; k < (n < 0 ? -n : n); ++k) out = base.compose(out);
  return out;
}

std::optional<Rational> OrderAutomorphism::fixed_point() const {
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const LinearPiece& p = pieces_[k];
    const bool has_lo = k > 0;
    const bool has_hi = k < breakpoints_.size();
    if (p.slope == 1) {
      if (p.offset != 0) continue;
      if (has_lo) return breakpoints_[k - 1];
      if (has_hi) return breakpoints_[k];
      return Rational(0);
    }
    const Rational x = p.offset / (1 - p.slope);
    if ((!has_lo || breakpoints_[k - 1] <= x) && (!has_hi || x <= breakpoints_[k])) return x;
  }
  return std::nullopt;
}

std::string OrderAutomorphism::str() const {
  if (breakpoints_.empty()) {
    const LinearPiece& p = pieces_.front();
    if (p.slope == 1 && p.offset == 0) return "id";
    if (p.slope == 1) return "translate:" + ToString(p.offset);
    return "affine:" + ToString(p.slope) + "," + ToString(p.offset);
  }
  std::string out = "pl:";
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) out += (k ? "," : "") + ToString(breakpoints_[k]);
  for (const LinearPiece& p : pieces_) out += ";" + ToString(p.slope) + "," + ToString(p.offset);
  return out;
}

}  // namespace upw
