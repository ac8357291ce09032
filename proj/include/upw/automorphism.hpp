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

#ifndef UPW_AUTOMORPHISM_HPP_
#define UPW_AUTOMORPHISM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "upw/integer.hpp"
#include "upw/ultrapower.hpp"

namespace upw {

// x |-> slope * x + offset
struct LinearPiece {
  Rational slope = 1;
  Rational offset = 0;

  Rational operator()(const Rational& x) const { return slope * x + offset; }
  friend bool operator==(const LinearPiece&, const LinearPiece&) = default;
};

// A continuous, strictly increasing, piecewise-linear bijection of the
// rationals. Piece k applies on [b(k-1), b(k)], with b(-1) = -inf and
// b(n) = +inf for n breakpoints.
class OrderAutomorphism {
 public:
  OrderAutomorphism() : pieces_{LinearPiece{}} {}
  // Throws DomainError unless breakpoints increase, slopes are positive and
  // neighbouring pieces agree at their shared breakpoint.
  OrderAutomorphism(std::vector<Rational> breakpoints, std::vector<LinearPiece> pieces);

  static OrderAutomorphism Identity() { return {}; }
  static OrderAutomorphism Translation(const Rational& delta);
  static OrderAutomorphism Affine(const Rational& slope, const Rational& offset);
  // "id", "translate:c", "affine:p,q" or "pl:b1,..,bn;p0,q0;...;pn,qn".
  static OrderAutomorphism Parse(const std::string& text);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<LinearPiece>& pieces() const { return pieces_; }

  Rational operator()(const Rational& x) const;
  IndexLabel operator()(const IndexLabel& i) const { return IndexLabel((*this)(i.position())); }

  OrderAutomorphism inverse() const;
  // (*this) after `inner`.
  OrderAutomorphism compose(const OrderAutomorphism& inner) const;
  // n-fold iterate; negative n iterates the inverse.
  OrderAutomorphism power(long long n) const;

  // Some fixed point, if any exists.
  std::optional<Rational> fixed_point() const;

  std::string str() const;

  friend bool operator==(const OrderAutomorphism&, const OrderAutomorphism&) = default;

 private:
  std::size_t piece_index(const Rational& x) const;
  void Simplify();

  std::vector<Rational> breakpoints_;
  std::vector<LinearPiece> pieces_;
};

}  // namespace upw

#endif  // UPW_AUTOMORPHISM_HPP_
