// Copyright 2026 The hyponorm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyponorm {

/// An exponent in [1, inf] with conjugate-pair semantics: two exponents
/// p, q are conjugate when 1/p + 1/q = 1, under the conventions
/// conj(1) = inf and conj(inf) = 1.
class Exponent {
 public:
  explicit Exponent(double value) : value_(value) {
    if (!(value >= 1.0)) {  // rejects NaN as well
      throw std::invalid_argument("Exponent: value must be in [1, inf], got " +
                                  std::to_string(value));
    }
  }

  static Exponent infinity() {
    return Exponent(std::numeric_limits<double>::infinity());
  }

  double value() const { return value_; }
  bool is_inf() const { return std::isinf(value_); }
  bool is_one() const { return value_ == 1.0; }
  bool is_two() const { return value_ == 2.0; }

  /// 1/value with the convention 1/inf = 0.
  double reciprocal() const { return is_inf() ? 0.0 : 1.0 / value_; }

  /// Conjugate exponent; exact for 1, 2 and inf.
  Exponent conjugate() const {
    if (is_inf()) return Exponent(1.0);
    if (is_one()) return infinity();
    return Exponent(value_ / (value_ - 1.0));
  }

  /// Accepts "inf", integers ("3"), rationals ("3/2") and decimals ("1.5").
  static Exponent parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Inf") {
      return infinity();
    }
    const std::string s(text);
    const auto slash = s.find('/');
    try {
      if (slash != std::string::npos) {
        const double num = std::stod(s.substr(0, slash));
        const double den = std::stod(s.substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("zero denominator");
        return Exponent(num / den);
      }
      return Exponent(std::stod(s));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Exponent: cannot parse '" + s + "'");
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("Exponent: value out of range: '" + s + "'");
    }
  }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.value_ == b.value_ || (a.is_inf() && b.is_inf());
  }
  friend bool operator!=(const Exponent& a, const Exponent& b) {
    return !(a == b);
  }
  friend bool operator<(const Exponent& a, const Exponent& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Exponent& a, const Exponent& b) {
    return a.value_ <= b.value_ || a == b;
  }

 private:
  double value_;
};

inline Exponent conjugate_exponent(const Exponent& p) { return p.conjugate(); }

inline std::string to_string(const Exponent& e) {
  if (e.is_inf()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", e.value());
  return buf;
}

}  // namespace hyponorm
