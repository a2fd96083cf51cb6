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
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyponorm/exponent.hpp"

namespace hyponorm {

enum class Field { real, complex };

inline const char* to_string(Field f) {
  return f == Field::real ? "real" : "complex";
}

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr Field field = Field::real;
  static double conj(double v) { return v; }
};

template <>
struct scalar_traits<std::complex<double>> {
  static constexpr Field field = Field::complex;
  static std::complex<double> conj(const std::complex<double>& v) {
    return std::conj(v);
  }
};

template <typename T>
concept Scalar =
    std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>;

using Complex = std::complex<double>;

/// A finite-dimensional coordinate space over R or C carrying an s-norm.
/// `ground_exponent` is the s of that norm; s = 2 is the Euclidean case.
struct GroundSpace {
  int dim;
  Field field;
  Exponent ground_exponent;

  GroundSpace(int dim_, Field field_, Exponent s)
      : dim(dim_), field(field_), ground_exponent(s) {
    if (dim_ < 1) {
      throw std::invalid_argument("GroundSpace: dim must be >= 1, got " +
                                  std::to_string(dim_));
    }
  }

  bool euclidean() const { return ground_exponent.is_two(); }

  friend bool operator==(const GroundSpace& a, const GroundSpace& b) {
    return a.dim == b.dim && a.field == b.field &&
           a.ground_exponent == b.ground_exponent;
  }
};

/// p-norm of a coefficient sequence: (sum |c_k|^p)^(1/p), max |c_k| at p=inf.
/// Values of p other than 1, 2 and inf go through a max-rescaled power sum.
template <Scalar S>
double pnorm(std::span<const S> v, const Exponent& p) {
  if (v.empty()) return 0.0;
  if (p.is_inf()) {
    double best = 0.0;
    for (const S& c : v) best = std::max(best, std::abs(c));
    return best;
  }
  const double pv = p.value();
  if (pv == 1.0) {
    double sum = 0.0;
    for (const S& c : v) sum += std::abs(c);
    return sum;
  }
  if (pv == 2.0) {
    double sum = 0.0;
    for (const S& c : v) {
      const double a = std::abs(c);
      sum += a * a;
    }
    return std::sqrt(sum);
  }
  double scale = 0.0;
  for (const S& c : v) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const S& c : v) sum += std::pow(std::abs(c) / scale, pv);
  return scale * std::pow(sum, 1.0 / pv);
}

template <Scalar S>
double pnorm(const std::vector<S>& v, const Exponent& p) {
  return pnorm(std::span<const S>(v), p);
}

template <Scalar S>
double scalar_pnorm(const std::vector<S>& coeffs, const Exponent& p) {
  return pnorm(std::span<const S>(coeffs), p);
}

/// An n-tuple of vectors sharing one ground space.
template <Scalar S>
struct Tuple {
  using scalar_type = S;

  GroundSpace space;
  std::vector<std::vector<S>> entries;

  Tuple(GroundSpace space_, std::vector<std::vector<S>> entries_)
      : space(space_), entries(std::move(entries_)) {
    if (space.field != scalar_traits<S>::field) {
      throw std::invalid_argument("Tuple: scalar type does not match field");
    }
    if (entries.empty()) {
      throw std::invalid_argument("Tuple: needs at least one entry");
    }
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (static_cast<int>(entries[j].size()) != space.dim) {
        throw std::invalid_argument(
            "Tuple: entry " + std::to_string(j) + " has length " +
            std::to_string(entries[j].size()) + ", expected " +
            std::to_string(space.dim));
      }
    }
  }

  int n() const { return static_cast<int>(entries.size()); }
  int m() const { return space.dim; }
};

using RealTuple = Tuple<double>;
using ComplexTuple = Tuple<Complex>;

template <Scalar S>
double ground_norm(const GroundSpace& space, std::span<const S> v) {
  return pnorm(v, space.ground_exponent);
}

template <Scalar S>
double ground_norm(const Tuple<S>& x, int j) {
  return pnorm(std::span<const S>(x.entries[j]), x.space.ground_exponent);
}

template <Scalar S>
std::vector<double> ground_norms(const Tuple<S>& x) {
  std::vector<double> out(x.entries.size());
  for (std::size_t j = 0; j < x.entries.size(); ++j) {
    out[j] = pnorm(std::span<const S>(x.entries[j]), x.space.ground_exponent);
  }
  return out;
}

/// p-norm of the sequence of ground norms of the entries.
template <Scalar S>
double tuple_pnorm(const Tuple<S>& x, const Exponent& p) {
  const std::vector<double> norms = ground_norms(x);
  return pnorm(std::span<const double>(norms), p);
}

/// (x_2 - x_1, ..., x_n - x_{n-1}); requires n >= 2.
template <Scalar S>
Tuple<S> forward_difference(const Tuple<S>& x) {
  if (x.n() < 2) {
    throw std::invalid_argument("forward_difference: needs n >= 2");
  }
  std::vector<std::vector<S>> diffs(x.n() - 1);
  for (int j = 0; j + 1 < x.n(); ++j) {
    diffs[j].resize(x.m());
    for (int k = 0; k < x.m(); ++k) {
      diffs[j][k] = x.entries[j + 1][k] - x.entries[j][k];
    }
  }
  return Tuple<S>(x.space, std::move(diffs));
}

/// Sum of the coordinate inner products, conjugate-linear in the second
/// argument. Requires Euclidean ground on both sides.
template <Scalar S>
S tuple_inner(const Tuple<S>& x, const Tuple<S>& y) {
  if (!x.space.euclidean() || !y.space.euclidean()) {
    throw std::invalid_argument("tuple_inner: requires Euclidean ground");
  }
  if (x.n() != y.n() || x.m() != y.m()) {
    throw std::invalid_argument("tuple_inner: shape mismatch");
  }
  S acc{};
  for (int j = 0; j < x.n(); ++j) {
    for (int k = 0; k < x.m(); ++k) {
      acc += x.entries[j][k] * scalar_traits<S>::conj(y.entries[j][k]);
    }
  }
  return acc;
}

template <Scalar S>
Tuple<S> add(const Tuple<S>& x, const Tuple<S>& y) {
  if (!(x.space == y.space) || x.n() != y.n()) {
    throw std::invalid_argument("add: shape mismatch");
  }
  std::vector<std::vector<S>> entries = x.entries;
  for (int j = 0; j < x.n(); ++j) {
    for (int k = 0; k < x.m(); ++k) entries[j][k] += y.entries[j][k];
  }
  return Tuple<S>(x.space, std::move(entries));
}

template <Scalar S>
Tuple<S> scale(const Tuple<S>& x, const S& factor) {
  std::vector<std::vector<S>> entries = x.entries;
  for (auto& e : entries) {
    for (auto& c : e) c *= factor;
  }
  return Tuple<S>(x.space, std::move(entries));
}

}  // namespace hyponorm
