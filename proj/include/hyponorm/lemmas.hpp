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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyponorm/core.hpp"

namespace hyponorm {

// Scalar reverse/Gruss-type inequalities on finite real sequences. Each
// checker evaluates both sides verbatim and reports the slack; hypotheses
// are enforced strictly unless the caller opts into report-only mode for
// out-of-hypothesis probing.

/// Range bounds for one or two sequences: a_min <= a_j <= a_max and,
/// where used, b_min <= b_j <= b_max.
struct BoundBox {
  double a_min = 0.0;
  double a_max = 0.0;
  double b_min = 0.0;
  double b_max = 0.0;
};

/// A violated lemma hypothesis, carrying the offending index (or pair).
class PreconditionError : public std::invalid_argument {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  PreconditionError(const std::string& what, std::size_t index,
                    std::size_t second = kNone)
      : std::invalid_argument(what), index_(index), second_(second) {}

  std::size_t index() const { return index_; }
  std::size_t second_index() const { return second_; }

 private:
  std::size_t index_;
  std::size_t second_;
};

enum class Strictness { strict, report_only };

struct LemmaReport {
  std::string lemma_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
  bool lower_holds = true;  // the `0 <= lhs` part, where the lemma has one
};

namespace detail {

inline LemmaReport make_report(std::string id, double lhs, double rhs,
                               bool lower_holds = true) {
  LemmaReport r;
  r.lemma_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.holds = r.slack >= -1.0e-10 * std::max(1.0, std::abs(rhs));
  r.lower_holds = lower_holds;
  return r;
}

inline double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

inline void require_nonempty(std::span<const double> v, const char* who) {
  if (v.empty()) throw std::invalid_argument(std::string(who) + ": empty sequence");
}

inline void require_same_size(std::span<const double> a, std::span<const double> b,
                              const char* who) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(who) + ": length mismatch");
  }
}

inline std::vector<double> diff(std::span<const double> a) {
  std::vector<double> d(a.size() - 1);
  for (std::size_t j = 0; j + 1 < a.size(); ++j) d[j] = a[j + 1] - a[j];
  return d;
}

}  // namespace detail

/// Exact integer identity floor(n/2) * (n - floor(n/2)) == floor(n^2 / 4);
/// both discrete Gruss constants reduce to it.
inline std::uint64_t floor_quarter_square(std::uint64_t n) {
  return (n / 2) * (n - n / 2);
}

/// The three nested range bounds for the discrete Gruss inequality at size n:
/// { floor(n^2/4)/n^2 * range, the identical product form, range/4 }.
inline std::array<double, 3> biernacki_rhs_chain(std::size_t n, double a_range,
                                                 double b_range) {
  const double nn = static_cast<double>(n);
  const double half = std::floor(nn / 2.0);
  const double first = (half / nn) * (1.0 - half / nn) * a_range * b_range;
  const double second = (static_cast<double>(floor_quarter_square(n)) / (nn * nn)) *
                        a_range * b_range;
  const double third = 0.25 * a_range * b_range;
  return {first, second, third};
}

/// Reverse Cauchy-Buniakowski-Schwarz: under a*y_j <= z_j <= A*y_j and
/// positive weights w,
///   0 <= sum(wz^2) sum(wy^2) - (sum(wzy))^2 <= (A-a)^2/4 * (sum(wy^2))^2.
inline LemmaReport reverse_cbs(std::span<const double> z, std::span<const double> y,
                               std::span<const double> w, const BoundBox& box,
                               Strictness strictness = Strictness::strict) {
  detail::require_nonempty(z, "reverse_cbs");
  detail::require_same_size(z, y, "reverse_cbs");
  detail::require_same_size(z, w, "reverse_cbs");
  if (strictness == Strictness::strict) {
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (!(w[j] > 0.0)) {
        throw PreconditionError("reverse_cbs: weight not positive at index " +
                                    std::to_string(j),
                                j);
      }
      if (!(box.a_min * y[j] <= z[j] && z[j] <= box.a_max * y[j])) {
        throw PreconditionError("reverse_cbs: a*y <= z <= A*y fails at index " +
                                    std::to_string(j),
                                j);
      }
    }
  }
  double szz = 0.0, syy = 0.0, szy = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    szz += w[j] * z[j] * z[j];
    syy += w[j] * y[j] * y[j];
    szy += w[j] * z[j] * y[j];
  }
  const double lhs = szz * syy - szy * szy;
  const double range = box.a_max - box.a_min;
  const double rhs = 0.25 * range * range * syy * syy;
  const bool lower = lhs >= -1.0e-12 * std::max(1.0, std::abs(szz * syy));
  return detail::make_report("reverse_cbs", lhs, rhs, lower);
}

/// Shisha-Mond counterpart: under 0 <= a <= a_j <= A and 0 < b <= b_j <= B,
///   sum(a^2) sum(b^2) - (sum(ab))^2 <= (sqrt(A/b) - sqrt(a/B))^2 sum(ab) sum(b^2).
inline LemmaReport shisha_mond_product(std::span<const double> a,
                                       std::span<const double> b, const BoundBox& box,
                                       Strictness strictness = Strictness::strict) {
  detail::require_nonempty(a, "shisha_mond_product");
  detail::require_same_size(a, b, "shisha_mond_product");
  if (strictness == Strictness::strict) {
    if (!(box.a_min >= 0.0) || !(box.b_min > 0.0)) {
      throw PreconditionError("shisha_mond_product: needs 0 <= a and 0 < b",
                              PreconditionError::kNone);
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!(box.a_min <= a[j] && a[j] <= box.a_max)) {
        throw PreconditionError("shisha_mond_product: a out of box at index " +
                                    std::to_string(j),
                                j);
      }
      if (!(box.b_min <= b[j] && b[j] <= box.b_max)) {
        throw PreconditionError("shisha_mond_product: b out of box at index " +
                                    std::to_string(j),
                                j);
      }
    }
  }
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    saa += a[j] * a[j];
    sbb += b[j] * b[j];
    sab += a[j] * b[j];
  }
  const double lhs = saa * sbb - sab * sab;
  const double c = std::sqrt(box.a_max / box.b_min) - std::sqrt(box.a_min / box.b_max);
  const double rhs = c * c * sab * sbb;
  return detail::make_report("shisha_mond_product", lhs, rhs);
}

/// Shisha-Mond square-root counterpart: under 0 <= gamma <= a_j/b_j <= Gamma,
///   0 <= sqrt(sum(a^2) sum(b^2)) - sum(ab)
///     <= (Gamma - gamma)^2 / (4 (gamma + Gamma)) * sum(b^2).
inline LemmaReport shisha_mond_sqrt(std::span<const double> a,
                                    std::span<const double> b, double gamma,
                                    double big_gamma,
                                    Strictness strictness = Strictness::strict) {
  detail::require_nonempty(a, "shisha_mond_sqrt");
  detail::require_same_size(a, b, "shisha_mond_sqrt");
  if (!(gamma + big_gamma > 0.0)) {
    throw PreconditionError("shisha_mond_sqrt: gamma + Gamma must be positive",
                            PreconditionError::kNone);
  }
  if (strictness == Strictness::strict) {
    if (!(gamma >= 0.0) || !(big_gamma >= gamma) || !std::isfinite(big_gamma)) {
      throw PreconditionError("shisha_mond_sqrt: needs 0 <= gamma <= Gamma < inf",
                              PreconditionError::kNone);
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!(b[j] > 0.0)) {
        throw PreconditionError("shisha_mond_sqrt: b not positive at index " +
                                    std::to_string(j),
                                j);
      }
      const double ratio = a[j] / b[j];
      if (!(gamma <= ratio && ratio <= big_gamma)) {
        throw PreconditionError("shisha_mond_sqrt: ratio out of range at index " +
                                    std::to_string(j),
                                j);
      }
    }
  }
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    saa += a[j] * a[j];
    sbb += b[j] * b[j];
    sab += a[j] * b[j];
  }
  const double lhs = std::sqrt(saa * sbb) - sab;
  const double gap = big_gamma - gamma;
  const double rhs = gap * gap / (4.0 * (gamma + big_gamma)) * sbb;
  const bool lower = lhs >= -1.0e-12 * std::max(1.0, std::sqrt(saa * sbb));
  return detail::make_report("shisha_mond_sqrt", lhs, rhs, lower);
}

namespace detail {

/// Synchronicity ((a_j - a_k)(b_j - b_k) >= 0 for all pairs), exact.
/// Pairwise up to 1024 elements; above that an order-based scan gives the
/// same answer in O(n log n).
inline bool find_asynchronous_pair(std::span<const double> a,
                                   std::span<const double> b, std::size_t& j_out,
                                   std::size_t& k_out) {
  const std::size_t n = a.size();
  if (n <= 1024) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if ((a[j] - a[k]) * (b[j] - b[k]) < 0.0) {
          j_out = j;
          k_out = k;
          return true;
        }
      }
    }
    return false;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return a[l] < a[r]; });
  // Within a group of equal a the b values are unconstrained; across strictly
  // increasing a the running maximum of earlier b must not exceed later b.
  double run_max = -std::numeric_limits<double>::infinity();
  std::size_t run_argmax = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t g = i;
    double group_max = b[order[g]];
    std::size_t group_argmax = order[g];
    while (g < n && a[order[g]] == a[order[i]]) {
      if (b[order[g]] > group_max) {
        group_max = b[order[g]];
        group_argmax = order[g];
      }
      ++g;
    }
    for (std::size_t t = i; t < g; ++t) {
      if (b[order[t]] < run_max) {
        j_out = run_argmax;
        k_out = order[t];
        return true;
      }
    }
    if (group_max > run_max) {
      run_max = group_max;
      run_argmax = group_argmax;
    }
    i = g;
  }
  return false;
}

}  // namespace detail

/// Cebysev sum inequality for synchronous sequences:
///   mean(a) * mean(b) <= mean(a*b).
inline LemmaReport chebyshev_sum(std::span<const double> a, std::span<const double> b,
                                 Strictness strictness = Strictness::strict) {
  detail::require_nonempty(a, "chebyshev_sum");
  detail::require_same_size(a, b, "chebyshev_sum");
  if (strictness == Strictness::strict) {
    std::size_t j = 0, k = 0;
    if (detail::find_asynchronous_pair(a, b, j, k)) {
      throw PreconditionError("chebyshev_sum: not synchronous at pair (" +
                                  std::to_string(j) + ", " + std::to_string(k) + ")",
                              j, k);
    }
  }
  const double n = static_cast<double>(a.size());
  double sab = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sab += a[j] * b[j];
  const double lhs = (detail::sum(a) / n) * (detail::sum(b) / n);
  const double rhs = sab / n;
  return detail::make_report("chebyshev_sum", lhs, rhs);
}

/// Discrete Gruss inequality (Biernacki et al.): under the box bounds,
///   |mean(ab) - mean(a) mean(b)| <= floor(n^2/4)/n^2 * (A-a)(B-b),
/// which never exceeds (A-a)(B-b)/4. Checked against the tight form.
inline LemmaReport biernacki_gruss(std::span<const double> a,
                                   std::span<const double> b, const BoundBox& box,
                                   Strictness strictness = Strictness::strict) {
  detail::require_nonempty(a, "biernacki_gruss");
  detail::require_same_size(a, b, "biernacki_gruss");
  if (strictness == Strictness::strict) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!(box.a_min <= a[j] && a[j] <= box.a_max)) {
        throw PreconditionError("biernacki_gruss: a out of box at index " +
                                    std::to_string(j),
                                j);
      }
      if (!(box.b_min <= b[j] && b[j] <= box.b_max)) {
        throw PreconditionError("biernacki_gruss: b out of box at index " +
                                    std::to_string(j),
                                j);
      }
    }
  }
  const double n = static_cast<double>(a.size());
  double sab = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sab += a[j] * b[j];
  const double lhs =
      std::abs(sab / n - (detail::sum(a) / n) * (detail::sum(b) / n));
  const auto chain =
      biernacki_rhs_chain(a.size(), box.a_max - box.a_min, box.b_max - box.b_min);
  return detail::make_report("biernacki_gruss", lhs, chain[1]);
}

struct GrussVariant {
  enum class Kind { sup, holder, l1 };
  Kind kind = Kind::sup;
  double alpha = 2.0;  // holder only

  static GrussVariant sup() { return {Kind::sup, 0.0}; }
  static GrussVariant holder(double alpha) { return {Kind::holder, alpha}; }
  static GrussVariant l1() { return {Kind::l1, 0.0}; }
};

/// Forward-difference Gruss bounds on |mean(ab) - mean(a) mean(b)|:
///   (n^2-1)/12 * ||Da||_inf ||Db||_inf
///   (n^2-1)/(6n) * ||Da||_alpha ||Db||_beta      (1/alpha + 1/beta = 1)
///   (1 - 1/n)/2 * ||Da||_1 ||Db||_1
/// where D is the forward difference.
inline LemmaReport gruss_forward_diff(std::span<const double> a,
                                      std::span<const double> b,
                                      const GrussVariant& variant) {
  detail::require_same_size(a, b, "gruss_forward_diff");
  if (a.size() < 2) {
    throw std::invalid_argument("gruss_forward_diff: needs n >= 2");
  }
  const double n = static_cast<double>(a.size());
  double sab = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sab += a[j] * b[j];
  const double lhs =
      std::abs(sab / n - (detail::sum(a) / n) * (detail::sum(b) / n));

  const std::vector<double> da = detail::diff(a);
  const std::vector<double> db = detail::diff(b);
  double rhs = 0.0;
  std::string id;
  switch (variant.kind) {
    case GrussVariant::Kind::sup:
      rhs = (n * n - 1.0) / 12.0 * pnorm(da, Exponent::infinity()) *
            pnorm(db, Exponent::infinity());
      id = "gruss_fd_sup";
      break;
    case GrussVariant::Kind::holder: {
      if (!(variant.alpha > 1.0) || std::isinf(variant.alpha)) {
        throw std::invalid_argument(
            "gruss_forward_diff: holder variant needs finite alpha > 1");
      }
      const Exponent alpha(variant.alpha);
      rhs = (n * n - 1.0) / (6.0 * n) * pnorm(da, alpha) *
            pnorm(db, alpha.conjugate());
      id = "gruss_fd_holder";
      break;
    }
    case GrussVariant::Kind::l1:
      rhs = 0.5 * (1.0 - 1.0 / n) * pnorm(da, Exponent(1.0)) *
            pnorm(db, Exponent(1.0));
      id = "gruss_fd_l1";
      break;
  }
  return detail::make_report(id, lhs, rhs);
}

/// One self-contained lemma input, as produced by the fuzz generators and
/// accepted by the CLI.
struct LemmaInstance {
  std::string lemma;  // reverse_cbs | shisha_mond_product | shisha_mond_sqrt |
                      // chebyshev_sum | biernacki_gruss | gruss_fd_{sup,holder,l1}
  std::vector<double> a;  // z for reverse_cbs
  std::vector<double> b;  // y for reverse_cbs
  std::vector<double> w;  // weights, reverse_cbs only
  BoundBox box{};
  double gamma = 0.0;
  double big_gamma = 0.0;
  double alpha = 2.0;
};

inline LemmaReport run_lemma_instance(const LemmaInstance& inst,
                                      Strictness strictness = Strictness::strict) {
  if (inst.lemma == "reverse_cbs") {
    return reverse_cbs(inst.a, inst.b, inst.w, inst.box, strictness);
  }
  if (inst.lemma == "shisha_mond_product") {
    return shisha_mond_product(inst.a, inst.b, inst.box, strictness);
  }
  if (inst.lemma == "shisha_mond_sqrt") {
    return shisha_mond_sqrt(inst.a, inst.b, inst.gamma, inst.big_gamma, strictness);
  }
  if (inst.lemma == "chebyshev_sum") {
    return chebyshev_sum(inst.a, inst.b, strictness);
  }
  if (inst.lemma == "biernacki_gruss") {
    return biernacki_gruss(inst.a, inst.b, inst.box, strictness);
  }
  if (inst.lemma == "gruss_fd_sup") {
    return gruss_forward_diff(inst.a, inst.b, GrussVariant::sup());
  }
  if (inst.lemma == "gruss_fd_holder") {
    return gruss_forward_diff(inst.a, inst.b, GrussVariant::holder(inst.alpha));
  }
  if (inst.lemma == "gruss_fd_l1") {
    return gruss_forward_diff(inst.a, inst.b, GrussVariant::l1());
  }
  throw std::invalid_argument("run_lemma_instance: unknown lemma '" + inst.lemma + "'");
}

}  // namespace hyponorm
