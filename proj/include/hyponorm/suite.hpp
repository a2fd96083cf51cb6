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
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyponorm/engine.hpp"

namespace hyponorm {

// Tuple-level inequality checks with direction-safe verdicts. Hypo norms
// enter as certified intervals; an inequality is `verified` only when it
// holds with every uncertain factor at its unfavorable end, and `violated`
// only when it fails with every uncertain factor at its favorable end.
// Everything in between is `inconclusive`.

/// A certified enclosure lo <= true value <= hi.
struct Bound {
  double lo = 0.0;
  double hi = 0.0;

  Bound() = default;
  Bound(double lo_, double hi_) : lo(lo_), hi(hi_) {}
  static Bound exact(double v) { return {v, v}; }
  bool is_exact() const { return lo == hi; }
};

/// base^e for base >= 0, e >= 0; routed through exp/log for large e.
inline double pow_nonneg(double base, double e) {
  if (e == 0.0) return 1.0;
  if (base <= 0.0) return 0.0;
  if (e > 16.0) return std::exp(e * std::log(base));
  return std::pow(base, e);
}

inline Bound add(const Bound& a, const Bound& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Bound sub(const Bound& a, const Bound& b) { return {a.lo - b.hi, a.hi - b.lo}; }
// mul and powers assume nonnegative enclosures, which all norm factors are.
inline Bound mul(const Bound& a, const Bound& b) { return {a.lo * b.lo, a.hi * b.hi}; }
inline Bound mul_const(const Bound& a, double c) { return {a.lo * c, a.hi * c}; }
inline Bound pow_bound(const Bound& a, double e) {
  return {pow_nonneg(a.lo, e), pow_nonneg(a.hi, e)};
}
inline Bound square(const Bound& a) { return pow_bound(a, 2.0); }

enum class Verdict { verified, inconclusive, violated };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::violated: return "violated";
  }
  return "unknown";
}

/// Direction-safe comparison of L <= R for enclosures L, R.
inline Verdict judge(const Bound& lhs, const Bound& rhs) {
  const double tol =
      1.0e-9 * std::max({1.0, std::abs(lhs.hi), std::abs(rhs.hi)});
  if (lhs.hi <= rhs.lo + tol) return Verdict::verified;
  if (lhs.lo > rhs.hi + tol) return Verdict::violated;
  return Verdict::inconclusive;
}

struct InequalityRecord {
  std::string id;
  std::string relation;  // the inequality being checked, in plain notation
  double lhs = 0.0;      // unfavorable end of the left side
  double rhs = 0.0;      // unfavorable end of the right side
  double slack = 0.0;    // rhs - lhs
  Verdict verdict = Verdict::inconclusive;
  std::map<std::string, std::string> provenance;  // factor -> method + interval
};

struct TupleDescriptor {
  int n = 0;
  int m = 0;
  Field field = Field::real;
  Exponent ground = Exponent(2.0);
  std::optional<std::uint64_t> seed;
};

struct SuiteReport {
  TupleDescriptor descriptor;
  std::vector<InequalityRecord> records;
  int verified = 0;
  int inconclusive = 0;
  int violated = 0;

  void add(InequalityRecord rec) {
    switch (rec.verdict) {
      case Verdict::verified: ++verified; break;
      case Verdict::inconclusive: ++inconclusive; break;
      case Verdict::violated: ++violated; break;
    }
    records.push_back(std::move(rec));
  }
};

namespace records {

using Provenance = std::map<std::string, std::string>;

inline std::string describe(Method method, const Bound& b) {
  char buf[96];
  if (b.is_exact()) {
    std::snprintf(buf, sizeof(buf), "%s exact %.17g", to_string(method), b.lo);
  } else {
    std::snprintf(buf, sizeof(buf), "%s interval [%.17g, %.17g]", to_string(method),
                  b.lo, b.hi);
  }
  return buf;
}

inline InequalityRecord make_record(std::string id, std::string relation,
                                    const Bound& lhs, const Bound& rhs,
                                    Provenance provenance = {}) {
  InequalityRecord rec;
  rec.id = std::move(id);
  rec.relation = std::move(relation);
  rec.lhs = lhs.hi;
  rec.rhs = rhs.lo;
  rec.slack = rec.rhs - rec.lhs;
  rec.verdict = judge(lhs, rhs);
  rec.provenance = std::move(provenance);
  return rec;
}

/// n^(-1/q) ||x||_{n,q} <= hypo(x,q) <= ||x||_{n,q}
inline std::array<InequalityRecord, 2> sandwich(const Bound& hypo, double pn_q,
                                                int n, const Exponent& q,
                                                Provenance prov = {}) {
  const double lo_side = std::pow(static_cast<double>(n), -q.reciprocal()) * pn_q;
  const std::string qs = to_string(q);
  return {make_record("sandwich.lower[q=" + qs + "]",
                      "n^(-1/q) pnorm(x,q) <= hypo(x,q)", Bound::exact(lo_side),
                      hypo, prov),
          make_record("sandwich.upper[q=" + qs + "]", "hypo(x,q) <= pnorm(x,q)",
                      hypo, Bound::exact(pn_q), prov)};
}

/// hypo(x,r) <= hypo(x,q) <= n^(1/q - 1/r) hypo(x,r), for r >= q.
inline std::array<InequalityRecord, 2> q_monotonicity(const Bound& hypo_q,
                                                      const Bound& hypo_r, int n,
                                                      const Exponent& q,
                                                      const Exponent& r,
                                                      Provenance prov = {}) {
  const double expo = q.reciprocal() - r.reciprocal();
  const double factor = std::pow(static_cast<double>(n), expo);
  const std::string tag = "[q=" + to_string(q) + ",r=" + to_string(r) + "]";
  return {make_record("q_mono.lower" + tag, "hypo(x,r) <= hypo(x,q)", hypo_r,
                      hypo_q, prov),
          make_record("q_mono.upper" + tag,
                      "hypo(x,q) <= n^(1/q-1/r) hypo(x,r)", hypo_q,
                      mul_const(hypo_r, factor), prov)};
}

/// The three reverse bounds tying hypo(x,2) to hypo(x,1) through the max
/// norm R = pnorm(x,inf):
///   hypo(x,2)^2 - hypo(x,1)^2/n <= n R^2 / 4
///   hypo(x,2)^2 - hypo(x,1)^2/n <= hypo(x,1) R
///   hypo(x,2) - hypo(x,1)/sqrt(n) <= sqrt(n) R / 4
inline std::array<InequalityRecord, 3> euclid_l1_reverse(const Bound& hypo_e,
                                                         const Bound& hypo_1,
                                                         double pn_inf, int n,
                                                         Provenance prov = {}) {
  const double nn = static_cast<double>(n);
  const Bound gap_sq = sub(square(hypo_e), mul_const(square(hypo_1), 1.0 / nn));
  const Bound gap_lin = sub(hypo_e, mul_const(hypo_1, 1.0 / std::sqrt(nn)));
  return {make_record("euclid_l1.squared_range",
                      "hypo(x,2)^2 - hypo(x,1)^2/n <= n/4 pnorm(x,inf)^2", gap_sq,
                      Bound::exact(0.25 * nn * pn_inf * pn_inf), prov),
          make_record("euclid_l1.squared_product",
                      "hypo(x,2)^2 - hypo(x,1)^2/n <= hypo(x,1) pnorm(x,inf)",
                      gap_sq, mul_const(hypo_1, pn_inf), prov),
          make_record("euclid_l1.linear_range",
                      "hypo(x,2) - hypo(x,1)/sqrt(n) <= sqrt(n)/4 pnorm(x,inf)",
                      gap_lin, Bound::exact(0.25 * std::sqrt(nn) * pn_inf), prov)};
}

/// hypo(x,q+r)^(q+r) <= hypo(x,q)^q hypo(x,r)^r / n
///                      + floor(n^2/4)/n * pnorm(x,inf)^(q+r)
inline InequalityRecord power_product(const Bound& hypo_qr, const Bound& hypo_q,
                                      const Bound& hypo_r, double pn_inf, int n,
                                      const Exponent& q, const Exponent& r,
                                      Provenance prov = {}) {
  const double nn = static_cast<double>(n);
  const double qr_sum = q.value() + r.value();
  const double gruss = static_cast<double>((static_cast<std::uint64_t>(n) / 2) *
                                           (static_cast<std::uint64_t>(n) -
                                            static_cast<std::uint64_t>(n) / 2)) /
                       nn * pow_nonneg(pn_inf, qr_sum);
  const Bound lhs = pow_bound(hypo_qr, qr_sum);
  const Bound rhs = add(mul_const(mul(pow_bound(hypo_q, q.value()),
                                      pow_bound(hypo_r, r.value())),
                                  1.0 / nn),
                        Bound::exact(gruss));
  return make_record("power_product[q=" + to_string(q) + ",r=" + to_string(r) + "]",
                     "hypo(x,q+r)^(q+r) <= hypo(x,q)^q hypo(x,r)^r / n"
                     " + floor(n^2/4)/n pnorm(x,inf)^(q+r)",
                     lhs, rhs, prov);
}

/// The three forward-difference bounds on the same power-product gap, with
/// dx the forward difference of x and R = pnorm(x,inf):
///   gap <= qr (n^2-1) n / 12 * R^(q+r-2) pnorm(dx,inf)^2
///   gap <= qr (n^2-1) / 6   * R^(q+r-2) hypo(dx,alpha) hypo(dx,beta)
///   gap <= qr (n-1) / 2     * R^(q+r-2) hypo(dx,1)^2
inline std::array<InequalityRecord, 3> forward_diff_product(
    const Bound& hypo_qr, const Bound& hypo_q, const Bound& hypo_r,
    const Bound& hypo_dx_alpha, const Bound& hypo_dx_beta, const Bound& hypo_dx_1,
    double pn_inf, double pn_dx_inf, int n, const Exponent& q, const Exponent& r,
    const Exponent& alpha, Provenance prov = {}) {
  const double nn = static_cast<double>(n);
  const double qv = q.value(), rv = r.value();
  const double qr_sum = qv + rv;
  const Bound gap = sub(pow_bound(hypo_qr, qr_sum),
                        mul_const(mul(pow_bound(hypo_q, qv), pow_bound(hypo_r, rv)),
                                  1.0 / nn));
  const double rexp = pow_nonneg(pn_inf, qr_sum - 2.0);
  const std::string tag = "[q=" + to_string(q) + ",r=" + to_string(r) + "]";

  const double sup_rhs =
      qv * rv * (nn * nn - 1.0) * nn / 12.0 * rexp * pn_dx_inf * pn_dx_inf;
  const Bound holder_rhs = mul_const(mul(hypo_dx_alpha, hypo_dx_beta),
                                     qv * rv * (nn * nn - 1.0) / 6.0 * rexp);
  const Bound l1_rhs =
      mul_const(square(hypo_dx_1), qv * rv * (nn - 1.0) / 2.0 * rexp);

  return {make_record("fd_product.sup" + tag,
                      "gap(q,r) <= qr (n^2-1) n / 12 R^(q+r-2) pnorm(dx,inf)^2",
                      gap, Bound::exact(sup_rhs), prov),
          make_record("fd_product.holder" + tag + "[alpha=" + to_string(alpha) + "]",
                      "gap(q,r) <= qr (n^2-1) / 6 R^(q+r-2)"
                      " hypo(dx,alpha) hypo(dx,beta)",
                      gap, holder_rhs, prov),
          make_record("fd_product.l1" + tag,
                      "gap(q,r) <= qr (n-1) / 2 R^(q+r-2) hypo(dx,1)^2", gap,
                      l1_rhs, prov)};
}

}  // namespace records

namespace detail {

template <Scalar S>
Bound to_bound(const HypoNormResult<S>& r) {
  return {r.lower, r.upper};
}

template <Scalar S>
struct CertifiedFactor {
  Bound bound;
  Method method = Method::ascent;
};

/// Per-tuple cache of certified hypo norms, keyed by the exponent value.
template <Scalar S>
class FactorCache {
 public:
  FactorCache(const Tuple<S>& x, const OptimizerConfig& cfg, std::string label)
      : x_(x), cfg_(cfg), label_(std::move(label)) {}

  const CertifiedFactor<S>& get(const Exponent& q) {
    auto it = cache_.find(q.value());
    if (it == cache_.end()) {
      const HypoNormResult<S> res = certify(x_, q, cfg_);
      it = cache_.emplace(q.value(), CertifiedFactor<S>{to_bound(res), res.method})
               .first;
    }
    return it->second;
  }

  void note(records::Provenance& prov, const Exponent& q) {
    const CertifiedFactor<S>& f = get(q);
    prov["hypo(" + label_ + ",q=" + to_string(q) + ")"] =
        records::describe(f.method, f.bound);
  }

 private:
  const Tuple<S>& x_;
  OptimizerConfig cfg_;
  std::string label_;
  std::map<double, CertifiedFactor<S>> cache_;
};

}  // namespace detail

template <Scalar S>
std::array<InequalityRecord, 2> check_sandwich(const Tuple<S>& x, const Exponent& q,
                                               const OptimizerConfig& cfg = {}) {
  detail::FactorCache<S> cache(x, cfg, "x");
  records::Provenance prov;
  cache.note(prov, q);
  return records::sandwich(cache.get(q).bound, tuple_pnorm(x, q), x.n(), q, prov);
}

template <Scalar S>
std::array<InequalityRecord, 2> check_q_monotonicity(const Tuple<S>& x,
                                                     const Exponent& q,
                                                     const Exponent& r,
                                                     const OptimizerConfig& cfg = {}) {
  if (!(q <= r)) {
    throw std::invalid_argument("check_q_monotonicity: needs r >= q");
  }
  detail::FactorCache<S> cache(x, cfg, "x");
  records::Provenance prov;
  cache.note(prov, q);
  cache.note(prov, r);
  return records::q_monotonicity(cache.get(q).bound, cache.get(r).bound, x.n(), q, r,
                                 prov);
}

template <Scalar S>
std::array<InequalityRecord, 3> check_euclidean_l1_reverse(
    const Tuple<S>& x, const OptimizerConfig& cfg = {}) {
  detail::FactorCache<S> cache(x, cfg, "x");
  records::Provenance prov;
  cache.note(prov, Exponent(2.0));
  cache.note(prov, Exponent(1.0));
  return records::euclid_l1_reverse(cache.get(Exponent(2.0)).bound,
                                    cache.get(Exponent(1.0)).bound,
                                    tuple_pnorm(x, Exponent::infinity()), x.n(), prov);
}

template <Scalar S>
InequalityRecord check_power_product(const Tuple<S>& x, const Exponent& q,
                                     const Exponent& r,
                                     const OptimizerConfig& cfg = {}) {
  if (q.is_inf() || r.is_inf()) {
    throw std::invalid_argument("check_power_product: q and r must be finite");
  }
  detail::FactorCache<S> cache(x, cfg, "x");
  const Exponent qr(q.value() + r.value());
  records::Provenance prov;
  cache.note(prov, q);
  cache.note(prov, r);
  cache.note(prov, qr);
  return records::power_product(cache.get(qr).bound, cache.get(q).bound,
                                cache.get(r).bound,
                                tuple_pnorm(x, Exponent::infinity()), x.n(), q, r,
                                prov);
}

template <Scalar S>
std::array<InequalityRecord, 3> check_forward_diff_product(
    const Tuple<S>& x, const Exponent& q, const Exponent& r, const Exponent& alpha,
    const OptimizerConfig& cfg = {}) {
  if (x.n() < 2) {
    throw std::invalid_argument("check_forward_diff_product: needs n >= 2");
  }
  if (q.is_inf() || r.is_inf()) {
    throw std::invalid_argument("check_forward_diff_product: q and r must be finite");
  }
  if (alpha.is_inf() || alpha.is_one()) {
    throw std::invalid_argument(
        "check_forward_diff_product: alpha must be finite and > 1");
  }
  const Exponent beta = alpha.conjugate();
  const Exponent qr(q.value() + r.value());
  const Tuple<S> dx = forward_difference(x);
  detail::FactorCache<S> cache(x, cfg, "x");
  detail::FactorCache<S> dcache(dx, cfg, "dx");
  records::Provenance prov;
  cache.note(prov, q);
  cache.note(prov, r);
  cache.note(prov, qr);
  dcache.note(prov, alpha);
  dcache.note(prov, beta);
  dcache.note(prov, Exponent(1.0));
  return records::forward_diff_product(
      cache.get(qr).bound, cache.get(q).bound, cache.get(r).bound,
      dcache.get(alpha).bound, dcache.get(beta).bound, dcache.get(Exponent(1.0)).bound,
      tuple_pnorm(x, Exponent::infinity()),
      tuple_pnorm(dx, Exponent::infinity()), x.n(), q, r, alpha, prov);
}

/// Runs every checker over the exponent set (pairs drawn from it where a
/// checker takes two exponents; the forward-difference checker uses alpha=2).
/// Records come back sorted by id; inconclusive verdicts never raise.
template <Scalar S>
SuiteReport run_full_suite(const Tuple<S>& x, std::vector<Exponent> exponents,
                           const OptimizerConfig& cfg = {}) {
  std::sort(exponents.begin(), exponents.end(),
            [](const Exponent& a, const Exponent& b) { return a.value() < b.value(); });
  exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());

  SuiteReport report;
  report.descriptor =
      TupleDescriptor{x.n(), x.m(), x.space.field, x.space.ground_exponent, {}};

  detail::FactorCache<S> cache(x, cfg, "x");
  const double pn_inf = tuple_pnorm(x, Exponent::infinity());

  for (const Exponent& q : exponents) {
    records::Provenance prov;
    cache.note(prov, q);
    for (auto& rec :
         records::sandwich(cache.get(q).bound, tuple_pnorm(x, q), x.n(), q, prov)) {
      report.add(std::move(rec));
    }
  }

  for (std::size_t i = 0; i < exponents.size(); ++i) {
    for (std::size_t j = i; j < exponents.size(); ++j) {
      const Exponent& q = exponents[i];
      const Exponent& r = exponents[j];
      records::Provenance prov;
      cache.note(prov, q);
      cache.note(prov, r);
      for (auto& rec : records::q_monotonicity(cache.get(q).bound, cache.get(r).bound,
                                               x.n(), q, r, prov)) {
        report.add(std::move(rec));
      }
    }
  }

  {
    records::Provenance prov;
    cache.note(prov, Exponent(2.0));
    cache.note(prov, Exponent(1.0));
    for (auto& rec : records::euclid_l1_reverse(cache.get(Exponent(2.0)).bound,
                                                cache.get(Exponent(1.0)).bound, pn_inf,
                                                x.n(), prov)) {
      report.add(std::move(rec));
    }
  }

  std::optional<Tuple<S>> dx;
  std::optional<detail::FactorCache<S>> dcache;
  if (x.n() >= 2) {
    dx.emplace(forward_difference(x));
    dcache.emplace(*dx, cfg, "dx");
  }
  const Exponent alpha(2.0);
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i].is_inf()) continue;
    for (std::size_t j = i; j < exponents.size(); ++j) {
      if (exponents[j].is_inf()) continue;
      const Exponent& q = exponents[i];
      const Exponent& r = exponents[j];
      const Exponent qr(q.value() + r.value());
      records::Provenance prov;
      cache.note(prov, q);
      cache.note(prov, r);
      cache.note(prov, qr);
      report.add(records::power_product(cache.get(qr).bound, cache.get(q).bound,
                                        cache.get(r).bound, pn_inf, x.n(), q, r,
                                        prov));
      if (dx) {
        records::Provenance dprov = prov;
        dcache->note(dprov, alpha);
        dcache->note(dprov, Exponent(1.0));
        for (auto& rec : records::forward_diff_product(
                 cache.get(qr).bound, cache.get(q).bound, cache.get(r).bound,
                 dcache->get(alpha).bound, dcache->get(alpha.conjugate()).bound,
                 dcache->get(Exponent(1.0)).bound, pn_inf,
                 tuple_pnorm(*dx, Exponent::infinity()), x.n(), q, r, alpha, dprov)) {
          report.add(std::move(rec));
        }
      }
    }
  }

  std::sort(report.records.begin(), report.records.end(),
            [](const InequalityRecord& a, const InequalityRecord& b) {
              return a.id < b.id;
            });
  return report;
}

}  // namespace hyponorm
