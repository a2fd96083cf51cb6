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
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyponorm/core.hpp"
#include "hyponorm/splitmix64.hpp"

namespace hyponorm {

// The hypo-q-norm of an n-tuple x is sup { ||sum_j lambda_j x_j|| } over
// coefficient vectors lambda in the unit p-ball, p conjugate to q.
// Equivalently it is the operator norm of lambda -> sum_j lambda_j x_j
// from l_p^n into the ground space. The sup of this convex, absolutely
// homogeneous objective over the ball is attained on the sphere, so all
// search routines below stay on the sphere.

enum class Method { closed_form_max, spectral, sign_enum, phase_grid, ascent, grid };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::closed_form_max: return "closed_form_max";
    case Method::spectral: return "spectral";
    case Method::sign_enum: return "sign_enum";
    case Method::phase_grid: return "phase_grid";
    case Method::ascent: return "ascent";
    case Method::grid: return "grid";
  }
  return "unknown";
}

struct OptimizerConfig {
  int restarts = 16;
  int max_iterations = 500;
  double step_shrink = 0.7;
  std::uint64_t seed = 0;
  int grid_resolution = 720;
  int enum_threshold = 12;  // max n for exact sign enumeration at q = 1

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 1");
    if (!(step_shrink > 0.0 && step_shrink < 1.0)) {
      throw std::invalid_argument("OptimizerConfig: step_shrink must be in (0,1)");
    }
    if (grid_resolution < 1) throw std::invalid_argument("OptimizerConfig: grid_resolution must be >= 1");
    if (enum_threshold < 1) throw std::invalid_argument("OptimizerConfig: enum_threshold must be >= 1");
  }
};

/// Certified interval [lower, upper] for a hypo-q-norm. `lower` is always a
/// value attained by the feasible coefficient vector `witness`; `upper`
/// comes from closed forms or norm relaxations, never from a search.
template <Scalar S>
struct HypoNormResult {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<S> witness;
  Method method = Method::closed_form_max;
  long iterations = 0;
  double tolerance = 0.0;

  double width() const { return upper - lower; }
};

/// sum_j lambda_j x_j in the ground space.
template <Scalar S>
std::vector<S> combine(const Tuple<S>& x, std::span<const S> lambda) {
  if (static_cast<int>(lambda.size()) != x.n()) {
    throw std::invalid_argument("combine: coefficient length " +
                                std::to_string(lambda.size()) + " != n = " +
                                std::to_string(x.n()));
  }
  std::vector<S> out(x.m(), S{});
  for (int j = 0; j < x.n(); ++j) {
    for (int k = 0; k < x.m(); ++k) out[k] += lambda[j] * x.entries[j][k];
  }
  return out;
}

template <Scalar S>
std::vector<S> combine(const Tuple<S>& x, const std::vector<S>& lambda) {
  return combine(x, std::span<const S>(lambda));
}

/// q-norm of the pairings (f(x_1), ..., f(x_n)) for a functional given by
/// coordinates f (bilinear pairing f(v) = sum_k f_k v_k).
template <Scalar S>
double dual_objective(std::span<const S> f, const Tuple<S>& x, const Exponent& q) {
  if (static_cast<int>(f.size()) != x.m()) {
    throw std::invalid_argument("dual_objective: functional length " +
                                std::to_string(f.size()) + " != dim = " +
                                std::to_string(x.m()));
  }
  std::vector<S> beta(x.n(), S{});
  for (int j = 0; j < x.n(); ++j) {
    for (int k = 0; k < x.m(); ++k) beta[j] += f[k] * x.entries[j][k];
  }
  return pnorm(std::span<const S>(beta), q);
}

template <Scalar S>
double dual_objective(const std::vector<S>& f, const Tuple<S>& x, const Exponent& q) {
  return dual_objective(std::span<const S>(f), x, q);
}

/// For finite q > 1: the coefficient vector alpha on the unit p-sphere
/// (p conjugate to q) with sum_j alpha_j beta_j = ||beta||_q, namely
/// alpha_j = conj(beta_j) |beta_j|^(q-2) / (sum_k |beta_k|^q)^(1/p).
template <Scalar S>
std::vector<S> holder_extremizer(std::span<const S> beta, const Exponent& q) {
  if (q.is_inf() || q.is_one()) {
    throw std::invalid_argument("holder_extremizer: q must be finite and > 1");
  }
  double mx = 0.0;
  for (const S& b : beta) mx = std::max(mx, std::abs(b));
  if (mx == 0.0) {
    throw std::invalid_argument("holder_extremizer: beta must be nonzero");
  }
  const double qv = q.value();
  double sum = 0.0;  // sum (|beta_j| / mx)^q
  for (const S& b : beta) sum += std::pow(std::abs(b) / mx, qv);
  // 1/p = 1 - 1/q; the scaling by mx collapses to a single 1/mx factor.
  const double denom = mx * std::pow(sum, 1.0 - 1.0 / qv);
  std::vector<S> alpha(beta.size(), S{});
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const double a = std::abs(beta[j]);
    if (a == 0.0) continue;
    alpha[j] = scalar_traits<S>::conj(beta[j]) * (std::pow(a / mx, qv - 2.0) / denom);
  }
  return alpha;
}

template <Scalar S>
std::vector<S> holder_extremizer(const std::vector<S>& beta, const Exponent& q) {
  return holder_extremizer(std::span<const S>(beta), q);
}

/// The q = 1 and q = inf extremizers. q = 1: the phase vector on the
/// inf-sphere pairing to ||beta||_1. q = inf: the single-support vector on
/// the 1-sphere pairing to ||beta||_inf, ties broken by lowest index.
template <Scalar S>
std::vector<S> extremizer_boundary(std::span<const S> beta, const Exponent& q) {
  if (!(q.is_one() || q.is_inf())) {
    throw std::invalid_argument("extremizer_boundary: q must be 1 or inf");
  }
  double mx = 0.0;
  std::size_t argmax = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const double a = std::abs(beta[j]);
    if (a > mx) {
      mx = a;
      argmax = j;
    }
  }
  if (mx == 0.0) {
    throw std::invalid_argument("extremizer_boundary: beta must be nonzero");
  }
  std::vector<S> alpha(beta.size(), S{});
  if (q.is_one()) {
    for (std::size_t j = 0; j < beta.size(); ++j) {
      const double a = std::abs(beta[j]);
      if (a > 0.0) alpha[j] = scalar_traits<S>::conj(beta[j]) * (1.0 / a);
    }
  } else {
    alpha[argmax] = scalar_traits<S>::conj(beta[argmax]) * (1.0 / mx);
  }
  return alpha;
}

template <Scalar S>
std::vector<S> extremizer_boundary(const std::vector<S>& beta, const Exponent& q) {
  return extremizer_boundary(std::span<const S>(beta), q);
}

namespace detail {

/// Extremizer dispatch over the full exponent range.
template <Scalar S>
std::vector<S> coefficient_extremizer(std::span<const S> beta, const Exponent& q) {
  if (q.is_one() || q.is_inf()) return extremizer_boundary(beta, q);
  return holder_extremizer(beta, q);
}

template <Scalar S>
double eval_objective(const Tuple<S>& x, const std::vector<S>& lambda) {
  const std::vector<S> u = combine(x, lambda);
  return pnorm(std::span<const S>(u), x.space.ground_exponent);
}

template <Scalar S>
std::vector<S> basis_coefficient(int n, int j) {
  std::vector<S> e(n, S{});
  e[j] = S{1.0};
  return e;
}

}  // namespace detail

template <Scalar S>
struct SpectralResult {
  double sigma = 0.0;
  std::vector<S> eigvec;
  long iterations = 0;
};

/// Largest singular value of the map lambda -> sum_j lambda_j x_j on
/// Euclidean ground, via power iteration on the n x n Gram matrix
/// G = X^H X. Also returns the top eigenvector (the maximizing lambda).
template <Scalar S>
SpectralResult<S> gram_spectral(const Tuple<S>& x) {
  if (!x.space.euclidean()) {
    throw std::invalid_argument("gram_spectral: requires Euclidean ground");
  }
  const int n = x.n();
  std::vector<std::vector<S>> gram(n, std::vector<S>(n, S{}));
  double gmax = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      S acc{};
      for (int t = 0; t < x.m(); ++t) {
        acc += scalar_traits<S>::conj(x.entries[j][t]) * x.entries[k][t];
      }
      gram[j][k] = acc;
      gmax = std::max(gmax, std::abs(acc));
    }
  }
  SpectralResult<S> res;
  res.eigvec = detail::basis_coefficient<S>(n, 0);
  if (gmax == 0.0) return res;

  double best_rho = -1.0;
  for (int start = 0; start < 2; ++start) {
    SplitMix64 rng(SplitMix64::derive(0x4752414D5350ULL, start));
    std::vector<S> v(n);
    for (int j = 0; j < n; ++j) {
      if constexpr (std::is_same_v<S, double>) {
        v[j] = rng.next_gaussian();
      } else {
        v[j] = Complex(rng.next_gaussian(), rng.next_gaussian());
      }
    }
    const double nv = pnorm(std::span<const S>(v), Exponent(2.0));
    if (nv == 0.0) v = detail::basis_coefficient<S>(n, 0);
    else for (S& c : v) c *= (1.0 / nv);

    std::vector<S> w(n);
    double rho = 0.0;
    for (int it = 0; it < 5000; ++it) {
      ++res.iterations;
      for (int j = 0; j < n; ++j) {
        S acc{};
        for (int k = 0; k < n; ++k) acc += gram[j][k] * v[k];
        w[j] = acc;
      }
      double rho_new = 0.0;
      for (int j = 0; j < n; ++j) {
        if constexpr (std::is_same_v<S, double>) rho_new += v[j] * w[j];
        else rho_new += (std::conj(v[j]) * w[j]).real();
      }
      double resid = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = std::abs(w[j] - v[j] * S{rho_new});
        resid += d * d;
      }
      rho = rho_new;
      if (std::sqrt(resid) <= 1.0e-12 * std::max(rho, gmax * 1.0e-3)) break;
      const double nw = pnorm(std::span<const S>(w), Exponent(2.0));
      if (nw == 0.0) break;
      for (int j = 0; j < n; ++j) v[j] = w[j] * (1.0 / nw);
    }
    if (rho > best_rho) {
      best_rho = rho;
      res.eigvec = v;
    }
  }
  res.sigma = std::sqrt(std::max(0.0, best_rho));
  return res;
}

template <Scalar S>
double gram_sigma_max(const Tuple<S>& x) {
  return gram_spectral(x).sigma;
}

struct SignEnumResult {
  double value = 0.0;
  std::vector<double> signs;
  long patterns = 0;
};

/// Exact q = 1 value over the real field: max over sign patterns of
/// ||sum_j eps_j x_j||, with eps_1 fixed to +1 by symmetry.
inline SignEnumResult sign_enumeration(const Tuple<double>& x) {
  const int n = x.n();
  SignEnumResult res;
  res.signs.assign(n, 1.0);
  std::vector<double> acc(x.m());
  std::vector<double> signs(n, 1.0);
  const std::uint64_t patterns = 1ULL << (n - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    signs[0] = 1.0;
    for (int j = 1; j < n; ++j) signs[j] = (mask >> (j - 1)) & 1 ? -1.0 : 1.0;
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < x.m(); ++k) acc[k] += signs[j] * x.entries[j][k];
    }
    const double v = pnorm(std::span<const double>(acc), x.space.ground_exponent);
    ++res.patterns;
    if (v > res.value) {
      res.value = v;
      res.signs = signs;
    }
  }
  return res;
}

template <Scalar S>
struct GridResult {
  double value = 0.0;
  std::vector<S> lambda;
  long points = 0;
};

/// Deterministic search over a grid on the p-sphere (p conjugate to q).
/// Always a lower bound of the true value; converges as resolution grows.
/// Limited to n <= 3 over the reals and n <= 2 over the complexes.
template <Scalar S>
GridResult<S> grid_search(const Tuple<S>& x, const Exponent& q, int resolution) {
  constexpr bool kComplex = std::is_same_v<S, Complex>;
  const int n = x.n();
  if ((kComplex && n > 2) || (!kComplex && n > 3)) {
    throw std::invalid_argument("grid_search: tuple too long for grid (n = " +
                                std::to_string(n) + ")");
  }
  if (resolution < 1) throw std::invalid_argument("grid_search: resolution must be >= 1");
  const Exponent p = q.conjugate();
  constexpr double kTau = 6.283185307179586476925286766559;

  GridResult<S> res;
  res.lambda = detail::basis_coefficient<S>(n, 0);
  auto consider = [&](std::vector<S> lam) {
    const double np = pnorm(std::span<const S>(lam), p);
    if (np == 0.0) return;
    for (S& c : lam) c *= (1.0 / np);
    const double v = detail::eval_objective(x, lam);
    ++res.points;
    if (v > res.value) {
      res.value = v;
      res.lambda = std::move(lam);
    }
  };

  if constexpr (!kComplex) {
    if (n == 1) {
      consider({1.0});
      consider({-1.0});
    } else if (n == 2) {
      for (int i = 0; i < resolution; ++i) {
        const double t = kTau * i / resolution;
        consider({std::cos(t), std::sin(t)});
      }
    } else {
      const int jmax = std::max(1, resolution / 2);
      for (int i = 0; i < resolution; ++i) {
        const double theta = kTau * i / resolution;
        for (int j = 0; j <= jmax; ++j) {
          const double phi = (kTau / 2.0) * j / jmax;
          consider({std::sin(phi) * std::cos(theta),
                    std::sin(phi) * std::sin(theta), std::cos(phi)});
        }
      }
    }
  } else {
    if (n == 1) {
      consider({S{1.0}});
    } else {
      // Global phase is irrelevant, so the first coefficient stays real
      // nonnegative while the second sweeps modulus and phase.
      const int imax = std::max(1, resolution / 4);
      for (int i = 0; i <= imax; ++i) {
        const double t = (kTau / 4.0) * i / imax;
        for (int j = 0; j < resolution; ++j) {
          const double theta = kTau * j / resolution;
          consider({S{std::cos(t)},
                    S{std::sin(t) * std::cos(theta), std::sin(t) * std::sin(theta)}});
        }
      }
    }
  }
  return res;
}

template <Scalar S>
double grid_oracle(const Tuple<S>& x, const Exponent& q, int resolution) {
  return grid_search(x, q, resolution).value;
}

namespace detail {

/// Gradient (subgradient at kinks) of the e-norm at u, packed as one vector
/// of the scalar type: for complexes, entry k combines d/dRe and d/dIm.
/// At e = inf the lowest max-modulus index carries the subgradient.
template <Scalar S>
std::vector<S> norm_gradient(std::span<const S> u, const Exponent& e) {
  std::vector<S> w(u.size(), S{});
  if (e.is_inf()) {
    double mx = 0.0;
    std::size_t argmax = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double a = std::abs(u[k]);
      if (a > mx) {
        mx = a;
        argmax = k;
      }
    }
    if (mx > 0.0) w[argmax] = u[argmax] * (1.0 / mx);
    return w;
  }
  if (e.is_one()) {
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double a = std::abs(u[k]);
      if (a > 0.0) w[k] = u[k] * (1.0 / a);
    }
    return w;
  }
  const double nv = pnorm(u, e);
  if (nv == 0.0) return w;
  const double ev = e.value();
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double a = std::abs(u[k]);
    if (a > 0.0) w[k] = u[k] * (std::pow(a / nv, ev - 1.0) / a);
  }
  return w;
}

template <Scalar S>
struct AscentOutcome {
  double value = 0.0;
  std::vector<S> point;
};

template <Scalar S>
struct MultiAscentOutcome {
  std::vector<AscentOutcome<S>> locals;  // one endpoint per restart
  long iterations = 0;
};

/// Multi-start normalized subgradient ascent of t -> ||M t||_out over the
/// sphere ||t||_sph = 1. `rows` holds M row-wise. Restart r draws its start
/// from substream derive(seed, r), so outcomes do not depend on scheduling.
/// Every restart endpoint is reported; the caller refines each of them.
template <Scalar S>
MultiAscentOutcome<S> ascend_linear(const std::vector<std::vector<S>>& rows,
                                    const Exponent& out_e, const Exponent& sphere_e,
                                    const OptimizerConfig& cfg, std::uint64_t salt) {
  const std::size_t out_dim = rows.size();
  const std::size_t var_dim = out_dim == 0 ? 0 : rows[0].size();
  MultiAscentOutcome<S> best;
  if (var_dim == 0) return best;

  std::vector<S> out(out_dim);
  auto apply = [&](const std::vector<S>& t) {
    for (std::size_t k = 0; k < out_dim; ++k) {
      S acc{};
      for (std::size_t j = 0; j < var_dim; ++j) acc += rows[k][j] * t[j];
      out[k] = acc;
    }
    return pnorm(std::span<const S>(out), out_e);
  };
  auto renormalize = [&](std::vector<S>& t) {
    const double np = pnorm(std::span<const S>(t), sphere_e);
    if (np == 0.0) return false;
    for (S& c : t) c *= (1.0 / np);
    return true;
  };

  for (int r = 0; r < cfg.restarts; ++r) {
    SplitMix64 rng(SplitMix64::derive(cfg.seed ^ salt, static_cast<std::uint64_t>(r)));
    std::vector<S> t(var_dim);
    for (std::size_t j = 0; j < var_dim; ++j) {
      if constexpr (std::is_same_v<S, double>) {
        t[j] = rng.next_gaussian();
      } else {
        t[j] = Complex(rng.next_gaussian(), rng.next_gaussian());
      }
    }
    if (!renormalize(t)) t[0] = S{1.0};

    double local = apply(t);
    std::vector<S> local_t = t;
    double step = 1.0;
    double window_ref = local;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
      ++best.iterations;
      apply(t);  // refresh `out` for the gradient at the current point
      const std::vector<S> w = norm_gradient(std::span<const S>(out), out_e);
      std::vector<S> grad(var_dim, S{});
      double gn2 = 0.0;
      for (std::size_t j = 0; j < var_dim; ++j) {
        S acc{};
        for (std::size_t k = 0; k < out_dim; ++k) {
          acc += scalar_traits<S>::conj(rows[k][j]) * w[k];
        }
        grad[j] = acc;
        gn2 += std::norm(static_cast<Complex>(acc));
      }
      const double gn = std::sqrt(gn2);
      if (gn == 0.0) break;

      std::vector<S> cand = t;
      for (std::size_t j = 0; j < var_dim; ++j) cand[j] += grad[j] * (step / gn);
      if (!renormalize(cand)) {
        step *= cfg.step_shrink;
        continue;
      }
      const double cv = apply(cand);
      if (cv > local) {
        local = cv;
        local_t = cand;
        t = std::move(cand);
      } else {
        step *= cfg.step_shrink;
        if (step < 1.0e-14) break;
      }
      if (it % 50 == 0) {
        if (local - window_ref <= 1.0e-6 * std::max(1.0, std::abs(local))) break;
        window_ref = local;
      }
    }
    best.locals.push_back(AscentOutcome<S>{local, std::move(local_t)});
  }
  return best;
}

inline constexpr std::uint64_t kPrimalSalt = 0xA5A5A5A5A5A5A5A5ULL;
inline constexpr std::uint64_t kDualSalt = 0x5A5A5A5A5A5A5A5AULL;
inline constexpr std::uint64_t kVertexSalt = 0x3C3C3C3C3C3C3C3CULL;

/// Steepest-ascent single-flip search over the sign vertices of the
/// inf-sphere, where the real q = 1 maximizer lives. Flips the sign whose
/// flip helps most, lowest index on ties, until no flip improves.
inline double vertex_hill_climb(const Tuple<double>& x, std::vector<double>& signs,
                                long& evals) {
  double best = eval_objective(x, signs);
  ++evals;
  bool improved = true;
  while (improved) {
    improved = false;
    int best_j = -1;
    double best_val = best;
    for (int j = 0; j < x.n(); ++j) {
      signs[j] = -signs[j];
      const double val = eval_objective(x, signs);
      signs[j] = -signs[j];
      ++evals;
      if (val > best_val) {
        best_val = val;
        best_j = j;
      }
    }
    if (best_j >= 0) {
      signs[best_j] = -signs[best_j];
      best = best_val;
      improved = true;
    }
  }
  return best;
}

template <Scalar S>
std::vector<std::vector<S>> primal_rows(const Tuple<S>& x) {
  std::vector<std::vector<S>> rows(x.m(), std::vector<S>(x.n()));
  for (int k = 0; k < x.m(); ++k) {
    for (int j = 0; j < x.n(); ++j) rows[k][j] = x.entries[j][k];
  }
  return rows;
}

/// Converts a dual functional f into a feasible primal coefficient vector
/// whose objective value is at least the dual objective of f.
template <Scalar S>
bool dual_to_primal(const Tuple<S>& x, const std::vector<S>& f, const Exponent& q,
                    std::vector<S>& lambda_out) {
  std::vector<S> beta(x.n(), S{});
  double mx = 0.0;
  for (int j = 0; j < x.n(); ++j) {
    for (int k = 0; k < x.m(); ++k) beta[j] += f[k] * x.entries[j][k];
    mx = std::max(mx, std::abs(beta[j]));
  }
  if (mx == 0.0) return false;
  lambda_out = coefficient_extremizer(std::span<const S>(beta), q);
  return true;
}

/// Monotone polish: alternate between the ground-norm dual extremizer at the
/// current combination and the coefficient extremizer of the induced
/// pairings. Each accepted step cannot decrease the objective.
template <Scalar S>
long polish(const Tuple<S>& x, const Exponent& q, std::vector<S>& lambda, double& value) {
  const Exponent s = x.space.ground_exponent;
  long its = 0;
  for (int round = 0; round < 200; ++round) {
    const std::vector<S> u = combine(x, lambda);
    double umax = 0.0;
    for (const S& c : u) umax = std::max(umax, std::abs(c));
    if (umax == 0.0) break;
    const std::vector<S> f = coefficient_extremizer(std::span<const S>(u), s);
    std::vector<S> cand;
    if (!dual_to_primal(x, f, q, cand)) break;
    const double cv = eval_objective(x, cand);
    ++its;
    if (cv > value) {
      const bool negligible = cv - value <= 1.0e-15 * std::max(1.0, value);
      value = cv;
      lambda = std::move(cand);
      if (negligible) break;
    } else {
      break;
    }
  }
  return its;
}

/// Sound upper bounds for a finite exponent q: the q-norm relaxation, the
/// scaled max-norm, the Euclidean spectral envelope when available, and the
/// scaled lower bound once the lower bound dominates the max norm.
template <Scalar S>
double upper_envelope(const Tuple<S>& x, const Exponent& q, double lower) {
  const double nq = static_cast<double>(x.n());
  const double inv_q = q.reciprocal();
  const double pn_q = tuple_pnorm(x, q);
  const double pn_inf = tuple_pnorm(x, Exponent::infinity());
  double up = std::min(pn_q, std::pow(nq, inv_q) * pn_inf);
  if (x.space.euclidean() && !q.is_inf()) {
    const double sigma = gram_spectral(x).sigma;
    const double env =
        q.value() >= 2.0 ? sigma : std::pow(nq, (2.0 - q.value()) / (2.0 * q.value())) * sigma;
    up = std::min(up, env);
  }
  if (lower >= pn_inf * (1.0 - 1.0e-12)) {
    up = std::min(up, std::pow(nq, inv_q) * lower);
  }
  return up;
}

template <Scalar S>
HypoNormResult<S> ascent_hypo(const Tuple<S>& x, const Exponent& q,
                              const OptimizerConfig& cfg) {
  const Exponent s = x.space.ground_exponent;
  const Exponent p = q.conjugate();

  HypoNormResult<S> res;
  res.method = Method::ascent;
  res.tolerance = 1.0e-6;
  res.witness = basis_coefficient<S>(x.n(), 0);
  res.lower = eval_objective(x, res.witness);

  // Every candidate gets the alternating polish before entering the merge;
  // distinct restarts land in distinct basins, so polishing only the raw
  // best would throw coverage away.
  auto consider = [&](std::vector<S> lambda) {
    double value = eval_objective(x, lambda);
    res.iterations += polish(x, q, lambda, value);
    if (value > res.lower) {
      res.lower = value;
      res.witness = std::move(lambda);
    }
  };

  // Basis starts guarantee lower >= max_j ||x_j||, which in turn makes the
  // scaled-lower upper bound in upper_envelope sound.
  for (int j = 0; j < x.n(); ++j) consider(basis_coefficient<S>(x.n(), j));

  const auto primal = ascend_linear(primal_rows(x), s, p, cfg, kPrimalSalt);
  res.iterations += primal.iterations;
  for (const auto& local : primal.locals) consider(local.point);

  const auto dual = ascend_linear(x.entries, q, s.conjugate(), cfg, kDualSalt);
  res.iterations += dual.iterations;
  std::vector<S> from_dual;
  for (const auto& local : dual.locals) {
    if (local.value > 0.0 && dual_to_primal(x, local.point, q, from_dual)) {
      consider(from_dual);
    }
  }

  // Coordinate functionals cover the attractors that polyhedral grounds
  // (s = 1, inf) produce.
  for (int k = 0; k < x.m(); ++k) {
    if (dual_to_primal(x, basis_coefficient<S>(x.m(), k), q, from_dual)) {
      consider(from_dual);
    }
  }

  if constexpr (std::is_same_v<S, double>) {
    // At q = 1 the exact maximizer is a sign vertex; run the flip search
    // from the rounded incumbent and from seeded random vertices.
    if (q.is_one()) {
      std::vector<double> signs(x.n());
      for (int j = 0; j < x.n(); ++j) signs[j] = res.witness[j] >= 0.0 ? 1.0 : -1.0;
      double val = vertex_hill_climb(x, signs, res.iterations);
      if (val > res.lower) {
        res.lower = val;
        res.witness = signs;
      }
      for (int r = 0; r < cfg.restarts; ++r) {
        SplitMix64 rng(SplitMix64::derive(cfg.seed ^ kVertexSalt,
                                          static_cast<std::uint64_t>(r)));
        for (int j = 0; j < x.n(); ++j) {
          signs[j] = rng.next_below(2) == 0 ? 1.0 : -1.0;
        }
        val = vertex_hill_climb(x, signs, res.iterations);
        if (val > res.lower) {
          res.lower = val;
          res.witness = signs;
        }
      }
    }
  }

  res.upper = std::max(res.lower, upper_envelope(x, q, res.lower));
  return res;
}

}  // namespace detail

/// Hypo-q-norm with a certified interval. Dispatch:
///   q = inf                          -> exact max of the ground norms
///   q = 2 on Euclidean ground        -> spectral (largest singular value)
///   q = 1, real, n <= enum_threshold -> exact sign enumeration
///   otherwise                        -> multi-start ascent, relaxation upper
template <Scalar S>
HypoNormResult<S> hypo_norm(const Tuple<S>& x, const Exponent& q,
                            const OptimizerConfig& cfg = {}) {
  cfg.validate();
  HypoNormResult<S> res;

  if (q.is_inf()) {
    const double value = tuple_pnorm(x, q);
    const std::vector<double> norms = ground_norms(x);
    int arg = 0;
    for (int j = 0; j < x.n(); ++j) {
      if (norms[j] == value) {
        arg = j;
        break;
      }
    }
    res.lower = res.upper = value;
    res.witness = detail::basis_coefficient<S>(x.n(), arg);
    res.method = Method::closed_form_max;
    res.tolerance = 1.0e-10;
    return res;
  }

  if (tuple_pnorm(x, Exponent::infinity()) == 0.0) {
    res.witness = detail::basis_coefficient<S>(x.n(), 0);
    res.method = Method::closed_form_max;
    res.tolerance = 1.0e-10;
    return res;
  }

  if (q.is_two() && x.space.euclidean()) {
    const SpectralResult<S> sp = gram_spectral(x);
    res.lower = res.upper = sp.sigma;
    res.witness = sp.eigvec;
    res.method = Method::spectral;
    res.iterations = sp.iterations;
    res.tolerance = 1.0e-10;
    return res;
  }

  if constexpr (std::is_same_v<S, double>) {
    if (q.is_one() && x.n() <= cfg.enum_threshold) {
      const SignEnumResult se = sign_enumeration(x);
      res.lower = res.upper = se.value;
      res.witness = se.signs;
      res.method = Method::sign_enum;
      res.iterations = se.patterns;
      res.tolerance = 1.0e-10;
      return res;
    }
  }

  return detail::ascent_hypo(x, q, cfg);
}

/// Like hypo_norm but always attaches the tightest available relaxation
/// upper bound, so the interval width is meaningful for every method.
template <Scalar S>
HypoNormResult<S> certify(const Tuple<S>& x, const Exponent& q,
                          const OptimizerConfig& cfg = {}) {
  HypoNormResult<S> res = hypo_norm(x, q, cfg);
  if (!q.is_inf()) {
    const double env = detail::upper_envelope(x, q, res.lower);
    res.upper = std::max(res.lower, std::min(res.upper, env));
  }
  return res;
}

/// Forces the multi-start ascent path even where a closed form exists.
template <Scalar S>
HypoNormResult<S> hypo_norm_ascent(const Tuple<S>& x, const Exponent& q,
                                   const OptimizerConfig& cfg = {}) {
  cfg.validate();
  if (tuple_pnorm(x, Exponent::infinity()) == 0.0) {
    HypoNormResult<S> res;
    res.witness = detail::basis_coefficient<S>(x.n(), 0);
    res.method = Method::ascent;
    res.tolerance = 1.0e-6;
    return res;
  }
  return detail::ascent_hypo(x, q, cfg);
}

/// Grid lower bound packaged as a result, with relaxation upper bounds.
template <Scalar S>
HypoNormResult<S> hypo_norm_grid(const Tuple<S>& x, const Exponent& q,
                                 const OptimizerConfig& cfg = {}) {
  cfg.validate();
  const GridResult<S> g = grid_search(x, q, cfg.grid_resolution);
  HypoNormResult<S> res;
  res.lower = g.value;
  res.witness = g.lambda;
  res.method = std::is_same_v<S, Complex> ? Method::phase_grid : Method::grid;
  res.iterations = g.points;
  res.upper = q.is_inf() ? tuple_pnorm(x, q)
                         : std::max(res.lower, detail::upper_envelope(x, q, res.lower));
  return res;
}

/// Best lower bound obtainable through the dual route alone: ascend the
/// dual objective over the dual ball of the ground norm, then convert the
/// functional into a feasible coefficient vector. Diagnostic surface.
template <Scalar S>
double dual_route_value(const Tuple<S>& x, const Exponent& q,
                        const OptimizerConfig& cfg = {}) {
  cfg.validate();
  const auto dual = detail::ascend_linear(x.entries, q, x.space.ground_exponent.conjugate(),
                                          cfg, detail::kDualSalt);
  double best = 0.0;
  std::vector<S> lambda;
  for (const auto& local : dual.locals) {
    if (local.value <= 0.0 || !detail::dual_to_primal(x, local.point, q, lambda)) {
      continue;
    }
    double value = detail::eval_objective(x, lambda);
    detail::polish(x, q, lambda, value);
    best = std::max(best, value);
  }
  return best;
}

}  // namespace hyponorm
