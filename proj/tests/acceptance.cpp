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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the binary exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hyponorm/hyponorm.hpp"

using namespace hyponorm;

namespace {

int g_failures = 0;

void report(int number, const char* title, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] criterion %2d: %s (%s, %.1fs)\n", pass ? "PASS" : "FAIL", number,
              title, detail.c_str(), seconds);
  if (!pass) ++g_failures;
}

template <typename F>
void criterion(int number, const char* title, F body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(number, title, pass, detail, seconds);
}

double reltol(double scale, double eps) { return eps * std::max(1.0, scale); }

struct CliOutcome {
  int exit_code = -1;
  std::string out;
};

CliOutcome run_cli(const std::string& args) {
  const std::string cmd = std::string(HYPONORM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliOutcome res;
  if (!pipe) return res;
  char buf[8192];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

// --- criterion bodies -------------------------------------------------------

bool c1_closed_form_inf(std::string& detail) {
  long checked = 0;
  for (long i = 0; i < 500; ++i) {
    SplitMix64 rng(SplitMix64::derive(0xC1, i));
    const GenSpec spec = gen_random_spec(rng);
    const AnyTuple tuple = gen_tuple(spec);
    const bool ok = std::visit(
        [&](const auto& x) {
          const auto res = hypo_norm(x, Exponent::infinity());
          const double pn = tuple_pnorm(x, Exponent::infinity());
          return res.lower == pn && res.upper == pn;
        },
        tuple);
    if (!ok) {
      detail = "mismatch at tuple " + std::to_string(i);
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " tuples bit-exact";
  return true;
}

bool c2_spectral(std::string& detail) {
  long checked = 0, grid_checked = 0;
  for (long i = 0; i < 200; ++i) {
    SplitMix64 rng(SplitMix64::derive(0xC2, i));
    GenSpec spec = gen_random_spec(rng);
    spec.ground_exponent = Exponent(2.0);
    const AnyTuple tuple = gen_tuple(spec);
    std::string err;
    const bool ok = std::visit(
        [&](const auto& x) {
          using S = typename std::decay_t<decltype(x)>::scalar_type;
          const double sigma = gram_sigma_max(x);
          const auto res = hypo_norm(x, Exponent(2.0));
          if (std::abs(res.lower - sigma) > reltol(sigma, 1e-8)) {
            err = "spectral mismatch at tuple " + std::to_string(i);
            return false;
          }
          constexpr bool kComplex = std::is_same_v<S, Complex>;
          if ((kComplex && x.n() <= 2) || (!kComplex && x.n() <= 3)) {
            const double g = grid_oracle(x, Exponent(2.0), 720);
            if (g > sigma + reltol(sigma, 1e-9) || sigma - g > reltol(sigma, 1e-3)) {
              err = "grid gap at tuple " + std::to_string(i);
              return false;
            }
            ++grid_checked;
          }
          return true;
        },
        tuple);
    if (!ok) {
      detail = err;
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " spectral, " + std::to_string(grid_checked) +
           " grid-verified";
  return true;
}

bool c3_sign_enum_vs_ascent(std::string& detail) {
  double worst = 0.0;
  for (long i = 0; i < 200; ++i) {
    SplitMix64 rng(SplitMix64::derive(0xC3, i));
    GenSpec spec = gen_random_spec(rng, 8, 8);
    spec.field = Field::real;
    const auto x = gen_tuple_as<double>(spec);
    const auto exact = hypo_norm(x, Exponent(1.0));
    OptimizerConfig cfg;
    cfg.seed = SplitMix64::derive(0xC3A5, i);
    const auto ascent = hypo_norm_ascent(x, Exponent(1.0), cfg);
    if (ascent.lower > exact.lower + reltol(exact.lower, 1e-10)) {
      detail = "ascent exceeded the exact value at tuple " + std::to_string(i);
      return false;
    }
    const double gap = (exact.lower - ascent.lower) / std::max(1.0, exact.lower);
    worst = std::max(worst, gap);
    if (gap > 1e-6) {
      detail = "ascent fell short at tuple " + std::to_string(i) + " (rel gap " +
               std::to_string(gap) + ")";
      return false;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "worst relative gap %.2e", worst);
  detail = buf;
  return true;
}

struct SandwichMonoTally {
  long records = 0;
  long violated = 0;
  bool slack_ok = true;
};

void tally_tuple(const AnyTuple& tuple, const std::vector<Exponent>& exps,
                 const OptimizerConfig& cfg, SandwichMonoTally& sandwich,
                 SandwichMonoTally& mono) {
  std::visit(
      [&](const auto& x) {
        using S = typename std::decay_t<decltype(x)>::scalar_type;
        std::vector<HypoNormResult<S>> certs;
        certs.reserve(exps.size());
        for (const Exponent& q : exps) certs.push_back(certify(x, q, cfg));
        for (std::size_t a = 0; a < exps.size(); ++a) {
          const Bound hb{certs[a].lower, certs[a].upper};
          const auto recs =
              records::sandwich(hb, tuple_pnorm(x, exps[a]), x.n(), exps[a]);
          for (const auto& rec : recs) {
            ++sandwich.records;
            if (rec.verdict == Verdict::violated) ++sandwich.violated;
            if (hb.is_exact() &&
                rec.slack < -reltol(std::max(std::abs(rec.lhs), std::abs(rec.rhs)),
                                    1e-9)) {
              sandwich.slack_ok = false;
            }
          }
          for (std::size_t b = a; b < exps.size(); ++b) {
            const Bound hr{certs[b].lower, certs[b].upper};
            const auto mrecs =
                records::q_monotonicity(hb, hr, x.n(), exps[a], exps[b]);
            for (const auto& rec : mrecs) {
              ++mono.records;
              if (rec.verdict == Verdict::violated) ++mono.violated;
              if (hb.is_exact() && hr.is_exact() &&
                  rec.slack < -reltol(std::max(std::abs(rec.lhs), std::abs(rec.rhs)),
                                      1e-9)) {
                mono.slack_ok = false;
              }
            }
          }
        }
      },
      tuple);
}

SandwichMonoTally g_sandwich, g_mono;

bool c4_sandwich(std::string& detail) {
  const std::vector<Exponent> exps = {Exponent(1.0), Exponent(1.5), Exponent(2.0),
                                      Exponent(3.0), Exponent::infinity()};
  for (long i = 0; i < 1000; ++i) {
    SplitMix64 rng(SplitMix64::derive(0xC45, i));
    const GenSpec spec = gen_random_spec(rng);
    const AnyTuple tuple = gen_tuple(spec);
    OptimizerConfig cfg;
    cfg.seed = SplitMix64::derive(0xC45A, i);
    cfg.restarts = 6;
    cfg.max_iterations = 250;
    tally_tuple(tuple, exps, cfg, g_sandwich, g_mono);
  }
  detail = std::to_string(g_sandwich.records) + " records, " +
           std::to_string(g_sandwich.violated) + " violated";
  return g_sandwich.violated == 0 && g_sandwich.slack_ok;
}

bool c5_monotonicity(std::string& detail) {
  // Record tallies come from the same 1000-tuple corpus as criterion 4.
  bool equalities = true;

  GenSpec dup;
  dup.seed = 7;
  dup.n = 2;
  dup.m = 3;
  dup.distribution = Distribution::duplicates;
  const auto xd = gen_tuple_as<double>(dup);
  {
    const auto h1 = certify(xd, Exponent(1.0));
    const auto h2 = certify(xd, Exponent(2.0));
    const auto recs = records::q_monotonicity(
        Bound{h1.lower, h1.upper}, Bound{h2.lower, h2.upper}, 2, Exponent(1.0),
        Exponent(2.0));
    if (std::abs(recs[1].slack) > reltol(recs[1].rhs, 1e-10)) equalities = false;
    const auto hinf = certify(xd, Exponent::infinity());
    const auto recs2 = records::q_monotonicity(
        Bound{h1.lower, h1.upper}, Bound{hinf.lower, hinf.upper}, 2, Exponent(1.0),
        Exponent::infinity());
    if (std::abs(recs2[1].slack) > reltol(recs2[1].rhs, 1e-10)) equalities = false;
  }
  {
    const auto xo = orthonormal_tuple(3);
    const auto h2 = certify(xo, Exponent(2.0));
    const auto hinf = certify(xo, Exponent::infinity());
    const auto recs = records::q_monotonicity(
        Bound{h2.lower, h2.upper}, Bound{hinf.lower, hinf.upper}, 3, Exponent(2.0),
        Exponent::infinity());
    if (std::abs(recs[0].slack) > reltol(recs[0].rhs, 1e-10)) equalities = false;
  }

  detail = std::to_string(g_mono.records) + " records, " +
           std::to_string(g_mono.violated) + " violated, equality witnesses " +
           (equalities ? "tight" : "NOT tight");
  return g_mono.violated == 0 && g_mono.slack_ok && equalities;
}

bool c6_reverse_theorems(std::string& detail) {
  long verified = 0, violated = 0, inconclusive = 0;
  bool exact_ok = true;
  for (long i = 0; i < 150; ++i) {
    SplitMix64 rng(SplitMix64::derive(0xC6, i));
    GenSpec spec = gen_random_spec(rng, 12, 8);
    spec.field = Field::real;
    spec.ground_exponent = Exponent(2.0);
    if (i == 0) spec.n = 1;  // degenerate edges get explicit coverage
    if (i == 1) spec.n = 2;
    const auto x = gen_tuple_as<double>(spec);
    OptimizerConfig cfg;
    cfg.seed = SplitMix64::derive(0xC6A5, i);

    auto absorb = [&](const InequalityRecord& rec, bool expect_exact) {
      switch (rec.verdict) {
        case Verdict::verified: ++verified; break;
        case Verdict::inconclusive: ++inconclusive; break;
        case Verdict::violated: ++violated; break;
      }
      if (expect_exact && rec.verdict != Verdict::verified) exact_ok = false;
    };

    const auto recs31 = check_euclidean_l1_reverse(x, cfg);
    for (const auto& rec : recs31) absorb(rec, true);
    // Lower halves of the squared and linear gaps on exact instances.
    if (recs31[0].lhs < -reltol(std::abs(recs31[0].rhs), 1e-9)) exact_ok = false;
    if (recs31[2].lhs < -reltol(std::abs(recs31[2].rhs), 1e-9)) exact_ok = false;

    absorb(check_power_product(x, Exponent(1.0), Exponent(1.0), cfg), true);

    if (x.n() >= 2) {
      const auto recs33 =
          check_forward_diff_product(x, Exponent(1.0), Exponent(1.0), Exponent(2.0),
                                     cfg);
      for (const auto& rec : recs33) absorb(rec, true);
    } else {
      try {
        check_forward_diff_product(x, Exponent(1.0), Exponent(1.0), Exponent(2.0),
                                   cfg);
        exact_ok = false;  // n = 1 must be rejected
      } catch (const std::invalid_argument&) {
      }
    }

    if (i < 30) {  // direction-safe checks on interval-valued exponent pairs
      absorb(check_power_product(x, Exponent(1.5), Exponent(2.0), cfg), false);
      if (x.n() >= 2) {
        const auto recs =
            check_forward_diff_product(x, Exponent(1.5), Exponent(2.0), Exponent(2.0),
                                       cfg);
        for (const auto& rec : recs) absorb(rec, false);
      }
    }
  }
  detail = std::to_string(verified) + " verified, " + std::to_string(inconclusive) +
           " inconclusive, " + std::to_string(violated) + " violated";
  return violated == 0 && exact_ok;
}

bool c7_lemma_fuzz(std::string& detail) {
  const std::vector<std::string> families = {"reverse_cbs", "shisha_mond_product",
                                             "shisha_mond_sqrt", "chebyshev_sum",
                                             "biernacki_gruss", "gruss_fd"};
  const char* fd_variants[3] = {"gruss_fd_sup", "gruss_fd_holder", "gruss_fd_l1"};
  long total = 0, violations = 0;
  for (std::size_t f = 0; f < families.size(); ++f) {
    for (long i = 0; i < 10000; ++i) {
      SplitMix64 rng(SplitMix64::derive(0xC7 + f, i));
      const std::string tag =
          families[f] == "gruss_fd" ? fd_variants[i % 3] : families[f];
      const LemmaInstance inst = gen_lemma_instance(tag, rng);
      const LemmaReport rep = run_lemma_instance(inst);
      ++total;
      const double floor =
          -reltol(std::max(std::abs(rep.lhs), std::abs(rep.rhs)), 1e-10);
      if (!rep.holds || !rep.lower_holds || rep.slack < floor) ++violations;
    }
  }
  detail = std::to_string(total) + " instances, " + std::to_string(violations) +
           " violations";
  return violations == 0;
}

bool c8_sharpness(std::string& detail) {
  double worst = 0.0;
  for (const std::string id :
       {"reverse_cbs_sharp", "biernacki_n2", "gruss_fd_sup_n2", "gruss_fd_l1_n2"}) {
    const EqualityWitness w = gen_equality_witness(id);
    const LemmaReport rep = run_lemma_instance(std::get<LemmaWitness>(w).instance);
    worst = std::max(worst, std::abs(rep.slack));
    if (std::abs(rep.slack) > 1e-12) {
      detail = id + " slack " + std::to_string(rep.slack);
      return false;
    }
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "worst |slack| %.2e", worst);
  detail = buf;
  return true;
}

bool c9_determinism(std::string& detail) {
  const std::string cmd = "fuzz --suite --count 200 --seed 42 --machine";
  const CliOutcome a = run_cli(cmd);
  const CliOutcome b = run_cli(cmd);
  if (a.exit_code != 0 || b.exit_code != 0) {
    detail = "fuzz exited with " + std::to_string(a.exit_code) + "/" +
             std::to_string(b.exit_code);
    return false;
  }
  if (a.out != b.out) {
    detail = "outputs differ";
    return false;
  }
  detail = std::to_string(a.out.size()) + " bytes, byte-identical";
  return true;
}

bool c10_roundtrip(std::string& detail) {
  const auto dir = std::filesystem::temp_directory_path();
  for (long i = 0; i < 100; ++i) {
    SplitMix64 rng(SplitMix64::derive(0xC10, i));
    Corpus corpus;
    const int count = 1 + static_cast<int>(rng.next_below(4));
    for (int t = 0; t < count; ++t) {
      const GenSpec spec = gen_random_spec(rng);
      corpus.entries.push_back(CorpusEntry{spec, gen_tuple(spec)});
    }
    corpus.metadata["index"] = std::to_string(i);
    const auto path = dir / ("acceptance_rt_" + std::to_string(i) + kCorpusSuffix);
    save_corpus(path.string(), corpus);
    const Corpus loaded = load_corpus(path.string());
    std::filesystem::remove(path);
    if (loaded.entries.size() != corpus.entries.size() ||
        loaded.metadata != corpus.metadata) {
      detail = "structure mismatch at corpus " + std::to_string(i);
      return false;
    }
    for (std::size_t t = 0; t < corpus.entries.size(); ++t) {
      const bool same = std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            const auto* y = std::get_if<T>(&loaded.entries[t].tuple);
            return y != nullptr && y->entries == x.entries && y->space == x.space;
          },
          corpus.entries[t].tuple);
      if (!same || loaded.entries[t].spec.seed != corpus.entries[t].spec.seed) {
        detail = "tuple mismatch at corpus " + std::to_string(i);
        return false;
      }
    }
  }
  detail = "100 corpora, field-for-field";
  return true;
}

}  // namespace

int main() {
  criterion(1, "closed form at q = inf is bit-exact", c1_closed_form_inf);
  criterion(2, "spectral route matches the Gram sigma and the grid", c2_spectral);
  criterion(3, "ascent reaches the exact sign-enumeration value", c3_sign_enum_vs_ascent);
  criterion(4, "sandwich bounds never violated on the fuzz corpus", c4_sandwich);
  criterion(5, "exponent monotonicity chain holds with tight witnesses",
            c5_monotonicity);
  criterion(6, "reverse-inequality records hold on exact instances",
            c6_reverse_theorems);
  criterion(7, "scalar lemma fuzz is violation-free", c7_lemma_fuzz);
  criterion(8, "sharpness witnesses reach zero slack", c8_sharpness);
  criterion(9, "suite fuzzing is byte-identical across runs", c9_determinism);
  criterion(10, "corpus save/load round-trips", c10_roundtrip);

  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
