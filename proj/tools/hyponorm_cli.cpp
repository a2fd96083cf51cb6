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

#include <cinttypes>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyponorm/hyponorm.hpp"

namespace {

using nlohmann::json;
using namespace hyponorm;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFile = 3;
constexpr int kExitMethod = 4;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(sep, start);
    if (end == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const std::string& tok : split(text, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty number in list '" + text + "'");
    out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<Exponent> parse_exponents(const std::string& text) {
  std::vector<Exponent> out;
  for (const std::string& tok : split(text, ',')) out.push_back(Exponent::parse(tok));
  return out;
}

template <Scalar S>
json witness_json(const std::vector<S>& w) {
  json out = json::array();
  for (const S& c : w) {
    if constexpr (std::is_same_v<S, double>) {
      out.push_back(c);
    } else {
      out.push_back({c.real(), c.imag()});
    }
  }
  return out;
}

template <Scalar S>
std::string witness_human(const std::vector<S>& w) {
  std::string out = "[";
  char buf[96];
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j) out += ", ";
    if constexpr (std::is_same_v<S, double>) {
      std::snprintf(buf, sizeof(buf), "%.12g", w[j]);
    } else {
      std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", w[j].real(), w[j].imag());
    }
    out += buf;
  }
  return out + "]";
}

json record_json(const InequalityRecord& rec, std::size_t tuple_index) {
  json prov = json::object();
  for (const auto& [k, v] : rec.provenance) prov[k] = v;
  return {{"type", "record"},  {"tuple", tuple_index}, {"id", rec.id},
          {"relation", rec.relation}, {"lhs", rec.lhs}, {"rhs", rec.rhs},
          {"slack", rec.slack}, {"verdict", to_string(rec.verdict)},
          {"provenance", prov}};
}

json lemma_json(const LemmaReport& rep) {
  return {{"type", "lemma"},   {"id", rep.lemma_id},        {"lhs", rep.lhs},
          {"rhs", rep.rhs},    {"slack", rep.slack},        {"holds", rep.holds},
          {"lower_holds", rep.lower_holds}};
}

void print_lemma(const LemmaReport& rep, bool machine) {
  if (machine) {
    std::printf("%s\n", lemma_json(rep).dump().c_str());
  } else {
    std::printf("lemma %s\n  lhs   = %.17g\n  rhs   = %.17g\n  slack = %.17g\n"
                "  holds = %s%s\n",
                rep.lemma_id.c_str(), rep.lhs, rep.rhs, rep.slack,
                rep.holds ? "yes" : "no",
                rep.lower_holds ? "" : " (lower inequality fails)");
  }
}

struct ComputeOptions {
  std::string input;
  std::size_t index = 0;
  std::string q = "2";
  std::string method = "auto";
  std::uint64_t seed = 0;
  int restarts = 16;
  bool machine = false;
};

int run_compute(const ComputeOptions& opt) {
  Corpus corpus;
  try {
    corpus = load_corpus(opt.input);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFile;
  }
  if (opt.index >= corpus.entries.size()) {
    std::fprintf(stderr, "error: index %zu out of range (corpus holds %zu tuples)\n",
                 opt.index, corpus.entries.size());
    return kExitFile;
  }
  const Exponent q = Exponent::parse(opt.q);
  OptimizerConfig cfg;
  cfg.seed = opt.seed;
  cfg.restarts = opt.restarts;

  return std::visit(
      [&](const auto& x) -> int {
        using S = typename std::decay_t<decltype(x)>::scalar_type;
        HypoNormResult<S> res;
        try {
          if (opt.method == "auto") {
            res = certify(x, q, cfg);
          } else if (opt.method == "ascent") {
            res = hypo_norm_ascent(x, q, cfg);
          } else if (opt.method == "grid") {
            res = hypo_norm_grid(x, q, cfg);
          } else if (opt.method == "enum") {
            if constexpr (std::is_same_v<S, double>) {
              if (!q.is_one() || x.n() > cfg.enum_threshold) {
                std::fprintf(stderr, "error: enum needs q=1 and n <= %d\n",
                             cfg.enum_threshold);
                return kExitMethod;
              }
              res = hypo_norm(x, q, cfg);
            } else {
              std::fprintf(stderr, "error: enum needs a real tuple\n");
              return kExitMethod;
            }
          } else if (opt.method == "spectral") {
            if (!q.is_two() || !x.space.euclidean()) {
              std::fprintf(stderr, "error: spectral needs q=2 and Euclidean ground\n");
              return kExitMethod;
            }
            res = hypo_norm(x, q, cfg);
          } else {
            std::fprintf(stderr, "error: unknown method '%s'\n", opt.method.c_str());
            return kExitUsage;
          }
        } catch (const std::invalid_argument& e) {
          std::fprintf(stderr, "error: %s\n", e.what());
          return kExitMethod;
        }
        if (opt.machine) {
          const json j = {{"type", "result"},
                          {"q", to_string(q)},
                          {"method", to_string(res.method)},
                          {"lower", res.lower},
                          {"upper", res.upper},
                          {"width", res.width()},
                          {"iterations", res.iterations},
                          {"tolerance", res.tolerance},
                          {"witness", witness_json(res.witness)}};
          std::printf("%s\n", j.dump().c_str());
        } else {
          std::printf("q          = %s\nmethod     = %s\nlower      = %.17g\n"
                      "upper      = %.17g\nwidth      = %.17g\niterations = %ld\n"
                      "witness    = %s\n",
                      to_string(q).c_str(), to_string(res.method), res.lower,
                      res.upper, res.width(), res.iterations,
                      witness_human(res.witness).c_str());
        }
        return kExitOk;
      },
      corpus.entries[opt.index].tuple);
}

struct SuiteOptions {
  std::string input;
  std::string exponents = "1,3/2,2,3,inf";
  std::uint64_t seed = 0;
  int restarts = 16;
  bool machine = false;
};

int run_suite(const SuiteOptions& opt) {
  Corpus corpus;
  try {
    corpus = load_corpus(opt.input);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFile;
  }
  const std::vector<Exponent> exps = parse_exponents(opt.exponents);
  OptimizerConfig cfg;
  cfg.seed = opt.seed;
  cfg.restarts = opt.restarts;

  int verified = 0, inconclusive = 0, violated = 0;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    const SuiteReport report = std::visit(
        [&](const auto& x) { return run_full_suite(x, exps, cfg); },
        corpus.entries[i].tuple);
    verified += report.verified;
    inconclusive += report.inconclusive;
    violated += report.violated;
    if (opt.machine) {
      for (const InequalityRecord& rec : report.records) {
        std::printf("%s\n", record_json(rec, i).dump().c_str());
      }
    } else {
      std::printf("tuple %zu (n=%d, m=%d, %s, s=%s): %d verified, %d inconclusive,"
                  " %d violated\n",
                  i, report.descriptor.n, report.descriptor.m,
                  to_string(report.descriptor.field),
                  to_string(report.descriptor.ground).c_str(), report.verified,
                  report.inconclusive, report.violated);
      for (const InequalityRecord& rec : report.records) {
        if (rec.verdict == Verdict::violated) {
          std::printf("  VIOLATED %s: %s (lhs=%.17g rhs=%.17g)\n", rec.id.c_str(),
                      rec.relation.c_str(), rec.lhs, rec.rhs);
        }
      }
    }
  }
  const json summary = {{"type", "summary"},
                        {"tuples", corpus.entries.size()},
                        {"verified", verified},
                        {"inconclusive", inconclusive},
                        {"violated", violated}};
  if (opt.machine) {
    std::printf("%s\n", summary.dump().c_str());
  } else {
    std::printf("total: %d verified, %d inconclusive, %d violated\n", verified,
                inconclusive, violated);
  }
  return violated > 0 ? kExitViolation : kExitOk;
}

struct LemmaOptions {
  std::string id;
  std::string a;
  std::string b;
  std::string w;
  std::string box;
  double gamma = 0.0;
  double big_gamma = 0.0;
  double alpha = 2.0;
  std::string variant = "sup";
  bool machine = false;
};

int run_lemma(const LemmaOptions& opt) {
  LemmaInstance inst;
  if (opt.id == "reverse_cbs") inst.lemma = "reverse_cbs";
  else if (opt.id == "shisha_mond_product") inst.lemma = "shisha_mond_product";
  else if (opt.id == "shisha_mond_sqrt") inst.lemma = "shisha_mond_sqrt";
  else if (opt.id == "chebyshev" || opt.id == "chebyshev_sum") inst.lemma = "chebyshev_sum";
  else if (opt.id == "biernacki" || opt.id == "biernacki_gruss") inst.lemma = "biernacki_gruss";
  else if (opt.id == "gruss_fd" || opt.id.rfind("gruss_fd_", 0) == 0) {
    inst.lemma = opt.id == "gruss_fd" ? "gruss_fd_" + opt.variant : opt.id;
  } else {
    std::fprintf(stderr, "error: unknown lemma id '%s'\n", opt.id.c_str());
    return kExitUsage;
  }
  try {
    inst.a = parse_doubles(opt.a);
    inst.b = parse_doubles(opt.b);
    if (!opt.w.empty()) {
      inst.w = parse_doubles(opt.w);
    } else {
      inst.w.assign(inst.a.size(), 1.0);
    }
    if (!opt.box.empty()) {
      const std::vector<double> vals = parse_doubles(opt.box);
      if (vals.size() != 2 && vals.size() != 4) {
        std::fprintf(stderr, "error: --box needs 2 or 4 numbers\n");
        return kExitUsage;
      }
      inst.box.a_min = vals[0];
      inst.box.a_max = vals[1];
      if (vals.size() == 4) {
        inst.box.b_min = vals[2];
        inst.box.b_max = vals[3];
      }
    }
    inst.gamma = opt.gamma;
    inst.big_gamma = opt.big_gamma;
    inst.alpha = opt.alpha;
    const LemmaReport rep = run_lemma_instance(inst);
    print_lemma(rep, opt.machine);
    return rep.holds && rep.lower_holds ? kExitOk : kExitViolation;
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}

struct FuzzOptions {
  std::string lemma;
  bool suite = false;
  long count = 1000;
  std::uint64_t seed = 0;
  int restarts = 6;
  int max_iterations = 250;
  std::string exponents = "1,3/2,2,3,inf";
  bool machine = false;
};

int run_fuzz(const FuzzOptions& opt) {
  long violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();

  if (!opt.lemma.empty()) {
    for (long i = 0; i < opt.count; ++i) {
      SplitMix64 rng(SplitMix64::derive(opt.seed, static_cast<std::uint64_t>(i)));
      const LemmaInstance inst = gen_lemma_instance(opt.lemma, rng);
      const LemmaReport rep = run_lemma_instance(inst);
      worst_slack = std::min(worst_slack, rep.slack);
      if (!rep.holds || !rep.lower_holds) {
        ++violations;
        json dump = {{"lemma", inst.lemma}, {"a", inst.a},     {"b", inst.b},
                     {"w", inst.w},         {"gamma", inst.gamma},
                     {"Gamma", inst.big_gamma}, {"alpha", inst.alpha},
                     {"box", {inst.box.a_min, inst.box.a_max, inst.box.b_min,
                              inst.box.b_max}}};
        const std::string path =
            "fuzz_" + inst.lemma + "_violation_" + std::to_string(i) + ".json";
        std::ofstream out(path);
        out << dump.dump(2) << '\n';
        std::fprintf(stderr, "violation at instance %ld dumped to %s\n", i,
                     path.c_str());
      }
    }
    const json j = {{"type", "fuzz"},
                    {"target", opt.lemma},
                    {"count", opt.count},
                    {"violations", violations},
                    {"worst_slack", worst_slack}};
    if (opt.machine) std::printf("%s\n", j.dump().c_str());
    else
      std::printf("fuzz %s: %ld instances, %ld violations, worst slack %.17g\n",
                  opt.lemma.c_str(), opt.count, violations, worst_slack);
    return violations > 0 ? kExitViolation : kExitOk;
  }

  // Suite fuzzing over random tuples.
  const std::vector<Exponent> exps = parse_exponents(opt.exponents);
  int verified = 0, inconclusive = 0;
  for (long i = 0; i < opt.count; ++i) {
    SplitMix64 rng(SplitMix64::derive(opt.seed, static_cast<std::uint64_t>(i)));
    const GenSpec spec = gen_random_spec(rng);
    const AnyTuple tuple = gen_tuple(spec);
    OptimizerConfig cfg;
    cfg.seed = SplitMix64::derive(opt.seed, static_cast<std::uint64_t>(i) ^ 0xF00DULL);
    cfg.restarts = opt.restarts;
    cfg.max_iterations = opt.max_iterations;
    const SuiteReport report =
        std::visit([&](const auto& x) { return run_full_suite(x, exps, cfg); }, tuple);
    verified += report.verified;
    inconclusive += report.inconclusive;
    // Inconclusive records carry unfavorable-end slacks that say nothing
    // about the true inequality, so only decided records enter the stat.
    for (const InequalityRecord& rec : report.records) {
      if (rec.verdict != Verdict::inconclusive) {
        worst_slack = std::min(worst_slack, rec.slack);
      }
    }
    if (report.violated > 0) {
      violations += report.violated;
      Corpus corpus;
      corpus.entries.push_back(CorpusEntry{spec, tuple});
      corpus.metadata["origin"] = "fuzz violation at index " + std::to_string(i);
      const std::string path =
          "fuzz_suite_violation_" + std::to_string(i) + kCorpusSuffix;
      save_corpus(path, corpus);
      std::fprintf(stderr, "violation at tuple %ld dumped to %s\n", i, path.c_str());
    }
    if (opt.machine) {
      const json line = {{"type", "suite"},
                         {"index", i},
                         {"n", spec.n},
                         {"m", spec.m},
                         {"field", to_string(spec.field)},
                         {"ground", to_string(spec.ground_exponent)},
                         {"distribution", to_string(spec.distribution)},
                         {"verified", report.verified},
                         {"inconclusive", report.inconclusive},
                         {"violated", report.violated}};
      std::printf("%s\n", line.dump().c_str());
    }
  }
  const json j = {{"type", "fuzz"},       {"target", "suite"},
                  {"count", opt.count},   {"violations", violations},
                  {"verified", verified}, {"inconclusive", inconclusive},
                  {"worst_slack", worst_slack}};
  if (opt.machine) std::printf("%s\n", j.dump().c_str());
  else
    std::printf("fuzz suite: %ld tuples, %ld violations, %d verified,"
                " %d inconclusive, worst slack %.17g\n",
                opt.count, violations, verified, inconclusive, worst_slack);
  return violations > 0 ? kExitViolation : kExitOk;
}

struct GenOptions {
  std::string spec;
  std::string out;
  long count = 1;
  bool machine = false;
};

GenSpec parse_gen_spec(const std::string& text) {
  GenSpec spec;
  for (const std::string& tok : split(text, ',')) {
    if (tok.empty()) continue;
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos) {
      spec.distribution = parse_distribution(tok);
      continue;
    }
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "seed") spec.seed = std::stoull(val);
    else if (key == "n") spec.n = std::stoi(val);
    else if (key == "m") spec.m = std::stoi(val);
    else if (key == "field") {
      if (val == "real") spec.field = Field::real;
      else if (val == "complex") spec.field = Field::complex;
      else throw std::invalid_argument("unknown field '" + val + "'");
    } else if (key == "ground" || key == "s") {
      spec.ground_exponent = Exponent::parse(val);
    } else if (key == "k") {
      spec.sparse_k = std::stoi(val);
    } else if (key == "dist" || key == "distribution") {
      spec.distribution = parse_distribution(val);
    } else {
      throw std::invalid_argument("unknown spec key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

int run_gen(const GenOptions& opt) {
  GenSpec base;
  try {
    base = parse_gen_spec(opt.spec);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  Corpus corpus;
  for (long i = 0; i < opt.count; ++i) {
    GenSpec spec = base;
    spec.seed = base.seed + static_cast<std::uint64_t>(i);
    corpus.entries.push_back(CorpusEntry{spec, gen_tuple(spec)});
  }
  try {
    save_corpus(opt.out, corpus);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFile;
  }
  if (opt.machine) {
    const json j = {{"type", "gen"}, {"path", opt.out}, {"tuples", opt.count}};
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("wrote %s (%ld tuples)\n", opt.out.c_str(), opt.count);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyponorm: certified hypo-q-norms of vector tuples and the"
               " inequality suite around them"};
  app.require_subcommand(1);

  ComputeOptions copt;
  CLI::App* compute = app.add_subcommand("compute", "compute one hypo-q-norm");
  compute->add_option("--input", copt.input, "corpus file")->required();
  compute->add_option("--index", copt.index, "tuple index in the corpus");
  compute->add_option("--q", copt.q, "exponent (inf, integer, or rational a/b)")
      ->required();
  compute->add_option("--method", copt.method, "auto|ascent|grid|enum|spectral");
  compute->add_option("--seed", copt.seed, "optimizer seed");
  compute->add_option("--restarts", copt.restarts, "ascent restarts");
  compute->add_flag("--machine", copt.machine, "one JSON record per line");

  SuiteOptions sopt;
  CLI::App* suite = app.add_subcommand("suite", "run the inequality suite");
  suite->add_option("--input", sopt.input, "corpus file")->required();
  suite->add_option("--exponents", sopt.exponents, "comma-separated exponent set");
  suite->add_option("--seed", sopt.seed, "optimizer seed");
  suite->add_option("--restarts", sopt.restarts, "ascent restarts");
  suite->add_flag("--machine", sopt.machine, "one JSON record per line");

  LemmaOptions lopt;
  CLI::App* lemma = app.add_subcommand("lemma", "check one scalar inequality");
  lemma->add_option("--id", lopt.id,
                    "reverse_cbs|shisha_mond_product|shisha_mond_sqrt|chebyshev|"
                    "biernacki|gruss_fd")
      ->required();
  lemma->add_option("--a", lopt.a, "first sequence (z for reverse_cbs)")->required();
  lemma->add_option("--b", lopt.b, "second sequence (y for reverse_cbs)")->required();
  lemma->add_option("--w", lopt.w, "weights (reverse_cbs; defaults to ones)");
  lemma->add_option("--box", lopt.box, "bounds a,A[,b,B]");
  lemma->add_option("--gamma", lopt.gamma, "ratio lower bound (shisha_mond_sqrt)");
  lemma->add_option("--Gamma", lopt.big_gamma, "ratio upper bound (shisha_mond_sqrt)");
  lemma->add_option("--alpha", lopt.alpha, "holder exponent (gruss_fd)");
  lemma->add_option("--variant", lopt.variant, "sup|holder|l1 (gruss_fd)");
  lemma->add_flag("--machine", lopt.machine, "one JSON record per line");

  FuzzOptions fopt;
  CLI::App* fuzz = app.add_subcommand("fuzz", "random property checking");
  CLI::Option* fuzz_lemma =
      fuzz->add_option("--lemma", fopt.lemma, "lemma tag to fuzz");
  CLI::Option* fuzz_suite = fuzz->add_flag("--suite", fopt.suite, "fuzz the suite");
  fuzz_lemma->excludes(fuzz_suite);
  fuzz->add_option("--count", fopt.count, "number of instances");
  fuzz->add_option("--seed", fopt.seed, "master seed");
  fuzz->add_option("--restarts", fopt.restarts, "ascent restarts (suite)");
  fuzz->add_option("--exponents", fopt.exponents, "exponent set (suite)");
  fuzz->add_flag("--machine", fopt.machine, "one JSON record per line");

  GenOptions gopt;
  CLI::App* gen = app.add_subcommand("gen", "generate a corpus");
  gen->add_option("--spec", gopt.spec,
                  "e.g. duplicates,n=2,m=3,seed=7[,field=real][,ground=2][,k=1]")
      ->required();
  gen->add_option("--out", gopt.out, "output path (*.hyponorm.json)")->required();
  gen->add_option("--count", gopt.count, "number of tuples (seeds increment)");
  gen->add_flag("--machine", gopt.machine, "one JSON record per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compute->parsed()) return run_compute(copt);
    if (suite->parsed()) return run_suite(sopt);
    if (lemma->parsed()) return run_lemma(lopt);
    if (fuzz->parsed()) {
      if (fopt.lemma.empty() && !fopt.suite) {
        std::fprintf(stderr, "error: fuzz needs --lemma <tag> or --suite\n");
        return kExitUsage;
      }
      return run_fuzz(fopt);
    }
    if (gen->parsed()) return run_gen(gopt);
  } catch (const CorpusError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFile;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
