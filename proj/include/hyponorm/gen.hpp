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

#include <fstream>
#include <map>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hyponorm/core.hpp"
#include "hyponorm/lemmas.hpp"
#include "hyponorm/splitmix64.hpp"

namespace hyponorm {

// Deterministic, seeded generation of test tuples and lemma inputs, plus a
// versioned JSON corpus format. Every generator is a pure function of its
// spec: the SplitMix64 stream and the draw order are fixed, so the same spec
// reproduces the same bits on any platform.

enum class Distribution { gaussian, uniform_ball, sparse, rank_one, duplicates };

inline const char* to_string(Distribution d) {
  switch (d) {
    case Distribution::gaussian: return "gaussian";
    case Distribution::uniform_ball: return "uniform_ball";
    case Distribution::sparse: return "sparse";
    case Distribution::rank_one: return "rank_one";
    case Distribution::duplicates: return "duplicates";
  }
  return "unknown";
}

inline Distribution parse_distribution(const std::string& name) {
  if (name == "gaussian") return Distribution::gaussian;
  if (name == "uniform_ball") return Distribution::uniform_ball;
  if (name == "sparse") return Distribution::sparse;
  if (name == "rank_one") return Distribution::rank_one;
  if (name == "duplicates") return Distribution::duplicates;
  throw std::invalid_argument("unknown distribution '" + name + "'");
}

struct GenSpec {
  std::uint64_t seed = 0;
  int n = 1;
  int m = 1;
  Field field = Field::real;
  Exponent ground_exponent = Exponent(2.0);
  Distribution distribution = Distribution::gaussian;
  int sparse_k = 1;

  void validate() const {
    if (n < 1) throw std::invalid_argument("GenSpec: n must be >= 1");
    if (m < 1) throw std::invalid_argument("GenSpec: m must be >= 1");
    if (distribution == Distribution::sparse && (sparse_k < 1 || sparse_k > m)) {
      throw std::invalid_argument("GenSpec: sparse_k must be in [1, m]");
    }
  }

  GroundSpace space() const { return GroundSpace(m, field, ground_exponent); }
};

using AnyTuple = std::variant<RealTuple, ComplexTuple>;

namespace detail {

template <Scalar S>
S draw_scalar(SplitMix64& rng) {
  if constexpr (std::is_same_v<S, double>) {
    return rng.next_gaussian();
  } else {
    const double re = rng.next_gaussian();
    const double im = rng.next_gaussian();
    return Complex(re, im);
  }
}

template <Scalar S>
std::vector<S> draw_vector(SplitMix64& rng, int m) {
  std::vector<S> v(m);
  for (int k = 0; k < m; ++k) v[k] = draw_scalar<S>(rng);
  return v;
}

}  // namespace detail

/// Deterministic tuple generation; same spec, same bits.
template <Scalar S>
Tuple<S> gen_tuple_as(const GenSpec& spec) {
  spec.validate();
  if (scalar_traits<S>::field != spec.field) {
    throw std::invalid_argument("gen_tuple_as: scalar type does not match field");
  }
  SplitMix64 rng(spec.seed);
  const GroundSpace space = spec.space();
  std::vector<std::vector<S>> entries;
  entries.reserve(spec.n);

  switch (spec.distribution) {
    case Distribution::gaussian:
      for (int j = 0; j < spec.n; ++j) {
        entries.push_back(detail::draw_vector<S>(rng, spec.m));
      }
      break;
    case Distribution::uniform_ball:
      for (int j = 0; j < spec.n; ++j) {
        std::vector<S> v = detail::draw_vector<S>(rng, spec.m);
        const double radius = std::pow(rng.next_double(), 1.0 / spec.m);
        const double norm = pnorm(std::span<const S>(v), spec.ground_exponent);
        const double factor = norm > 0.0 ? radius / norm : 0.0;
        for (S& c : v) c *= factor;
        entries.push_back(std::move(v));
      }
      break;
    case Distribution::sparse:
      for (int j = 0; j < spec.n; ++j) {
        std::vector<int> idx(spec.m);
        std::iota(idx.begin(), idx.end(), 0);
        for (int t = 0; t < spec.sparse_k; ++t) {
          const int pick = t + static_cast<int>(rng.next_below(spec.m - t));
          std::swap(idx[t], idx[pick]);
        }
        std::vector<S> v(spec.m, S{});
        for (int t = 0; t < spec.sparse_k; ++t) v[idx[t]] = detail::draw_scalar<S>(rng);
        entries.push_back(std::move(v));
      }
      break;
    case Distribution::rank_one: {
      const std::vector<S> v = detail::draw_vector<S>(rng, spec.m);
      for (int j = 0; j < spec.n; ++j) {
        const S c = detail::draw_scalar<S>(rng);
        std::vector<S> e(spec.m);
        for (int k = 0; k < spec.m; ++k) e[k] = c * v[k];
        entries.push_back(std::move(e));
      }
      break;
    }
    case Distribution::duplicates: {
      const std::vector<S> v = detail::draw_vector<S>(rng, spec.m);
      for (int j = 0; j < spec.n; ++j) entries.push_back(v);
      break;
    }
  }
  return Tuple<S>(space, std::move(entries));
}

inline AnyTuple gen_tuple(const GenSpec& spec) {
  if (spec.field == Field::real) return gen_tuple_as<double>(spec);
  return gen_tuple_as<Complex>(spec);
}

/// Random spec for suite fuzzing; all fields come from the given stream.
inline GenSpec gen_random_spec(SplitMix64& rng, int max_n = 6, int max_m = 8) {
  GenSpec spec;
  spec.seed = rng.next_u64();
  spec.n = 1 + static_cast<int>(rng.next_below(max_n));
  spec.m = 1 + static_cast<int>(rng.next_below(max_m));
  spec.field = rng.next_below(2) == 0 ? Field::real : Field::complex;
  const std::uint64_t g = rng.next_below(3);
  spec.ground_exponent =
      g == 0 ? Exponent(1.0) : (g == 1 ? Exponent(2.0) : Exponent::infinity());
  const std::uint64_t d = rng.next_below(5);
  spec.distribution = static_cast<Distribution>(d);
  spec.sparse_k = 1 + static_cast<int>(rng.next_below(spec.m));
  return spec;
}

/// Valid random input for one scalar lemma.
inline LemmaInstance gen_lemma_instance(const std::string& lemma, SplitMix64& rng) {
  LemmaInstance inst;
  inst.lemma = lemma;
  const int n =
      lemma.rfind("gruss_fd", 0) == 0
          ? 2 + static_cast<int>(rng.next_below(19))
          : 1 + static_cast<int>(rng.next_below(20));

  if (lemma == "reverse_cbs") {
    inst.box.a_min = rng.next_uniform(-2.0, 2.0);
    inst.box.a_max = inst.box.a_min + rng.next_uniform(0.0, 3.0);
    for (int j = 0; j < n; ++j) {
      const double y = rng.next_uniform(0.0, 2.0);
      const double t = rng.next_double();
      inst.b.push_back(y);
      inst.a.push_back((inst.box.a_min + t * (inst.box.a_max - inst.box.a_min)) * y);
      inst.w.push_back(rng.next_uniform(0.01, 2.0));
    }
    return inst;
  }
  if (lemma == "shisha_mond_product") {
    inst.box.a_min = rng.next_uniform(0.0, 1.0);
    inst.box.a_max = inst.box.a_min + rng.next_uniform(0.0, 2.0);
    inst.box.b_min = rng.next_uniform(0.05, 1.0);
    inst.box.b_max = inst.box.b_min + rng.next_uniform(0.0, 2.0);
    for (int j = 0; j < n; ++j) {
      inst.a.push_back(rng.next_uniform(inst.box.a_min, inst.box.a_max));
      inst.b.push_back(rng.next_uniform(inst.box.b_min, inst.box.b_max));
    }
    return inst;
  }
  if (lemma == "shisha_mond_sqrt") {
    inst.gamma = rng.next_uniform(0.0, 1.0);
    inst.big_gamma = inst.gamma + rng.next_uniform(0.01, 2.0);
    for (int j = 0; j < n; ++j) {
      const double b = rng.next_uniform(0.05, 2.0);
      const double ratio = rng.next_uniform(inst.gamma, inst.big_gamma);
      inst.b.push_back(b);
      inst.a.push_back(ratio * b);
    }
    return inst;
  }
  if (lemma == "chebyshev_sum") {
    for (int j = 0; j < n; ++j) {
      inst.a.push_back(rng.next_gaussian());
      inst.b.push_back(rng.next_gaussian());
    }
    std::sort(inst.a.begin(), inst.a.end());
    std::sort(inst.b.begin(), inst.b.end());
    for (int j = n - 1; j > 0; --j) {
      const int k = static_cast<int>(rng.next_below(j + 1));
      std::swap(inst.a[j], inst.a[k]);
      std::swap(inst.b[j], inst.b[k]);
    }
    return inst;
  }
  if (lemma == "biernacki_gruss") {
    inst.box.a_min = rng.next_uniform(-2.0, 2.0);
    inst.box.a_max = inst.box.a_min + rng.next_uniform(0.0, 3.0);
    inst.box.b_min = rng.next_uniform(-2.0, 2.0);
    inst.box.b_max = inst.box.b_min + rng.next_uniform(0.0, 3.0);
    for (int j = 0; j < n; ++j) {
      inst.a.push_back(rng.next_uniform(inst.box.a_min, inst.box.a_max));
      inst.b.push_back(rng.next_uniform(inst.box.b_min, inst.box.b_max));
    }
    return inst;
  }
  if (lemma == "gruss_fd_sup" || lemma == "gruss_fd_holder" || lemma == "gruss_fd_l1") {
    for (int j = 0; j < n; ++j) {
      inst.a.push_back(rng.next_gaussian());
      inst.b.push_back(rng.next_gaussian());
    }
    inst.alpha = 1.0 + rng.next_uniform(0.1, 3.0);
    return inst;
  }
  throw std::invalid_argument("gen_lemma_instance: unknown lemma '" + lemma + "'");
}

// ---------------------------------------------------------------------------
// Equality witnesses: fixed inputs that achieve zero slack in a named check.

struct LemmaWitness {
  LemmaInstance instance;
};

struct TupleWitness {
  GenSpec spec;        // generates the tuple
  Exponent q{1.0};
  Exponent r{2.0};
  std::string target;  // which suite record attains equality
};

using EqualityWitness = std::variant<LemmaWitness, TupleWitness>;

inline EqualityWitness gen_equality_witness(const std::string& case_id) {
  if (case_id == "reverse_cbs_sharp") {
    LemmaInstance inst;
    inst.lemma = "reverse_cbs";
    inst.a = {1.0, 0.0};
    inst.b = {1.0, 1.0};
    inst.w = {1.0, 1.0};
    inst.box.a_min = 0.0;
    inst.box.a_max = 1.0;
    return LemmaWitness{inst};
  }
  if (case_id == "biernacki_n2") {
    LemmaInstance inst;
    inst.lemma = "biernacki_gruss";
    inst.a = {0.0, 1.0};
    inst.b = {0.0, 1.0};
    inst.box = {0.0, 1.0, 0.0, 1.0};
    return LemmaWitness{inst};
  }
  if (case_id == "gruss_fd_sup_n2") {
    LemmaInstance inst;
    inst.lemma = "gruss_fd_sup";
    inst.a = {0.0, 1.0};
    inst.b = {0.0, 1.0};
    return LemmaWitness{inst};
  }
  if (case_id == "gruss_fd_l1_n2") {
    LemmaInstance inst;
    inst.lemma = "gruss_fd_l1";
    inst.a = {0.0, 1.0};
    inst.b = {0.0, 1.0};
    return LemmaWitness{inst};
  }
  if (case_id == "sandwich_upper_dup") {
    GenSpec spec;
    spec.seed = 7;
    spec.n = 2;
    spec.m = 3;
    spec.distribution = Distribution::duplicates;
    return TupleWitness{spec, Exponent(2.0), Exponent(2.0), "sandwich.upper"};
  }
  if (case_id == "sandwich_lower_orthonormal") {
    GenSpec spec;  // the loader below special-cases orthonormal construction
    spec.seed = 0;
    spec.n = 3;
    spec.m = 3;
    spec.distribution = Distribution::gaussian;
    return TupleWitness{spec, Exponent(2.0), Exponent(2.0), "sandwich.lower"};
  }
  throw std::invalid_argument("gen_equality_witness: unknown case '" + case_id + "'");
}

/// The orthonormal n-tuple (e_1, ..., e_n) in Euclidean R^n.
inline RealTuple orthonormal_tuple(int n) {
  std::vector<std::vector<double>> entries(n, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) entries[j][j] = 1.0;
  return RealTuple(GroundSpace(n, Field::real, Exponent(2.0)), std::move(entries));
}

// ---------------------------------------------------------------------------
// Corpus persistence: versioned, human-diffable JSON.

inline constexpr const char* kCorpusVersion = "hyponorm/1";
inline constexpr const char* kCorpusSuffix = ".hyponorm.json";

struct CorpusEntry {
  GenSpec spec;
  AnyTuple tuple;
};

struct Corpus {
  std::string version = kCorpusVersion;
  std::vector<CorpusEntry> entries;
  std::map<std::string, std::string> metadata;
};

class CorpusError : public std::runtime_error {
 public:
  enum class Kind { version, malformed, dimension };

  CorpusError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

inline nlohmann::json exponent_to_json(const Exponent& e) {
  if (e.is_inf()) return "inf";
  return e.value();
}

inline Exponent exponent_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  return Exponent(j.get<double>());
}

inline nlohmann::json spec_to_json(const GenSpec& spec) {
  return {{"seed", spec.seed},
          {"n", spec.n},
          {"m", spec.m},
          {"field", to_string(spec.field)},
          {"ground_exponent", exponent_to_json(spec.ground_exponent)},
          {"distribution", to_string(spec.distribution)},
          {"sparse_k", spec.sparse_k}};
}

inline GenSpec spec_from_json(const nlohmann::json& j) {
  GenSpec spec;
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.n = j.at("n").get<int>();
  spec.m = j.at("m").get<int>();
  const std::string field = j.at("field").get<std::string>();
  if (field == "real") spec.field = Field::real;
  else if (field == "complex") spec.field = Field::complex;
  else throw std::invalid_argument("unknown field '" + field + "'");
  spec.ground_exponent = exponent_from_json(j.at("ground_exponent"));
  spec.distribution = parse_distribution(j.at("distribution").get<std::string>());
  spec.sparse_k = j.at("sparse_k").get<int>();
  return spec;
}

inline nlohmann::json entries_to_json(const RealTuple& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : t.entries) out.push_back(e);
  return out;
}

inline nlohmann::json entries_to_json(const ComplexTuple& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : t.entries) {
    nlohmann::json row = nlohmann::json::array();
    for (const Complex& c : e) row.push_back({c.real(), c.imag()});
    out.push_back(row);
  }
  return out;
}

}  // namespace detail

inline nlohmann::json corpus_to_json(const Corpus& corpus) {
  nlohmann::json j;
  j["version"] = corpus.version;
  j["metadata"] = corpus.metadata;
  nlohmann::json tuples = nlohmann::json::array();
  for (const CorpusEntry& entry : corpus.entries) {
    nlohmann::json t;
    t["spec"] = detail::spec_to_json(entry.spec);
    std::visit([&](const auto& tup) { t["entries"] = detail::entries_to_json(tup); },
               entry.tuple);
    tuples.push_back(std::move(t));
  }
  j["tuples"] = std::move(tuples);
  return j;
}

inline Corpus corpus_from_json(const nlohmann::json& j) {
  Corpus corpus;
  try {
    if (!j.contains("version") || !j.at("version").is_string()) {
      throw CorpusError(CorpusError::Kind::version, "corpus: missing version field");
    }
    corpus.version = j.at("version").get<std::string>();
    if (corpus.version != kCorpusVersion) {
      throw CorpusError(CorpusError::Kind::version,
                        "corpus: version '" + corpus.version + "' != '" +
                            kCorpusVersion + "'");
    }
    if (j.contains("metadata")) {
      corpus.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    }
    std::size_t index = 0;
    for (const nlohmann::json& t : j.at("tuples")) {
      const GenSpec spec = detail::spec_from_json(t.at("spec"));
      const nlohmann::json& rows = t.at("entries");
      if (static_cast<int>(rows.size()) != spec.n) {
        throw CorpusError(CorpusError::Kind::dimension,
                          "corpus: tuple " + std::to_string(index) + " has " +
                              std::to_string(rows.size()) + " entries, spec says n=" +
                              std::to_string(spec.n));
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].size()) != spec.m) {
          throw CorpusError(CorpusError::Kind::dimension,
                            "corpus: tuple " + std::to_string(index) + " entry " +
                                std::to_string(r) + " has length " +
                                std::to_string(rows[r].size()) + ", spec says m=" +
                                std::to_string(spec.m));
        }
      }
      if (spec.field == Field::real) {
        std::vector<std::vector<double>> entries;
        entries.reserve(rows.size());
        for (const auto& row : rows) entries.push_back(row.get<std::vector<double>>());
        corpus.entries.push_back(
            CorpusEntry{spec, RealTuple(spec.space(), std::move(entries))});
      } else {
        std::vector<std::vector<Complex>> entries;
        entries.reserve(rows.size());
        for (const auto& row : rows) {
          std::vector<Complex> e;
          e.reserve(row.size());
          for (const auto& pair : row) {
            e.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
          }
          entries.push_back(std::move(e));
        }
        corpus.entries.push_back(
            CorpusEntry{spec, ComplexTuple(spec.space(), std::move(entries))});
      }
      ++index;
    }
  } catch (const CorpusError&) {
    throw;
  } catch (const std::exception& e) {
    throw CorpusError(CorpusError::Kind::malformed,
                      std::string("corpus: malformed content: ") + e.what());
  }
  return corpus;
}

inline void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_corpus: cannot open '" + path + "'");
  out << corpus_to_json(corpus).dump(2) << '\n';
  if (!out) throw std::runtime_error("save_corpus: write failed for '" + path + "'");
}

inline Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_corpus: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CorpusError(CorpusError::Kind::malformed,
                      "corpus: cannot parse '" + path + "': " + e.what());
  }
  return corpus_from_json(j);
}

}  // namespace hyponorm
