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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hyponorm/gen.hpp"
#include "hyponorm/lemmas.hpp"

using namespace hyponorm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const std::vector<double> kOnes2 = {1.0, 1.0};
}

TEST_CASE("reverse Cauchy-Schwarz bound") {
  SECTION("equality of sequences gives zero left side") {
    const std::vector<double> z = {1.0, 2.0, 3.0};
    BoundBox box{1.0, 1.0, 0.0, 0.0};
    const auto rep = reverse_cbs(z, z, std::vector<double>(3, 1.0), box);
    CHECK_THAT(rep.lhs, WithinAbs(0.0, 1e-12));
    CHECK(rep.holds);
    CHECK(rep.lower_holds);
  }

  SECTION("sharp witness") {
    const std::vector<double> z = {1.0, 0.0};
    const std::vector<double> y = kOnes2;
    BoundBox box{0.0, 1.0, 0.0, 0.0};
    const auto rep = reverse_cbs(z, y, kOnes2, box);
    CHECK(rep.lhs == 1.0);
    CHECK(rep.rhs == 1.0);
    CHECK(rep.slack == 0.0);
    CHECK(rep.holds);
  }

  SECTION("weights scale both sides quadratically") {
    const std::vector<double> z = {1.0, 0.0};
    const std::vector<double> w = {2.0, 2.0};
    BoundBox box{0.0, 1.0, 0.0, 0.0};
    const auto rep = reverse_cbs(z, kOnes2, w, box);
    CHECK(rep.lhs == 4.0);
    CHECK(rep.rhs == 4.0);
  }

  SECTION("preconditions carry the offending index") {
    const std::vector<double> z = {1.0, 5.0};
    BoundBox box{0.0, 1.0, 0.0, 0.0};
    try {
      reverse_cbs(z, kOnes2, kOnes2, box);
      FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
      CHECK(e.index() == 1);
    }
    const std::vector<double> wbad = {1.0, 0.0};
    const std::vector<double> zok = {0.5, 0.5};
    CHECK_THROWS_AS(reverse_cbs(zok, kOnes2, wbad, box), PreconditionError);
    // Report-only mode computes regardless.
    const auto rep = reverse_cbs(z, kOnes2, kOnes2, box, Strictness::report_only);
    CHECK(rep.lhs >= 0.0);
  }
}

TEST_CASE("Shisha-Mond product bound") {
  SECTION("identical sequences") {
    const std::vector<double> a = {1.0, 2.0};
    BoundBox box{1.0, 2.0, 1.0, 2.0};
    const auto rep = shisha_mond_product(a, a, box);
    CHECK_THAT(rep.lhs, WithinAbs(0.0, 1e-12));
    CHECK(rep.holds);
  }

  SECTION("direct evaluation") {
    const std::vector<double> a = {0.0, 1.0};
    BoundBox box{0.0, 1.0, 1.0, 1.0};
    const auto rep = shisha_mond_product(a, kOnes2, box);
    CHECK(rep.lhs == 1.0);
    CHECK(rep.rhs == 2.0);
    CHECK(rep.holds);
  }

  SECTION("constant sequences are proportional") {
    const std::vector<double> a = {2.0, 2.0, 2.0};
    const std::vector<double> b = {3.0, 3.0, 3.0};
    BoundBox box{2.0, 2.0, 3.0, 3.0};
    CHECK_THAT(shisha_mond_product(a, b, box).lhs, WithinAbs(0.0, 1e-12));
  }

  SECTION("rejects nonpositive b bound") {
    BoundBox box{0.0, 1.0, 0.0, 1.0};
    CHECK_THROWS_AS(shisha_mond_product(kOnes2, kOnes2, box), PreconditionError);
  }
}

TEST_CASE("Shisha-Mond square-root bound") {
  SECTION("proportional sequences at gamma = Gamma") {
    const std::vector<double> b = {1.0, 2.0};
    std::vector<double> a = {3.0, 6.0};
    const auto rep = shisha_mond_sqrt(a, b, 3.0, 3.0);
    CHECK_THAT(rep.lhs, WithinAbs(0.0, 1e-12));
    CHECK(rep.rhs == 0.0);
    CHECK(rep.holds);
  }

  SECTION("direct evaluation") {
    const std::vector<double> a = {0.0, 1.0};
    const auto rep = shisha_mond_sqrt(a, kOnes2, 0.0, 1.0);
    CHECK_THAT(rep.lhs, WithinRel(std::sqrt(2.0) - 1.0, 1e-12));
    CHECK(rep.rhs == 0.5);
    CHECK(rep.holds);
    CHECK(rep.lower_holds);
  }

  SECTION("single element") {
    const std::vector<double> one = {1.0};
    const auto rep = shisha_mond_sqrt(one, one, 1.0, 1.0);
    CHECK_THAT(rep.lhs, WithinAbs(0.0, 1e-12));
  }

  SECTION("degenerate gamma = Gamma = 0 rejected") {
    const std::vector<double> zero = {0.0};
    const std::vector<double> one = {1.0};
    CHECK_THROWS_AS(shisha_mond_sqrt(zero, one, 0.0, 0.0), PreconditionError);
  }

  SECTION("ratio out of range names the index") {
    const std::vector<double> a = {0.5, 9.0};
    try {
      shisha_mond_sqrt(a, kOnes2, 0.0, 1.0);
      FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
      CHECK(e.index() == 1);
    }
  }
}

TEST_CASE("Cebysev sum inequality") {
  SECTION("monotone identical sequences") {
    const std::vector<double> a = {1.0, 2.0, 3.0};
    const auto rep = chebyshev_sum(a, a);
    CHECK(rep.lhs == 4.0);
    CHECK_THAT(rep.rhs, WithinRel(14.0 / 3.0, 1e-15));
    CHECK(rep.holds);
  }

  SECTION("constant sequence gives equality") {
    const std::vector<double> a = {5.0, 5.0};
    const std::vector<double> b = {1.0, 7.0};
    const auto rep = chebyshev_sum(a, b);
    CHECK_THAT(rep.slack, WithinAbs(0.0, 1e-12));
  }

  SECTION("direct evaluation") {
    const std::vector<double> a = {0.0, 1.0};
    const std::vector<double> b = {0.0, 2.0};
    const auto rep = chebyshev_sum(a, b);
    CHECK(rep.lhs == 0.5);
    CHECK(rep.rhs == 1.0);
  }

  SECTION("asynchronous pair is rejected with its indices") {
    const std::vector<double> a = {0.0, 1.0};
    const std::vector<double> b = {1.0, 0.0};
    try {
      chebyshev_sum(a, b);
      FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
      CHECK(e.index() == 0);
      CHECK(e.second_index() == 1);
    }
    CHECK_NOTHROW(chebyshev_sum(a, b, Strictness::report_only));
  }

  SECTION("large-n order scan agrees with the pairwise check") {
    SplitMix64 rng(10101);
    std::vector<double> a(1500), b(1500);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = rng.next_gaussian();
    std::sort(a.begin(), a.end());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = a[i] * 2.0 + 1.0;
    CHECK_NOTHROW(chebyshev_sum(a, b));
    b[700] = -100.0;  // breaks synchronicity
    CHECK_THROWS_AS(chebyshev_sum(a, b), PreconditionError);
  }
}

TEST_CASE("discrete Gruss bound") {
  SECTION("equality witness at n = 2") {
    const std::vector<double> a = {0.0, 1.0};
    BoundBox box{0.0, 1.0, 0.0, 1.0};
    const auto rep = biernacki_gruss(a, a, box);
    CHECK(rep.lhs == 0.25);
    CHECK(rep.rhs == 0.25);
    CHECK(rep.slack == 0.0);
  }

  SECTION("constant second sequence") {
    const std::vector<double> a = {0.0, 0.7, 0.2};
    const std::vector<double> b = {1.0, 1.0, 1.0};
    BoundBox box{0.0, 1.0, 1.0, 1.0};
    CHECK_THAT(biernacki_gruss(a, b, box).lhs, WithinAbs(0.0, 1e-12));
  }

  SECTION("n = 3 tight constant, cross-checked by extreme-point enumeration") {
    const auto chain = biernacki_rhs_chain(3, 1.0, 1.0);
    CHECK_THAT(chain[0], WithinRel(2.0 / 9.0, 1e-15));
    CHECK_THAT(chain[1], WithinRel(2.0 / 9.0, 1e-15));
    CHECK(chain[2] == 0.25);

    // Brute force over all 0/1 sequences of length 3.
    double worst = 0.0;
    for (int ma = 0; ma < 8; ++ma) {
      for (int mb = 0; mb < 8; ++mb) {
        double sa = 0, sb = 0, sab = 0;
        for (int j = 0; j < 3; ++j) {
          const double aj = (ma >> j) & 1;
          const double bj = (mb >> j) & 1;
          sa += aj;
          sb += bj;
          sab += aj * bj;
        }
        worst = std::max(worst, std::abs(sab / 3.0 - sa * sb / 9.0));
      }
    }
    CHECK_THAT(worst, WithinRel(2.0 / 9.0, 1e-12));
  }

  SECTION("the chain is nondecreasing for every n") {
    for (std::size_t n = 1; n <= 200; ++n) {
      const auto chain = biernacki_rhs_chain(n, 1.5, 0.5);
      CHECK(chain[1] <= chain[2] + 1e-15);
      CHECK_THAT(chain[0], WithinRel(chain[1], 1e-13));
    }
  }

  SECTION("floor identity up to a million") {
    for (std::uint64_t n = 1; n <= 1000000; ++n) {
      if (floor_quarter_square(n) != (n * n) / 4) {
        FAIL("identity broken at n = " << n);
      }
    }
    SUCCEED();
  }

  SECTION("box violation names the index") {
    const std::vector<double> a = {0.0, 2.0};
    BoundBox box{0.0, 1.0, 0.0, 1.0};
    try {
      biernacki_gruss(a, a, box);
      FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
      CHECK(e.index() == 1);
    }
  }
}

TEST_CASE("forward-difference Gruss bounds") {
  const std::vector<double> step = {0.0, 1.0};

  SECTION("constant sequence kills the left side") {
    const std::vector<double> c = {3.0, 3.0, 3.0};
    const std::vector<double> b = {1.0, -2.0, 5.0};
    for (const auto& variant :
         {GrussVariant::sup(), GrussVariant::holder(2.0), GrussVariant::l1()}) {
      const auto rep = gruss_forward_diff(c, b, variant);
      CHECK_THAT(rep.lhs, WithinAbs(0.0, 1e-12));
      CHECK(rep.holds);
    }
  }

  SECTION("sup variant attains its constant at n = 2") {
    const auto rep = gruss_forward_diff(step, step, GrussVariant::sup());
    CHECK(rep.lhs == 0.25);
    CHECK_THAT(rep.rhs, WithinAbs(0.25, 1e-12));
    CHECK_THAT(rep.slack, WithinAbs(0.0, 1e-12));
  }

  SECTION("l1 variant attains its constant at n = 2") {
    const auto rep = gruss_forward_diff(step, step, GrussVariant::l1());
    CHECK(rep.lhs == 0.25);
    CHECK(rep.rhs == 0.25);
    CHECK(rep.slack == 0.0);
  }

  SECTION("holder variant at alpha = 2 also peaks at n = 2") {
    const auto rep = gruss_forward_diff(step, step, GrussVariant::holder(2.0));
    CHECK_THAT(rep.rhs, WithinAbs(0.25, 1e-12));
    CHECK(rep.holds);
  }

  SECTION("rejects short input and bad alpha") {
    const std::vector<double> one = {1.0};
    CHECK_THROWS_AS(gruss_forward_diff(one, one, GrussVariant::sup()),
                    std::invalid_argument);
    CHECK_THROWS_AS(gruss_forward_diff(step, step, GrussVariant::holder(1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        gruss_forward_diff(step, step,
                           GrussVariant::holder(std::numeric_limits<double>::infinity())),
        std::invalid_argument);
  }
}

TEST_CASE("translation covariance") {
  SplitMix64 rng(606);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_below(8));
    std::vector<double> a(n), b(n);
    for (int j = 0; j < n; ++j) {
      a[j] = rng.next_gaussian();
      b[j] = rng.next_gaussian();
    }
    const double c = 3.25;
    std::vector<double> shifted = a;
    for (double& v : shifted) v += c;

    const auto r1 = gruss_forward_diff(a, b, GrussVariant::sup());
    const auto r2 = gruss_forward_diff(shifted, b, GrussVariant::sup());
    CHECK_THAT(r2.lhs, WithinAbs(r1.lhs, 1e-10));
    CHECK_THAT(r2.rhs, WithinAbs(r1.rhs, 1e-10));

    BoundBox box{*std::min_element(a.begin(), a.end()),
                 *std::max_element(a.begin(), a.end()),
                 *std::min_element(b.begin(), b.end()),
                 *std::max_element(b.begin(), b.end())};
    BoundBox shifted_box = box;
    shifted_box.a_min += c;
    shifted_box.a_max += c;
    const auto g1 = biernacki_gruss(a, b, box);
    const auto g2 = biernacki_gruss(shifted, b, shifted_box);
    CHECK_THAT(g2.lhs, WithinAbs(g1.lhs, 1e-10));
    CHECK_THAT(g2.rhs, WithinAbs(g1.rhs, 1e-10));
  }
}

TEST_CASE("fuzz soundness, small batch") {
  const std::vector<std::string> lemmas = {
      "reverse_cbs",     "shisha_mond_product", "shisha_mond_sqrt",
      "chebyshev_sum",   "biernacki_gruss",     "gruss_fd_sup",
      "gruss_fd_holder", "gruss_fd_l1"};
  for (const std::string& lemma : lemmas) {
    long violations = 0;
    for (long i = 0; i < 2000; ++i) {
      SplitMix64 rng(SplitMix64::derive(0xFEED + i, i));
      const LemmaInstance inst = gen_lemma_instance(lemma, rng);
      const LemmaReport rep = run_lemma_instance(inst);
      if (!rep.holds || !rep.lower_holds) ++violations;
    }
    INFO("lemma " << lemma);
    CHECK(violations == 0);
  }
}

TEST_CASE("unknown lemma tag") {
  LemmaInstance inst;
  inst.lemma = "sharper_than_sharp";
  CHECK_THROWS_AS(run_lemma_instance(inst), std::invalid_argument);
  SplitMix64 rng(1);
  CHECK_THROWS_AS(gen_lemma_instance("nope", rng), std::invalid_argument);
}
