#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ces/special.hpp"
#include "ces/verify.hpp"

using namespace ces;
using special::Hyp2F1Params;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::abs(want);
}
}  // namespace

TEST_CASE("gamma at known real points") {
  CHECK_THAT(special::gamma({0.5, 0.0}).real(),
             WithinRel(std::sqrt(special::kPi), 1e-13));
  CHECK_THAT(special::gamma({0.5, 0.0}).imag(), WithinAbs(0.0, 1e-15));
  CHECK_THAT(special::gamma({5.0, 0.0}).real(), WithinRel(24.0, 1e-13));
  CHECK_THAT(special::gamma({1.0, 0.0}).real(), WithinRel(1.0, 1e-14));
}

TEST_CASE("gamma modulus at 1+i from the reflection identity") {
  // |Gamma(1+i)|^2 = pi / sinh(pi), evaluated independently.
  const double expected = std::sqrt(special::kPi / std::sinh(special::kPi));
  CHECK_THAT(std::abs(special::gamma({1.0, 1.0})), WithinRel(expected, 1e-12));
}

TEST_CASE("gamma accuracy across |z| <= 50") {
  // Reference values computed at 30 significant digits.
  struct Ref {
    Complex z, gamma;
  };
  const Ref refs[] = {
      {{30.0, 40.0}, {1.87419976730378019e+21, -1.51084450333286787e+21}},
      {{0.5, 49.0}, {-8.87198598444531441e-34, -3.02278185870457034e-34}},
      {{45.0, 0.0}, {2.65827157478844877e+54, 0.0}},
      {{-20.3, 10.7}, {1.93968429584959668e-32, -3.12873152058573388e-32}},
      {{-35.5, 0.0}, {5.08480019802883673e-41, 0.0}},
      {{3.0, -4.0}, {0.00522553847136921419, 0.172547079294300188}},
      {{-0.5, -30.0}, {6.68513784139865511e-23, -2.7800740025020883e-22}},
  };
  for (const auto& r : refs) {
    INFO("z = (" << r.z.real() << ", " << r.z.imag() << ")");
    CHECK(rel_err(special::gamma(r.z), r.gamma) < 1e-12);
  }
}

TEST_CASE("gamma pole guard") {
  CHECK_THROWS_AS(special::gamma({0.0, 0.0}), PoleError);
  CHECK_THROWS_AS(special::gamma({-1.0, 0.0}), PoleError);
  CHECK_THROWS_AS(special::gamma({-3.0 + 1e-13, 1e-14}), PoleError);
  CHECK_NOTHROW(special::gamma({-3.5, 0.0}));
}

TEST_CASE("gamma reflection identity on random draws") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ure(-10.0, 10.0), uim(0.05, 5.0);
  for (int i = 0; i < 50; ++i) {
    const Complex z{ure(rng), uim(rng) * (i % 2 ? 1.0 : -1.0)};
    const Complex lhs =
        special::gamma(z) * special::gamma(1.0 - z) * std::sin(special::kPi * z);
    CHECK_THAT(std::abs(lhs / special::kPi - 1.0), WithinAbs(0.0, 1e-10));
  }
}

TEST_CASE("log_gamma at integer points") {
  CHECK_THAT(std::abs(special::log_gamma({1.0, 0.0})), WithinAbs(0.0, 1e-13));
  CHECK_THAT(std::abs(special::log_gamma({2.0, 0.0})), WithinAbs(0.0, 1e-13));
  CHECK_THAT(special::log_gamma({10.0, 0.0}).real(),
             WithinRel(std::log(362880.0), 1e-13));
}

TEST_CASE("exp(log_gamma) agrees with gamma") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ure(-6.0, 8.0), uim(-6.0, 6.0);
  for (int i = 0; i < 60; ++i) {
    const Complex z{ure(rng), uim(rng)};
    if (special::dist_to_nonpositive_integer(z) < 1e-3) continue;
    CHECK(rel_err(std::exp(special::log_gamma(z)), special::gamma(z)) < 1e-10);
  }
}

TEST_CASE("hyp2f1 at z = 0 is 1") {
  const Hyp2F1Params p{{0.3, 0.7}, {1.1, -0.2}, {1.5, 0.4}};
  CHECK(special::hyp2f1(p, 0.0) == Complex{1.0, 0.0});
  CHECK(special::hyp2f1_series(p, 0.0, 10) == Complex{1.0, 0.0});
}

TEST_CASE("hyp2f1 log closed form") {
  // 2F1(1,1;2;z) = -ln(1-z)/z.
  const Hyp2F1Params p{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  const double expected = -std::log(0.5) / 0.5;
  CHECK_THAT(special::hyp2f1(p, 0.5).real(), WithinRel(expected, 1e-14));
  CHECK_THAT(special::hyp2f1(p, 0.5).imag(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("hyp2f1 binomial reduction when b = c") {
  const Complex a{0.3, 0.7};
  const Hyp2F1Params p{a, {1.1, 0.0}, {1.1, 0.0}};
  const Complex expected = std::pow(Complex{0.75, 0.0}, -a);
  CHECK(rel_err(special::hyp2f1(p, 0.25), expected) < 1e-13);
}

TEST_CASE("hyp2f1_series closed-form oracle") {
  const Hyp2F1Params p{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  const double expected = -std::log(0.7) / 0.3;  // 1.1889164797957746
  CHECK_THAT(special::hyp2f1_series(p, 0.3, 1000).real(), WithinRel(expected, 1e-13));
}

TEST_CASE("hyp2f1_series cross-checks hyp2f1") {
  const Hyp2F1Params p{{2.0, 0.0}, {3.0, 0.0}, {4.0, 0.0}};
  CHECK(rel_err(special::hyp2f1_series(p, 0.1, 500), special::hyp2f1(p, 0.1)) < 1e-13);
}

TEST_CASE("series and transformed paths agree on the overlap") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.5, 1.5), uz(0.05, 0.45);
  for (int i = 0; i < 25; ++i) {
    const Hyp2F1Params p{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng) + 2.0, u(rng)}};
    const double z = uz(rng);
    CHECK(rel_err(special::hyp2f1(p, z), special::hyp2f1_series(p, z, 20000)) < 1e-12);
  }
}

TEST_CASE("Gauss summation limit at z -> 1") {
  const auto rep = verify::check_gauss_summation({});
  INFO(rep.name << " residual " << rep.max_residual);
  CHECK(rep.passed);
}

TEST_CASE("Kummer connection residual") {
  const auto rep = verify::check_kummer_connection({});
  INFO(rep.name << " residual " << rep.max_residual);
  CHECK(rep.passed);
}

TEST_CASE("degenerate connection raises instead of guessing") {
  // c - a - b = 1 exactly: the z -> 1-z formula hits the logarithmic case.
  const Hyp2F1Params p{{0.25, 0.0}, {0.25, 0.0}, {1.5, 0.0}};
  CHECK_THROWS_AS(special::hyp2f1(p, 0.75), DegenerateConnectionError);
  // The small-z series path is untouched by the degeneracy.
  CHECK_NOTHROW(special::hyp2f1(p, 0.25));
}

TEST_CASE("c at a non-positive integer is rejected at construction") {
  CHECK_THROWS_AS(Hyp2F1Params({1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(Hyp2F1Params({1.0, 0.0}, {1.0, 0.0}, {-2.0, 1e-13}), ParameterError);
  CHECK_NOTHROW(Hyp2F1Params({1.0, 0.0}, {1.0, 0.0}, {-2.5, 0.0}));
}

TEST_CASE("argument domain") {
  const Hyp2F1Params p{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  CHECK_THROWS_AS(special::hyp2f1(p, -0.1), DomainError);
  CHECK_THROWS_AS(special::hyp2f1(p, 1.0), DomainError);
  CHECK_THROWS_AS(special::hyp2f1_series(p, 1.0, 100), DomainError);
}

TEST_CASE("series term cap reports non-convergence") {
  const Hyp2F1Params p{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  CHECK_THROWS_AS(special::hyp2f1_series(p, 0.9, 5), ConvergenceError);
}

TEST_CASE("hyp2f1 derivative matches the shifted-parameter identity") {
  const Hyp2F1Params p{{0.5, 1.2}, {0.5, -0.8}, {1.5, 2.0}};
  const double z = 0.3, h = 1e-5;
  const Complex fd = (special::hyp2f1(p, z + h) - special::hyp2f1(p, z - h)) / (2.0 * h);
  CHECK(rel_err(special::hyp2f1_derivative(p, z), fd) < 1e-9);
}
