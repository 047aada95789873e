#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mcmw/distribution.hpp"
#include "mcmw/quadrature.hpp"
#include "mcmw/specfun.hpp"

using namespace mcmw;

namespace {

// reference estimates of the failure-times application
const McMWParams kMcmwRef{0.599, 1.209, 1.063, 0.091, 0.090, 9.169};
const McMWParams kExp1{1.0, 0.0, 1.0, 1.0, 1.0, 1.0};

McMWParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 10.0);
  return {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("validate accepts the reference estimates and names violations") {
  CHECK_NOTHROW(validate(0.599, 1.209, 1.063, 0.091, 0.090, 9.169));
  CHECK_THROWS_WITH_AS(validate(0, 0, 1, 1, 1, 1),
                       doctest::Contains("alpha + gamma must be positive"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(validate(1, 1, -2, 1, 1, 1),
                       doctest::Contains("beta must be positive"),
                       std::invalid_argument);
  // several violations are all named
  CHECK_THROWS_WITH_AS(validate(1, 1, -2, -1, 1, 1),
                       doctest::Contains("a must be positive"),
                       std::invalid_argument);
}

TEST_CASE("base_cdf") {
  CHECK(base_cdf(kExp1, 1.0) ==
        doctest::Approx(0.63212055882855768).epsilon(1e-12));
  CHECK(base_cdf(kMcmwRef, 0.0) == 0.0);
  // direct evaluation at the application's MW estimates
  const McMWParams mw{0.043, 0.619, 0.492, 1, 1, 1};
  CHECK(base_cdf(mw, 1.0) ==
        doctest::Approx(0.48418133516340586).epsilon(1e-12));
  CHECK_THROWS_AS(base_cdf(mw, -1.0), std::domain_error);
}

TEST_CASE("pdf reduces to the base density when a=b=c=1") {
  CHECK(pdf(kExp1, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  const McMWParams mw{0.7, 1.3, 1.8, 1, 1, 1};
  for (double x : {0.05, 0.3, 1.0, 2.5, 7.0}) {
    const double rate = 0.7 + 1.3 * 1.8 * std::pow(x, 0.8);
    const double want = rate * std::exp(-(0.7 * x + 1.3 * std::pow(x, 1.8)));
    CHECK(pdf(mw, x) == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pdf(kExp1, 0.0), std::domain_error);
}

TEST_CASE("pdf integrates to one at the reference estimates") {
  const double mass = expectation(kMcmwRef, [](double) { return 1.0; });
  CHECK(std::fabs(mass - 1.0) < 1e-8);
}

TEST_CASE("log_pdf agrees with pdf and handles the exponential case") {
  CHECK(log_pdf(kExp1, 2.0) == doctest::Approx(-2.0).epsilon(1e-12));
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_params(rng);
    for (double x : {0.1, 0.9, 3.3}) {
      const double lp = log_pdf(p, x);
      if (std::isfinite(lp))
        CHECK(std::exp(lp) == doctest::Approx(pdf(p, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("log_pdf matches the differentiated cdf") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> xu(0.2, 4.0);
  std::uniform_real_distribution<double> pu(0.3, 3.0);
  int checked = 0;
  for (int i = 0; checked < 20 && i < 40; ++i) {
    const McMWParams p{pu(rng), pu(rng), pu(rng), pu(rng), pu(rng), pu(rng)};
    const double x = xu(rng);
    // finite differences need a density large enough to resolve in the cdf
    if (pdf(p, x) < 1e-4) continue;
    const double h = 1e-4 * std::max(1.0, x);
    const double num = (-cdf(p, x + 2 * h) + 8.0 * cdf(p, x + h) -
                        8.0 * cdf(p, x - h) + cdf(p, x - 2 * h)) /
                       (12.0 * h);
    if (num <= 0.0) continue;
    CHECK(std::fabs(std::log(num) - log_pdf(p, x)) < 1e-6);
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("cdf basics and reduction to the base cdf") {
  CHECK(cdf(kMcmwRef, 0.0) == 0.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xu(0.01, 12.0);
  const McMWParams mw{0.4, 0.9, 1.4, 1, 1, 1};
  for (int i = 0; i < 50; ++i) {
    const double x = xu(rng);
    CHECK(std::fabs(cdf(mw, x) - base_cdf(mw, x)) < 1e-12);
  }
}

TEST_CASE("cdf approaches 1 and stays monotone") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_params(rng);
    double prev = 0.0;
    for (double x = 0.0; x <= 20.0; x += 0.25) {
      const double F = cdf(p, x);
      CHECK(F >= prev - 1e-14);
      CHECK(F >= 0.0);
      CHECK(F <= 1.0);
      prev = F;
    }
    // push the base exponent past 40: the cdf must be essentially 1
    double x_hi = 1.0;
    while (base_exponent(p, x_hi) < 40.0) x_hi *= 2.0;
    CHECK(cdf(p, x_hi) > 1.0 - 1e-6);
  }
}

TEST_CASE("survival complements cdf and matches the tail integral") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> xu(0.01, 10.0);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng);
    const double x = xu(rng);
    CHECK(std::fabs(survival(p, x) + cdf(p, x) - 1.0) < 1e-12);
  }
  CHECK(survival(kMcmwRef, 0.0) == 1.0);
  // far-tail value matches quadrature of the density over (30, inf);
  // arbitrary-precision oracle value 0.002159342944763511
  const double s30 = survival(kMcmwRef, 30.0);
  CHECK(s30 > 0.0);
  CHECK(s30 == doctest::Approx(0.002159342944763511).epsilon(1e-9));
  const double tail = integrate(
      [&](double x) { return x > 0.0 ? pdf(kMcmwRef, x) : 0.0; }, 30.0,
      std::numeric_limits<double>::infinity(), 1e-12);
  CHECK(std::fabs(s30 - tail) < 1e-8);
}

TEST_CASE("hazard shapes of the base model") {
  // constant when beta = 1
  const McMWParams flat{2.0, 3.0, 1.0, 1, 1, 1};
  for (double x : {0.1, 1.0, 5.0, 9.0})
    CHECK(hazard(flat, x) == doctest::Approx(5.0).epsilon(1e-10));
  // decreasing when beta < 1 (alpha = 0)
  const McMWParams dec{0.0, 1.0, 0.5, 1, 1, 1};
  double prev = hazard(dec, 0.05);
  for (double x = 0.15; x < 8.0; x += 0.1) {
    const double h = hazard(dec, x);
    CHECK(h < prev);
    prev = h;
  }
  // increasing when beta > 1
  const McMWParams inc{0.0, 1.0, 2.5, 1, 1, 1};
  prev = hazard(inc, 0.05);
  for (double x = 0.15; x < 8.0; x += 0.1) {
    const double h = hazard(inc, x);
    CHECK(h > prev);
    prev = h;
  }
}

TEST_CASE("hazard is bathtub-shaped at the reference estimates") {
  // grid evaluation on [0.01, 15]: decreases to an interior minimum, then rises
  std::vector<double> hs;
  std::vector<double> xs;
  for (int i = 0; i <= 150; ++i) {
    const double x = 0.01 + (15.0 - 0.01) * i / 150.0;
    xs.push_back(x);
    hs.push_back(hazard(kMcmwRef, x));
  }
  const auto mn = std::min_element(hs.begin(), hs.end());
  const std::size_t at = static_cast<std::size_t>(mn - hs.begin());
  CHECK(at > 0);
  CHECK(at + 1 < hs.size());
  CHECK(hs.front() > *mn * 1.001);
  CHECK(hs.back() > *mn * 1.001);
  // decreasing into the minimum on a coarse subgrid
  for (std::size_t i = 5; i + 5 <= at; i += 5) CHECK(hs[i] < hs[i - 5]);
}

TEST_CASE("reversed hazard identities") {
  CHECK(reversed_hazard(kExp1, 1.0) ==
        doctest::Approx(0.581976706869326).epsilon(1e-12));
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> xu(0.05, 6.0);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_params(rng);
    const double x = xu(rng);
    const double f = pdf(p, x);
    const double F = cdf(p, x);
    const double S = survival(p, x);
    if (F <= 0.0 || S <= 0.0) continue;
    CHECK(std::fabs(hazard(p, x) * S - f) < 1e-10 * std::max(1.0, f));
    CHECK(std::fabs(reversed_hazard(p, x) * F - f) < 1e-10 * std::max(1.0, f));
  }
  // component-wise check at the reference estimates
  CHECK(reversed_hazard(kMcmwRef, 1.0) ==
        doctest::Approx(pdf(kMcmwRef, 1.0) / cdf(kMcmwRef, 1.0))
            .epsilon(1e-12));
}

TEST_CASE("quantile: exponential median and cdf round trips") {
  CHECK(quantile(kExp1, 0.5) ==
        doctest::Approx(0.69314718055994531).epsilon(1e-10));
  for (double u : {0.01, 0.1, 0.5, 0.9, 0.99}) {
    const double x = quantile(kMcmwRef, u);
    CHECK(std::fabs(cdf(kMcmwRef, x) - u) < 1e-9);
  }
  // median at the reference estimates; bisection oracle value
  CHECK(quantile(kMcmwRef, 0.5) ==
        doctest::Approx(1.45271718089446).epsilon(1e-9));
  CHECK_THROWS_AS(quantile(kMcmwRef, 0.0), std::domain_error);
  CHECK_THROWS_AS(quantile(kMcmwRef, 1.0), std::domain_error);
}

TEST_CASE("quantile/cdf identities on random parameter sets") {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> uu(1e-4, 1.0 - 1e-4);
  for (int i = 0; i < 15; ++i) {
    const auto p = random_params(rng);
    for (int k = 0; k < 6; ++k) {
      const double u = uu(rng);
      CHECK(std::fabs(cdf(p, quantile(p, u)) - u) < 1e-9);
    }
    const double x = quantile(p, 0.73);
    CHECK(quantile(p, cdf(p, x)) == doctest::Approx(x).epsilon(1e-8));
  }
}

TEST_CASE("sample: determinism, size, positivity") {
  CHECK_THROWS_AS(sample(kExp1, 0, 1), std::invalid_argument);
  const auto one = sample(kExp1, 1, 7);
  REQUIRE(one.size() == 1);
  CHECK(one[0] > 0.0);
  const auto a = sample(kMcmwRef, 100, 42);
  const auto b = sample(kMcmwRef, 100, 42);
  CHECK(a == b);
  const auto c = sample(kMcmwRef, 100, 43);
  CHECK(a != c);
}

TEST_CASE("sample: empirical cdf of exp(1) draws passes K-S at 1%") {
  const int n = 10000;
  auto draws = sample(kExp1, n, 2026);
  std::sort(draws.begin(), draws.end());
  double dist = 0.0;
  for (int i = 0; i < n; ++i) {
    const double F = -std::expm1(-draws[i]);
    dist = std::max(dist, std::max((i + 1.0) / n - F, F - static_cast<double>(i) / n));
  }
  CHECK(dist < 1.6276 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sample mean matches the quadrature mean at the reference estimates") {
  const int n = 100000;
  const auto draws = sample(kMcmwRef, n, 90210);
  double s = 0.0;
  for (double v : draws) s += v;
  const double mean = s / n;
  // quadrature oracle: mean 3.629891563644434, sd sqrt(37.55025 - mean^2)
  const double mu = 3.629891563644434;
  const double sd = std::sqrt(37.55025200743136 - mu * mu);
  CHECK(std::fabs(mean - mu) < 3.0 * sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("submodel constructors") {
  const auto mw = submodel(Submodel::MW, {0.043, 0.619, 0.492});
  CHECK(mw.alpha == 0.043);
  CHECK(mw.gamma == 0.619);
  CHECK(mw.beta == 0.492);
  CHECK(mw.a == 1.0);
  CHECK(mw.b == 1.0);
  CHECK(mw.c == 1.0);

  // McE reduces the density to the exponentiated-exponential form
  const auto mce = submodel(Submodel::McE, {2.0, 1.5, 2.5, 3.0});
  CHECK(mce.gamma == 0.0);
  for (double x : {0.1, 0.5, 1.5}) {
    const double G = -std::expm1(-2.0 * x);
    const double want = std::exp(std::log(3.0) - ln_beta(1.5, 2.5)) * 2.0 *
                        std::exp(-2.0 * x) *
                        std::pow(G, 1.5 * 3.0 - 1.0) *
                        std::pow(1.0 - std::pow(G, 3.0), 2.5 - 1.0);
    CHECK(pdf(mce, x) == doctest::Approx(want).epsilon(1e-12));
  }

  // BR: normalization via quadrature
  const auto br = submodel(Submodel::BR, {1.0, 2.0, 3.0});
  CHECK(br.alpha == 0.0);
  CHECK(br.beta == 2.0);
  CHECK(br.c == 1.0);
  const double mass = expectation(br, [](double) { return 1.0; });
  CHECK(std::fabs(mass - 1.0) < 1e-8);

  // KMW pins only a = 1; McW pins alpha = 0
  CHECK(submodel_spec(Submodel::KMW).fixed ==
        std::array<bool, 6>{false, false, false, true, false, false});
  CHECK(submodel_spec(Submodel::McW).fixed ==
        std::array<bool, 6>{true, false, false, false, false, false});

  CHECK_THROWS_AS(submodel(Submodel::MW, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(submodel(Submodel::Weibull, {0.0, 1.0}),
                  std::invalid_argument);  // gamma=0 conflicts with alpha=0
}

TEST_CASE("normalization on randomized parameter sets") {
  std::mt19937_64 rng(271828);
  for (int i = 0; i < 25; ++i) {
    const auto p = random_params(rng);
    const double mass = expectation(p, [](double) { return 1.0; });
    CHECK(std::fabs(mass - 1.0) < 1e-8);
    // cdf equals the quadrature of the pdf from 0 to x
    std::uniform_real_distribution<double> xu(0.05, 8.0);
    for (int k = 0; k < 10; ++k) {
      const double x = xu(rng);
      const double part = integrate(
          [&](double t) { return t > 0.0 ? pdf(p, t) : 0.0; }, 0.0, x, 1e-12);
      CHECK(std::fabs(part - cdf(p, x)) < 1e-8);
    }
  }
}
