#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "mcmw/builtin_data.hpp"
#include "mcmw/distribution.hpp"
#include "mcmw/fit.hpp"

using namespace mcmw;

namespace {
const McMWParams kMcmwRef{0.599, 1.209, 1.063, 0.091, 0.090, 9.169};
// the application's MW estimates, role-corrected: 0.492 multiplies x^beta
const McMWParams kMwRef{0.043, 0.492, 0.619, 1.0, 1.0, 1.0};

McMWParams random_interior(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.3, 4.0);
  return {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}
}  // namespace

TEST_CASE("neg_log_likelihood reference values on the builtin data") {
  const auto& d = builtin_failure_times();
  // reported 102.320; the printed MW row swaps the coefficient/exponent
  // labels, so the role-corrected reading reproduces it
  CHECK(neg_log_likelihood(kMwRef, d) == doctest::Approx(102.320).epsilon(1e-4));
  // reported 98.404; the printed estimates give 98.4254 (within 0.05)
  CHECK(std::fabs(neg_log_likelihood(kMcmwRef, d) - 98.404) < 0.05);
  CHECK(neg_log_likelihood(kMcmwRef, d) ==
        doctest::Approx(98.4251752488797).epsilon(1e-9));
}

TEST_CASE("neg_log_likelihood: single observation and +inf fence") {
  const Dataset one({1.0});
  const McMWParams expo{1.0, 0.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(neg_log_likelihood(expo, one) == doctest::Approx(1.0).epsilon(1e-12));
  const McMWParams bad{0.0, 0.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(std::isinf(neg_log_likelihood(bad, one)));
}

TEST_CASE("two likelihood routes agree") {
  const auto& d = builtin_failure_times();
  std::mt19937_64 rng(2);
  for (int i = 0; i < 12; ++i) {
    const auto p = random_interior(rng);
    double sum = 0.0;
    for (double x : d.values()) sum -= log_pdf(p, x);
    const double direct = neg_log_likelihood(p, d);
    CHECK(std::fabs(direct - sum) < 1e-10 * std::max(1.0, std::fabs(sum)));
  }
}

TEST_CASE("score matches finite differences of the log-likelihood") {
  const auto& d = builtin_failure_times();
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto p = random_interior(rng);
    const auto g = score(p, d);
    auto arr = p.as_array();
    for (int i = 0; i < 6; ++i) {
      const double h = 1e-6 * std::max(1.0, std::fabs(arr[i]));
      auto hi = arr, lo = arr;
      hi[i] += h;
      lo[i] -= h;
      const double fd = (-neg_log_likelihood(McMWParams::from_array(hi), d) +
                         neg_log_likelihood(McMWParams::from_array(lo), d)) /
                        (2.0 * h);
      CHECK(std::fabs(g[i] - fd) <=
            1e-6 * std::max(1.0, std::fabs(fd)) + 1e-7);
    }
  }
}

TEST_CASE("score digamma symmetry between the a and b components") {
  const auto& d = builtin_failure_times();
  const McMWParams p{1.0, 1.0, 1.0, 1.7, 1.7, 1.0};
  const auto g = score(p, d);
  // at a = b the digamma parts coincide; the components differ only through
  // the data sums (assembled here in the stable expm1 forms)
  double sum_logG = 0.0, sum_log1mGc = 0.0;
  for (double x : d.values()) {
    const double E = p.alpha * x + p.gamma * std::pow(x, p.beta);
    const double lG = std::log1p(-std::exp(-E));
    sum_logG += lG;
    sum_log1mGc += std::log(-std::expm1(p.c * lG));
  }
  CHECK(g[3] - p.c * sum_logG == doctest::Approx(g[4] - sum_log1mGc).epsilon(1e-9));
}

TEST_CASE("MW fit reproduces the reference application") {
  const auto& d = builtin_failure_times();
  const auto fit = fit_mle(d, Submodel::MW);
  CHECK(fit.converged);
  CHECK(fit.neg_loglik > 102.27);
  CHECK(fit.neg_loglik < 102.37);
  CHECK(std::fabs(fit.params.alpha - 0.043) < 0.05);
  CHECK(std::fabs(fit.params.gamma - 0.492) < 0.05);
  CHECK(std::fabs(fit.params.beta - 0.619) < 0.05);
  CHECK(fit.score_max_norm < 1e-3);
  // fit never exceeds the -l of any evaluated start
  for (const auto& s : fit.start_diagnostics)
    CHECK(fit.neg_loglik <= s.neg_loglik + 1e-9);
}

TEST_CASE("McMW fit beats the reference -loglik") {
  const auto& d = builtin_failure_times();
  const auto fit = fit_mle(d, Submodel::McMW);
  CHECK(fit.converged);
  CHECK(fit.neg_loglik <= 98.45);
  CHECK(fit.score_max_norm < 1e-3);
}

TEST_CASE("submodel nesting: richer optima are never worse") {
  const auto& d = builtin_failure_times();
  const auto w = fit_mle(d, Submodel::Weibull);
  const auto mw = fit_mle(d, Submodel::MW);
  const auto bmw = fit_mle(d, Submodel::BMW);
  const auto mc = fit_mle(d, Submodel::McMW);
  CHECK(mw.neg_loglik <= w.neg_loglik + 1e-6);
  CHECK(bmw.neg_loglik <= mw.neg_loglik + 1e-6);
  CHECK(mc.neg_loglik <= bmw.neg_loglik + 1e-6);
}

TEST_CASE("fit determinism under a fixed start spec") {
  const auto& d = builtin_failure_times();
  FitOptions o;
  o.starts = 6;
  const auto f1 = fit_mle(d, Submodel::MW, o);
  const auto f2 = fit_mle(d, Submodel::MW, o);
  CHECK(f1.neg_loglik == f2.neg_loglik);
  CHECK(f1.params.alpha == f2.params.alpha);
}

TEST_CASE("MW fit on simulated data recovers the truth") {
  // average over replicates: a single n=5000 draw leaves ~0.06 sampling
  // noise on each estimate, right at the 10% line
  const McMWParams truth{1.0, 1.0, 2.0, 1.0, 1.0, 1.0};
  FitOptions o;
  o.starts = 6;
  double a_bar = 0.0, g_bar = 0.0, b_bar = 0.0;
  const int reps = 5;
  for (int r = 0; r < reps; ++r) {
    const Dataset sim(sample(truth, 5000, 424242 + static_cast<unsigned>(r)));
    const auto fit = fit_mle(sim, Submodel::MW, o);
    CHECK(fit.converged);
    a_bar += fit.params.alpha / reps;
    g_bar += fit.params.gamma / reps;
    b_bar += fit.params.beta / reps;
  }
  CHECK(std::fabs(a_bar - 1.0) < 0.1);
  CHECK(std::fabs(g_bar - 1.0) < 0.1);
  CHECK(std::fabs(b_bar - 2.0) < 0.2);
}

TEST_CASE("fit_mle rejects n < k") {
  const Dataset tiny({0.5, 1.0, 1.5, 2.0, 2.5});
  CHECK_THROWS_AS(fit_mle(tiny, Submodel::McMW), std::invalid_argument);
}

TEST_CASE("observed information: symmetry and the exponential closed form") {
  const auto& d = builtin_failure_times();
  const auto spec = submodel_spec(Submodel::McMW);
  // raw asymmetry of the unsymmetrized differences is small; the returned
  // matrix is exactly symmetric
  const auto H = observed_information(kMcmwRef, d, spec);
  for (int i = 0; i < H.n; ++i)
    for (int j = 0; j < H.n; ++j)
      CHECK(H.at(i, j) == H.at(j, i));

  // exponential submodel: information ~ n / alpha^2 at the MLE
  const McMWParams etruth{0.8, 0.0, 1.0, 1.0, 1.0, 1.0};
  const Dataset sim(sample(etruth, 4000, 7));
  const auto efit = fit_mle(sim, Submodel::Exponential);
  const auto espec = submodel_spec(Submodel::Exponential);
  const auto I = observed_information(efit.params, sim, espec);
  REQUIRE(I.n == 1);
  const double expect = sim.size() / (efit.params.alpha * efit.params.alpha);
  CHECK(std::fabs(I.at(0, 0) - expect) < 0.05 * expect);
}

TEST_CASE("covariance_and_ci: identity information recovers z") {
  Matrix info(2);
  info.at(0, 0) = info.at(1, 1) = 1.0;
  const auto r = covariance_and_ci(info, {0.0, 0.0}, 0.95);
  REQUIRE(r.valid);
  CHECK(r.std_errors[0] == doctest::Approx(1.0));
  CHECK(r.conf_intervals[0].lo == doctest::Approx(-1.959964).epsilon(1e-4));
  CHECK(r.conf_intervals[0].hi == doctest::Approx(1.959964).epsilon(1e-4));
}

TEST_CASE("covariance_and_ci: singular information is reported, not thrown") {
  Matrix info(2);
  info.at(0, 0) = 1.0;
  info.at(0, 1) = info.at(1, 0) = 1.0;
  info.at(1, 1) = 1.0;  // rank 1
  const auto r = covariance_and_ci(info, {0.0, 0.0}, 0.95);
  CHECK_FALSE(r.valid);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("normal_quantile sanity") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845400545).epsilon(1e-9));
  CHECK(normal_quantile(0.025) == doctest::Approx(-1.9599639845400545).epsilon(1e-9));
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
}

TEST_CASE("matrix inversion round trip") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix A(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) A.at(i, j) = u(rng);
    A.at(i, i) += 5.0;  // keep it comfortably nonsingular
  }
  const auto Ainv = invert(A);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += A.at(i, k) * Ainv.at(k, j);
      CHECK(std::fabs(s - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("exponential Wald intervals achieve nominal coverage") {
  // 500 replicates of n=200 through the full fit + information + CI path
  const double truth = 1.7;
  const McMWParams tp{truth, 0.0, 1.0, 1.0, 1.0, 1.0};
  FitOptions o;
  o.starts = 3;
  int covered = 0;
  const int reps = 500;
  for (int r = 0; r < reps; ++r) {
    const Dataset sim(sample(tp, 200, 1000 + static_cast<unsigned>(r)));
    const auto fit = fit_mle(sim, Submodel::Exponential, o);
    REQUIRE(fit.cov_valid);
    REQUIRE(fit.conf_intervals.size() == 1);
    const auto& ci = fit.conf_intervals[0];
    REQUIRE(ci.valid);
    if (ci.lo <= truth && truth <= ci.hi) ++covered;
  }
  const double coverage = static_cast<double>(covered) / reps;
  CHECK(coverage >= 0.90);
  CHECK(coverage <= 0.99);
}
