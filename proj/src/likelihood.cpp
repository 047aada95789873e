#include "mcmw/likelihood.hpp"

#include <cmath>
#include <limits>

#include "mcmw/specfun.hpp"

namespace mcmw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// per-observation pieces shared by the likelihood and the score
struct Obs {
  double x, xb, xbm1;   // x, x^beta, x^{beta-1}
  double E;             // alpha x + gamma x^beta
  double rate;          // alpha + gamma beta x^{beta-1}
  double logG;          // ln(1 - e^{-E})
  double log1mGc;       // ln(1 - G^c)
  double ln_neg_logG;   // ln(-ln G), ~ -E for large E
};

bool eval_obs(const McMWParams& p, double x, Obs& o) {
  o.x = x;
  o.xb = std::pow(x, p.beta);
  o.xbm1 = std::pow(x, p.beta - 1.0);
  o.E = p.alpha * x + p.gamma * o.xb;
  o.rate = p.alpha + p.gamma * p.beta * o.xbm1;
  if (!(o.E > 0.0) || !(o.rate > 0.0) || !std::isfinite(o.E)) return false;
  if (o.E > 700.0) {
    o.logG = 0.0;
    o.log1mGc = std::log(p.c) - o.E;
    o.ln_neg_logG = -o.E;
    return true;
  }
  o.logG = (o.E < 0.6931471805599453) ? std::log(-std::expm1(-o.E))
                                      : std::log1p(-std::exp(-o.E));
  const double one_mGc = -std::expm1(p.c * o.logG);
  if (!(one_mGc > 0.0)) return false;
  o.log1mGc = std::log(one_mGc);
  o.ln_neg_logG = (o.E > 40.0) ? -o.E : std::log(-o.logG);
  return true;
}

}  // namespace

double neg_log_likelihood(const McMWParams& p, const Dataset& d) {
  if (!constraint_violations(p.alpha, p.gamma, p.beta, p.a, p.b, p.c).empty())
    return kInf;
  const double n = static_cast<double>(d.size());
  double ll = n * std::log(p.c) + n * ln_gamma(p.a + p.b) -
              n * ln_gamma(p.a) - n * ln_gamma(p.b);
  double sum_lograte = 0.0, sum_x = 0.0, sum_xb = 0.0, sum_logG = 0.0,
         sum_log1mGc = 0.0;
  Obs o;
  for (double x : d.values()) {
    if (!eval_obs(p, x, o)) return kInf;
    sum_lograte += std::log(o.rate);
    sum_x += o.x;
    sum_xb += o.xb;
    sum_logG += o.logG;
    sum_log1mGc += o.log1mGc;
  }
  ll += sum_lograte - p.alpha * sum_x - p.gamma * sum_xb +
        (p.a * p.c - 1.0) * sum_logG + (p.b - 1.0) * sum_log1mGc;
  return std::isfinite(ll) ? -ll : kInf;
}

std::array<double, 6> score(const McMWParams& p, const Dataset& d) {
  const double n = static_cast<double>(d.size());
  const double ac1 = p.a * p.c - 1.0;
  const double b1 = p.b - 1.0;
  double d_alpha = 0.0, d_gamma = 0.0, d_beta = 0.0;
  double sum_logG = 0.0, sum_log1mGc = 0.0, sum_ratioGc = 0.0;
  Obs o;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double x : d.values()) {
    if (!eval_obs(p, x, o)) return {nan, nan, nan, nan, nan, nan};
    const double logx = std::log(x);
    // w  = e^{-E} / G
    // t2 = e^{-E} G^{c-1} / (1 - G^c), -> 1/c as E -> inf
    // rc = G^c ln G / (1 - G^c),       -> -1/c as E -> inf
    const double w = std::exp(-o.E - o.logG);
    const double t2 = std::exp(-o.E + (p.c - 1.0) * o.logG - o.log1mGc);
    const double rc =
        -std::exp(p.c * o.logG - o.log1mGc + o.ln_neg_logG);

    d_alpha += 1.0 / o.rate - o.x + ac1 * o.x * w - p.c * b1 * o.x * t2;
    d_gamma += p.beta * o.xbm1 / o.rate - o.xb + ac1 * o.xb * w -
               p.c * b1 * o.xb * t2;
    d_beta += p.gamma * o.xbm1 * (p.beta * logx + 1.0) / o.rate -
              p.gamma * o.xb * logx + p.gamma * ac1 * o.xb * logx * w -
              p.gamma * p.c * b1 * o.xb * logx * t2;

    sum_logG += o.logG;
    sum_log1mGc += o.log1mGc;
    sum_ratioGc += rc;
  }
  const double d_a = n * digamma(p.a + p.b) - n * digamma(p.a) + p.c * sum_logG;
  const double d_b = n * digamma(p.a + p.b) - n * digamma(p.b) + sum_log1mGc;
  const double d_c = n / p.c + p.a * sum_logG - b1 * sum_ratioGc;
  return {d_alpha, d_gamma, d_beta, d_a, d_b, d_c};
}

}  // namespace mcmw
