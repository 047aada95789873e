#include "mcmw/distribution.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "mcmw/specfun.hpp"

namespace mcmw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonneg(double x, const char* fn) {
  if (!(x >= 0.0)) throw std::domain_error(std::string(fn) + ": requires x >= 0");
}

void require_pos(double x, const char* fn) {
  if (!(x > 0.0)) throw std::domain_error(std::string(fn) + ": requires x > 0");
}

// ln G(x) = ln(1 - e^{-E}); the two forms cover both ends accurately.
double log_G_from_E(double E) {
  if (E <= 0.0) return -kInf;
  if (E < 0.6931471805599453) return std::log(-std::expm1(-E));
  return std::log1p(-std::exp(-E));
}

// ln(1 - G^c) computed from c * ln G. For very large E the intermediate
// e^{-E} underflows, so switch to the asymptotic ln c - E.
double log_1mGc_from_E(double E, double c, double logG) {
  if (E > 700.0) return std::log(c) - E;
  const double t = c * logG;  // < 0
  // 1 - G^c = -expm1(c ln G)
  return std::log(-std::expm1(t));
}

}  // namespace

double base_exponent(const McMWParams& p, double x) {
  return p.alpha * x + p.gamma * std::pow(x, p.beta);
}

double base_cdf(const McMWParams& p, double x) {
  require_nonneg(x, "base_cdf");
  if (x == 0.0) return 0.0;
  return -std::expm1(-base_exponent(p, x));
}

double log_pdf(const McMWParams& p, double x) {
  require_pos(x, "log_pdf");
  const double E = base_exponent(p, x);
  const double rate = p.alpha + p.gamma * p.beta * std::pow(x, p.beta - 1.0);
  const double logG = log_G_from_E(E);
  const double log1mGc = log_1mGc_from_E(E, p.c, logG);
  double v = std::log(p.c) - ln_beta(p.a, p.b) + std::log(rate) - E +
             (p.a * p.c - 1.0) * logG + (p.b - 1.0) * log1mGc;
  if (std::isnan(v)) v = -kInf;  // underflowed factor combinations
  return v;
}

double pdf(const McMWParams& p, double x) {
  const double lp = log_pdf(p, x);
  return std::isfinite(lp) ? std::exp(lp) : 0.0;
}

double cdf(const McMWParams& p, double x) {
  require_nonneg(x, "cdf");
  if (x == 0.0) return 0.0;
  const double E = base_exponent(p, x);
  const double logG = log_G_from_E(E);
  const double Gc = std::exp(p.c * logG);
  if (Gc <= 0.5) return reg_inc_beta(Gc, p.a, p.b);
  // far tail: G^c is too close to 1 to carry the answer, but its complement
  // is exact in small form
  const double one_mGc = std::exp(log_1mGc_from_E(E, p.c, logG));
  return 1.0 - reg_inc_beta(one_mGc, p.b, p.a);
}

double survival(const McMWParams& p, double x) {
  require_nonneg(x, "survival");
  if (x == 0.0) return 1.0;
  const double E = base_exponent(p, x);
  const double logG = log_G_from_E(E);
  const double Gc = std::exp(p.c * logG);
  // near field: G^c carries the precision; far tail: its complement does,
  // through the symmetry 1 - I_y(a,b) = I_{1-y}(b,a)
  if (Gc <= 0.5) return 1.0 - reg_inc_beta(Gc, p.a, p.b);
  const double one_minus_Gc = std::exp(log_1mGc_from_E(E, p.c, logG));
  return reg_inc_beta(one_minus_Gc, p.b, p.a);
}

double hazard(const McMWParams& p, double x) {
  require_pos(x, "hazard");
  const double s = survival(p, x);
  if (!(s > 0.0)) {
    throw std::overflow_error("hazard: survival underflowed to 0");
  }
  return pdf(p, x) / s;
}

double reversed_hazard(const McMWParams& p, double x) {
  require_pos(x, "reversed_hazard");
  const double F = cdf(p, x);
  if (!(F > 0.0)) throw std::domain_error("reversed_hazard: cdf is 0 at x");
  return pdf(p, x) / F;
}

double quantile(const McMWParams& p, double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("quantile: requires u in (0,1)");
  const BetaInverse inv = inv_reg_inc_beta_ex(u, p.a, p.b);
  // target T = -ln(1 - Q^{1/c}) with Q the beta-inverse root. ln Q comes
  // from whichever side of the root is representable: for roots near 1 the
  // complement z = 1-Q is exact and ln Q = log1p(-z).
  const double lnQ = inv.complemented ? std::log1p(-inv.small_side)
                                      : std::log(inv.small_side);
  const double T = -std::log(-std::expm1(lnQ / p.c));

  // solve alpha x + gamma x^beta = T; closed forms when one term is absent
  if (p.gamma == 0.0) return T / p.alpha;
  if (p.alpha == 0.0) return std::pow(T / p.gamma, 1.0 / p.beta);

  double hi = 1.0;
  while (base_exponent(p, hi) < T) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("quantile: bracket overflow");
  }
  double lo = 0.0, x = std::min(hi, std::max(1e-300, T / (p.alpha + p.gamma)));
  for (int it = 0; it < 200; ++it) {
    const double g = base_exponent(p, x) - T;
    if (g < 0.0)
      lo = x;
    else
      hi = x;
    if (std::fabs(g) < 1e-13 * (1.0 + T) || (hi - lo) < 1e-15 * hi) break;
    const double d = p.alpha + p.gamma * p.beta * std::pow(x, p.beta - 1.0);
    double next = x - g / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

std::vector<double> sample(const McMWParams& p, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: requires n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // uniform on the open interval (0,1)
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    out.push_back(quantile(p, u));
  }
  return out;
}

}  // namespace mcmw
