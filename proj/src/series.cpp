#include "mcmw/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mcmw/distribution.hpp"
#include "mcmw/quadrature.hpp"
#include "mcmw/specfun.hpp"

namespace mcmw {

namespace {

constexpr int kConsecutive = 20;       // below-threshold increments to stop
constexpr double kCancelGuard = 1e12;  // max sum|terms| / |sum| tolerated
constexpr double kLnOverflow = 600.0;  // bail before exp() overflows

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

ExpansionResult expansion_coefficients(const McMWParams& p,
                                       const SeriesControl& ctl, bool store) {
  const double a = p.a, b = p.b;
  const double lnB = ln_beta(a, b);
  ExpansionResult out;

  const bool integer_b = (b == std::floor(b));
  const long jmax = integer_b ? static_cast<long>(b) - 1
                              : static_cast<long>(ctl.max_j);

  // q_j = (-1)^j C(b-1,j) / (B(a,b)(a+j)) via the signed-log recurrence
  double lC = 0.0;
  int sign = 1;  // sign of C(b-1, j)
  int below = 0;
  double S = 0.0;
  for (long j = 0;; ++j) {
    const int alt = (j % 2 == 0) ? 1 : -1;
    const double qj = alt * sign * std::exp(lC - lnB) / (a + j);
    S += qj;
    if (store) out.q.push_back(qj);
    out.depth = j;
    if (integer_b && j == jmax) {
      out.converged = true;
      break;
    }
    if (std::fabs(qj) < ctl.tol) {
      if (++below >= kConsecutive) {
        out.converged = true;
        break;
      }
    } else {
      below = 0;
    }
    if (!integer_b && j == jmax) break;  // cap hit: reported unconverged
    const double f = (b - 1.0 - j) / (j + 1.0);
    lC += std::log(std::fabs(f));
    if (f < 0.0) sign = -sign;
  }
  out.partial_sum = S;
  return out;
}

SeriesValue cdf_via_expansion(const McMWParams& p, double x,
                              const SeriesControl& ctl) {
  if (!(x >= 0.0)) throw std::domain_error("cdf_via_expansion: requires x >= 0");
  SeriesValue out;
  if (x == 0.0) {
    out.converged = true;
    return out;
  }
  const double E = base_exponent(p, x);
  const double logG = (E < 0.6931471805599453)
                          ? std::log(-std::expm1(-E))
                          : std::log1p(-std::exp(-E));
  const double a = p.a, b = p.b, c = p.c;
  const double lnB = ln_beta(a, b);
  const bool integer_b = (b == std::floor(b));
  const long jmax = integer_b ? static_cast<long>(b) - 1
                              : static_cast<long>(ctl.max_j);
  double lC = 0.0;
  int sign = 1;  // sign of C(b-1, j)
  int below = 0;
  double S = 0.0;
  for (long j = 0;; ++j) {
    const int alt = (j % 2 == 0) ? 1 : -1;
    const double term =
        alt * sign * std::exp(lC - lnB + c * (a + j) * logG) / (a + j);
    S += term;
    if (integer_b && j == jmax) {
      out.converged = true;
      break;
    }
    if (std::fabs(term) < ctl.tol * std::max(1.0, std::fabs(S))) {
      if (++below >= kConsecutive) {
        out.converged = true;
        break;
      }
    } else {
      below = 0;
    }
    if (!integer_b && j == jmax) {
      out.note = "j cap reached";
      break;
    }
    const double f = (b - 1.0 - j) / (j + 1.0);
    lC += std::log(std::fabs(f));
    if (f < 0.0) sign = -sign;
  }
  out.value = S;
  return out;
}

namespace {

// One engine serves the k-th moment (power = k, shift = 0), the MGF
// (power = 0, shift = t) and the literal as-printed variant. The inner
// exponential-rate pair is
//   corrected: lambda = (m+1) alpha - shift,  mu = (m+1) gamma
//   literal:   lambda = m (alpha+1),          mu = m (gamma+1)
struct TripleSumSpec {
  int power = 1;
  double shift = 0.0;
  bool literal = false;
  bool skip_m0 = false;
};

SeriesValue triple_sum(const McMWParams& p, const SeriesControl& ctl,
                       const TripleSumSpec& spec) {
  SeriesValue out;
  const double al = p.alpha, ga = p.gamma, be = p.beta;
  const double a = p.a, b = p.b, c = p.c;
  const int k = spec.power;
  if (!(al > 0.0)) {
    out.note = "series requires alpha > 0";
    return out;
  }
  const double lpref = std::log(c) - ln_beta(a, b);
  const double pref = std::exp(lpref);
  const double lal = std::log(al);
  const double lga = ga > 0.0 ? std::log(ga) : kNegInf;

  const bool integer_b = (b == std::floor(b));
  const long jcap = integer_b ? static_cast<long>(b) - 1
                              : static_cast<long>(ctl.max_j);

  long double total = 0.0L, abs_total = 0.0L;
  long double Cj = 1.0L;
  int below_j = 0;
  bool j_done = false;

  for (long j = 0; j <= jcap; ++j) {
    if (j > 0) Cj *= static_cast<long double>((b - 1.0 - (j - 1)) / j);
    const double theta = c * (a + j) - 1.0;
    const bool integer_theta = (theta >= 0.0 && theta == std::floor(theta));
    const long mcap = integer_theta ? static_cast<long>(theta)
                                    : static_cast<long>(ctl.max_m);
    // scale reference for the inner thresholds, frozen per j
    const double ref = std::max(1.0, std::fabs(static_cast<double>(total)) * pref);
    const double lCj = std::log(static_cast<double>(fabsl(Cj)));

    long double msum = 0.0L, abs_msum = 0.0L;
    long double Cm = 1.0L;
    int below_m = 0;
    bool m_done = false;

    for (long m = 0; m <= mcap; ++m) {
      if (m > 0) Cm *= static_cast<long double>((theta - (m - 1)) / m);
      if (spec.literal && m == 0) {
        if (spec.skip_m0) {
          if (mcap == 0) m_done = true;
          continue;
        }
        // as printed, the m = 0 denominator is zero
        out.value = std::numeric_limits<double>::infinity();
        out.note = "division by zero at m=0 (as printed)";
        return out;
      }
      const double lam = spec.literal ? m * (al + 1.0) : (m + 1) * al - spec.shift;
      const double mu = spec.literal ? m * (ga + 1.0) : (m + 1) * ga;
      if (!(lam > 0.0)) {
        out.note = "nonpositive exponential rate";
        return out;
      }
      const double llam = std::log(lam);
      const double lmu = mu > 0.0 ? std::log(mu) : kNegInf;
      const double lCm = std::log(static_cast<double>(fabsl(Cm)));
      const double lthresh = std::log(ctl.tol * ref) - (lCm + lCj + lpref);

      long double ssum = 0.0L, abs_ssum = 0.0L;
      if (!(mu > 0.0)) {
        // only s = 0 survives; with gamma = 0 the second part vanishes too
        const double l1 = lal + ln_gamma(k + 1.0) - (k + 1.0) * llam;
        double l2 = kNegInf;
        if (ga > 0.0)
          l2 = lga + std::log(be) + ln_gamma(k + be + 0.0) - (k + be) * llam;
        ssum = std::exp(static_cast<long double>(l1)) +
               std::exp(static_cast<long double>(l2));
        abs_ssum = ssum;
      } else {
        int below_s = 0;
        bool s_done = false;
        for (long s = 0; s <= ctl.max_s; ++s) {
          const double base = s * lmu - ln_gamma(s + 1.0);
          const double p1 = k + be * s + 1.0;
          const double p2 = k + be * (s + 1.0);
          const double l1 = base + lal + ln_gamma(p1) - p1 * llam;
          const double l2 = base + lga + std::log(be) + ln_gamma(p2) - p2 * llam;
          const double lmag = std::max(l1, l2);
          if (lmag > kLnOverflow) {
            out.note = "s-term overflow";
            return out;
          }
          const long double mag = std::exp(static_cast<long double>(l1)) +
                                  std::exp(static_cast<long double>(l2));
          ssum += (s % 2 == 0) ? mag : -mag;
          abs_ssum += mag;
          if (lmag < lthresh) {
            if (++below_s >= kConsecutive) {
              s_done = true;
              break;
            }
          } else {
            below_s = 0;
          }
        }
        if (!s_done) {
          out.note = "s cap reached";
          return out;
        }
        if (abs_ssum > kCancelGuard * std::max(fabsl(ssum), 1e-4000L)) {
          out.note = "s-sum cancellation";
          return out;
        }
      }

      const long double mterm = ((m % 2 == 0) ? 1.0L : -1.0L) * Cm * ssum;
      msum += mterm;
      abs_msum += fabsl(mterm);
      const double inc =
          static_cast<double>(fabsl(mterm)) * std::exp(lCj + lpref);
      if (inc < ctl.tol * ref) {
        if (++below_m >= kConsecutive) {
          m_done = true;
          break;
        }
      } else {
        below_m = 0;
      }
      if (integer_theta && m == mcap) m_done = true;
    }
    if (!m_done) {
      out.note = "m cap reached";
      return out;
    }
    if (abs_msum > kCancelGuard * std::max(fabsl(msum), 1e-4000L)) {
      out.note = "m-sum cancellation";
      return out;
    }

    const long double jterm = ((j % 2 == 0) ? 1.0L : -1.0L) * Cj * msum;
    total += jterm;
    abs_total += fabsl(jterm);
    const double ref_after =
        std::max(1.0, std::fabs(static_cast<double>(total)) * pref);
    if (static_cast<double>(fabsl(jterm)) * pref < ctl.tol * ref_after) {
      if (++below_j >= kConsecutive) {
        j_done = true;
        break;
      }
    } else {
      below_j = 0;
    }
    if (integer_b && j == jcap) j_done = true;
  }
  if (!j_done) {
    out.note = "j cap reached";
    return out;
  }
  if (abs_total > kCancelGuard * std::max(fabsl(total), 1e-4000L)) {
    out.note = "j-sum cancellation";
    return out;
  }
  out.value = static_cast<double>(static_cast<long double>(pref) * total);
  out.converged = true;
  return out;
}

}  // namespace

SeriesValue raw_moment_series(const McMWParams& p, int k,
                              const SeriesControl& ctl) {
  if (k < 1) throw std::invalid_argument("raw_moment_series: requires k >= 1");
  TripleSumSpec spec;
  spec.power = k;
  return triple_sum(p, ctl, spec);
}

SeriesValue raw_moment_literal_form(const McMWParams& p, int k,
                                    const SeriesControl& ctl, bool skip_m0) {
  if (k < 1)
    throw std::invalid_argument("raw_moment_literal_form: requires k >= 1");
  TripleSumSpec spec;
  spec.power = k;
  spec.literal = true;
  spec.skip_m0 = skip_m0;
  return triple_sum(p, ctl, spec);
}

double quadrature_moment(const McMWParams& p, int k) {
  if (k < 0) throw std::invalid_argument("quadrature_moment: requires k >= 0");
  if (k == 0) return expectation(p, [](double) { return 1.0; });
  return expectation(p, [k](double x) { return std::pow(x, k); });
}

RawMomentResult raw_moment(const McMWParams& p, int k,
                           const SeriesControl& ctl) {
  RawMomentResult r;
  if (p.alpha > 0.0) {
    const SeriesValue sv = raw_moment_series(p, k, ctl);
    if (sv.converged) {
      r.series_converged = true;
      r.series_value = sv.value;
      r.value = sv.value;
      return r;
    }
  }
  r.used_quadrature = true;
  r.value = quadrature_moment(p, k);
  return r;
}

MomentSet moment_set(const McMWParams& p, const SeriesControl& ctl) {
  (void)ctl;  // quadrature is the authoritative route for reported summaries
  MomentSet ms;
  for (int k = 1; k <= 4; ++k) ms.raw[k - 1] = quadrature_moment(p, k);
  const double m1 = ms.raw[0], m2 = ms.raw[1], m3 = ms.raw[2], m4 = ms.raw[3];
  ms.mean = m1;
  ms.variance = m2 - m1 * m1;
  const double sd = std::sqrt(ms.variance);
  ms.skewness = (m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1) / (sd * sd * sd);
  ms.kurtosis =
      (m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1) /
      (ms.variance * ms.variance);
  return ms;
}

bool mgf_exists(const McMWParams& p, double t) {
  if (t <= 0.0) return true;
  if (p.beta > 1.0) return true;
  // survival tail ~ (c e^{-E})^b / (b B(a,b)); the decay rate carries b
  if (p.beta == 1.0) return t < p.b * (p.alpha + p.gamma);
  return t < p.b * p.alpha;
}

MgfResult mgf(const McMWParams& p, double t, const SeriesControl& ctl) {
  MgfResult r;
  if (t == 0.0) {
    r.value = 1.0;
    r.series_converged = true;
    return r;
  }
  if (!mgf_exists(p, t))
    throw std::domain_error("mgf: E[e^{tX}] diverges at this t");
  if (p.alpha > 0.0 && t < p.alpha) {
    TripleSumSpec spec;
    spec.power = 0;
    spec.shift = t;
    const SeriesValue sv = triple_sum(p, ctl, spec);
    if (sv.converged) {
      r.value = sv.value;
      r.series_converged = true;
      return r;
    }
  }
  r.used_quadrature = true;
  r.value = expectation(p, [t](double x) { return std::exp(t * x); });
  return r;
}

double order_statistic_pdf(const McMWParams& p, int n, int r, double x) {
  if (n < 1 || r < 1 || r > n)
    throw std::invalid_argument("order_statistic_pdf: requires 1 <= r <= n");
  if (!(x > 0.0))
    throw std::domain_error("order_statistic_pdf: requires x > 0");
  const double lp = log_pdf(p, x);
  if (!std::isfinite(lp)) return 0.0;
  const double F = cdf(p, x);
  const double S = survival(p, x);
  double lv =
      -ln_beta(static_cast<double>(r), static_cast<double>(n - r + 1)) + lp;
  if (r > 1) {
    if (F <= 0.0) return 0.0;
    lv += (r - 1) * std::log(F);
  }
  if (n - r > 0) {
    if (S <= 0.0) return 0.0;
    lv += (n - r) * std::log(S);
  }
  return std::exp(lv);
}

double order_statistic_pdf_expanded(const McMWParams& p, int n, int r,
                                    double x) {
  if (n < 1 || r < 1 || r > n)
    throw std::invalid_argument(
        "order_statistic_pdf_expanded: requires 1 <= r <= n");
  if (!(x > 0.0))
    throw std::domain_error("order_statistic_pdf_expanded: requires x > 0");
  const double f = pdf(p, x);
  const double F = cdf(p, x);
  const double lnBrn =
      ln_beta(static_cast<double>(r), static_cast<double>(n - r + 1));
  double sum = 0.0;
  double binom = 1.0;  // C(n-r, j)
  for (int j = 0; j <= n - r; ++j) {
    if (j > 0) binom *= static_cast<double>(n - r - j + 1) / j;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * std::pow(F, r + j - 1);
  }
  return std::exp(-lnBrn) * sum * f;
}

double order_statistic_moment(const McMWParams& p, int n, int r, int k) {
  const double lnBrn =
      ln_beta(static_cast<double>(r), static_cast<double>(n - r + 1));
  return expectation(p, [&](double x) {
    const double F = cdf(p, x);
    const double S = survival(p, x);
    double w = std::exp(-lnBrn);
    if (r > 1) w *= std::pow(F, r - 1);
    if (n - r > 0) w *= std::pow(S, n - r);
    return w * std::pow(x, k);
  });
}

}  // namespace mcmw
