#ifndef MCMW_SERIES_HPP
#define MCMW_SERIES_HPP

#include <string>
#include <vector>

#include "mcmw/params.hpp"

namespace mcmw {

// Truncation orders and the tail-termination threshold for the binomial
// expansions. A nested sum stops once 20 consecutive increments fall below
// tol * max(1, |accumulated value|); hitting a cap first flags divergence.
struct SeriesControl {
  int max_j = 400;
  int max_m = 2500;
  int max_s = 600;
  double tol = 1e-9;
};

struct ExpansionResult {
  std::vector<double> q;     // coefficients q_0 .. q_J
  double partial_sum = 0.0;  // sum of the emitted coefficients
  bool converged = false;    // increments terminated (or exact integer-b cut)
  long depth = 0;            // index of the last coefficient computed
};

/// Coefficients q_j = (-1)^j Gamma(b) / [B(a,b) j! Gamma(b-j) (a+j)] of the
/// cdf expansion. Exactly b terms when b is a positive integer. Computed in
/// log-magnitude + sign form. When `store` is false only the partial sum and
/// depth are tracked (the coefficient array stays empty) so very deep
/// slowly-converging runs do not allocate.
ExpansionResult expansion_coefficients(const McMWParams& p,
                                       const SeriesControl& ctl,
                                       bool store = true);

struct SeriesValue {
  double value = 0.0;
  bool converged = false;
  std::string note;  // where a cap or guard tripped, empty when converged
};

/// F(x) = sum_j q_j G(x)^{c(a+j)} (series route; the incomplete-beta cdf is
/// the reference it is checked against).
SeriesValue cdf_via_expansion(const McMWParams& p, double x,
                              const SeriesControl& ctl);

/// Corrected k-th raw moment series:
///   mu'_k = c/B(a,b) sum_{j,m,s} (-1)^{j+m+s} C(b-1,j) C(c(a+j)-1,m)
///           ((m+1)gamma)^s / s! *
///           [ alpha Gamma(k+beta s+1) / ((m+1)alpha)^{k+beta s+1}
///             + gamma beta Gamma(k+beta(s+1)) / ((m+1)alpha)^{k+beta(s+1)} ]
/// Requires alpha > 0. Inner accumulation in long double with a cancellation
/// guard; any cap/guard trip is reported as non-convergence.
SeriesValue raw_moment_series(const McMWParams& p, int k,
                              const SeriesControl& ctl);

/// The series exactly as printed in the source derivation, with m(alpha+1)
/// and [m(gamma+1)]^s. The m = 0 term divides by zero; with skip_m0 the sum
/// starts at m = 1 (the charitable reading), otherwise the result is
/// non-finite. Kept for demonstrating the discrepancy against the oracle.
SeriesValue raw_moment_literal_form(const McMWParams& p, int k,
                                    const SeriesControl& ctl,
                                    bool skip_m0 = true);

/// Quadrature oracle: integral of x^k f(x) over (0, inf).
double quadrature_moment(const McMWParams& p, int k);

struct RawMomentResult {
  double value = 0.0;           // authoritative value returned to callers
  bool series_converged = false;
  bool used_quadrature = false;
  double series_value = 0.0;    // meaningful only when series_converged
};

/// k-th raw moment: the corrected series when it converges under ctl and
/// alpha > 0, otherwise the quadrature value with the divergence flagged.
RawMomentResult raw_moment(const McMWParams& p, int k, const SeriesControl& ctl);

struct MomentSet {
  double raw[4] = {0, 0, 0, 0};  // mu'_1 .. mu'_4
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // non-excess fourth standardized moment
};

/// Mean/variance/skewness/kurtosis assembled from quadrature-backed raw
/// moments (quadrature is the authoritative route for reported summaries).
MomentSet moment_set(const McMWParams& p, const SeriesControl& ctl);

/// Whether E[e^{tX}] is finite: always for beta > 1; t < b(alpha+gamma) for
/// beta = 1; t < b*alpha for beta < 1 (t <= 0 is always fine).
bool mgf_exists(const McMWParams& p, double t);

struct MgfResult {
  double value = 0.0;
  bool series_converged = false;
  bool used_quadrature = false;
};

/// Moment generating function at t. Corrected series (denominators
/// (m+1)alpha - t, valid for t < alpha) when it converges; quadrature of
/// e^{tx} f(x) otherwise. Throws std::domain_error when the MGF diverges.
MgfResult mgf(const McMWParams& p, double t, const SeriesControl& ctl);

/// Order-statistic density f_{r:n}(x) = F^{r-1} (1-F)^{n-r} f / B(r, n-r+1):
/// the direct product form (the public result).
double order_statistic_pdf(const McMWParams& p, int n, int r, double x);

/// The binomially expanded route sum_j (-1)^j C(n-r, j) F^{r+j-1} f / B(...),
/// kept as the cross-check of the product form.
double order_statistic_pdf_expanded(const McMWParams& p, int n, int r, double x);

/// Integral of x^k f_{r:n}(x) over (0, inf) by quadrature.
double order_statistic_moment(const McMWParams& p, int n, int r, int k);

}  // namespace mcmw

#endif
