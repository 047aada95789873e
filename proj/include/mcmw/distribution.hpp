#ifndef MCMW_DISTRIBUTION_HPP
#define MCMW_DISTRIBUTION_HPP

#include <cstdint>
#include <vector>

#include "mcmw/params.hpp"

namespace mcmw {

// All evaluation routines are pure; parameter objects are immutable after
// validation. Densities are assembled in log space; see log_pdf.

/// Base-distribution cdf G(x) = 1 - exp(-alpha x - gamma x^beta), x >= 0.
double base_cdf(const McMWParams& p, double x);

/// Exponent of the base survival: E(x) = alpha x + gamma x^beta.
double base_exponent(const McMWParams& p, double x);

/// ln f(x) for x > 0. Returns -infinity where the density underflows to 0.
double log_pdf(const McMWParams& p, double x);

/// f(x) for x > 0; 0 where the log-density underflows.
double pdf(const McMWParams& p, double x);

/// F(x) = I_{G(x)^c}(a, b) for x >= 0.
double cdf(const McMWParams& p, double x);

/// 1 - F(x), computed through the swapped-argument incomplete-beta
/// complement so the far tail does not cancel.
double survival(const McMWParams& p, double x);

/// h(x) = f(x) / (1 - F(x)), x > 0.
double hazard(const McMWParams& p, double x);

/// tau(x) = f(x) / F(x), x > 0.
double reversed_hazard(const McMWParams& p, double x);

/// Quantile x_q solving alpha x + gamma x^beta = -ln(1 - Q_{(a,b)}(u)^{1/c}),
/// u in (0,1). Bracketing plus safeguarded Newton on the increasing left side.
double quantile(const McMWParams& p, double u);

/// n i.i.d. inverse-transform draws, deterministic given the seed.
std::vector<double> sample(const McMWParams& p, int n, std::uint64_t seed);

}  // namespace mcmw

#endif
