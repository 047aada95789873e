#ifndef MCMW_LIKELIHOOD_HPP
#define MCMW_LIKELIHOOD_HPP

#include <array>

#include "mcmw/dataset.hpp"
#include "mcmw/params.hpp"

namespace mcmw {

/// -l(p; d) assembled from the expanded log-likelihood
///   l = n ln c + n ln G(a+b) - n ln G(a) - n ln G(b)
///       + sum ln(alpha + gamma beta x^{beta-1}) - alpha sum x - gamma sum x^beta
///       + (ac-1) sum ln G_i + (b-1) sum ln(1 - G_i^c).
/// Returns +infinity for parameter vectors where any term is undefined, so
/// optimizers can probe freely.
double neg_log_likelihood(const McMWParams& p, const Dataset& d);

/// Analytic gradient of l (not -l) in (alpha, gamma, beta, a, b, c) order.
/// The final terms of the alpha/gamma/beta components carry the factor
/// -c(b-1) (resp. -gamma c(b-1)); central finite differences of the
/// log-likelihood arbitrate the sign convention.
std::array<double, 6> score(const McMWParams& p, const Dataset& d);

}  // namespace mcmw

#endif
