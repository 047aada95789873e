#ifndef MCMW_QUADRATURE_HPP
#define MCMW_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <string>

#include "mcmw/params.hpp"

namespace mcmw {

struct QuadratureError : std::runtime_error {
  double error_estimate;
  QuadratureError(const std::string& what, double est)
      : std::runtime_error(what), error_estimate(est) {}
};

/// E[h(X)] = integral of h(x) f(x) dx over (0, inf), with the domain split at
/// the quantiles {0.5, 0.9, 0.99, 1 - 1e-8} to localize the possible x->0
/// integrable singularity (beta < 1) and the long tail. Absolute tolerance
/// 1e-10; throws QuadratureError with the achieved estimate on failure.
double expectation(const McMWParams& p, const std::function<double(double)>& h);

/// Integral of g over (lo, hi), 0 <= lo < hi <= inf (general-purpose helper
/// used by the expectation splitting and by test oracles).
double integrate(const std::function<double(double)>& g, double lo, double hi,
                 double tol = 1e-12);

}  // namespace mcmw

#endif
