#ifndef MCMW_SPECFUN_HPP
#define MCMW_SPECFUN_HPP

// Self-contained special-function kernel: log-gamma, digamma, log-beta,
// regularized incomplete beta ratio and its inverse. All functions are pure
// and thread-safe; domain violations throw std::domain_error.

namespace mcmw {

/// ln Gamma(x) for x > 0 (Lanczos approximation, g=7, 9 coefficients).
double ln_gamma(double x);

/// psi(x) = d/dx ln Gamma(x) for x > 0 (recurrence below 6, then the
/// Bernoulli asymptotic series).
double digamma(double x);

/// ln B(a,b) = ln_gamma(a) + ln_gamma(b) - ln_gamma(a+b), a,b > 0.
double ln_beta(double a, double b);

/// Regularized incomplete beta ratio I_y(a,b) for y in [0,1], a,b > 0.
/// Continued-fraction evaluation (modified Lentz) with the prefactor
/// assembled in log space; the complement split at y = (a+1)/(a+b+2).
double reg_inc_beta(double y, double a, double b);

/// Inverse of reg_inc_beta in y for fixed (a,b): returns y with
/// I_y(a,b) = u to within 1e-12 in u-space. Endpoints map exactly.
/// Bracketed bisection refined by safeguarded Newton steps.
double inv_reg_inc_beta(double u, double a, double b);

// Inverse with the solution kept on its representable side: the root is
// small_side when !complemented, and 1 - small_side otherwise. For shapes
// concentrating mass at both endpoints the upper root can be closer to 1
// than double epsilon, so consumers needing 1-y must use small_side.
struct BetaInverse {
  double small_side = 0.0;
  bool complemented = false;
  double value() const { return complemented ? 1.0 - small_side : small_side; }
};
BetaInverse inv_reg_inc_beta_ex(double u, double a, double b);

}  // namespace mcmw

#endif
