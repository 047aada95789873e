#ifndef MCMW_OPTIMIZE_HPP
#define MCMW_OPTIMIZE_HPP

#include <functional>
#include <vector>

namespace mcmw {

using ObjectiveFn = std::function<double(const std::vector<double>&)>;
using GradientFn =
    std::function<std::vector<double>(const std::vector<double>&)>;

struct OptimResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

// The simplex phase only needs to land in the right basin; the gradient
// polish supplies the final precision.
struct NelderMeadOptions {
  int max_iter = 2000;
  double f_tol = 1e-9;    // relative spread of simplex values
  double x_tol = 1e-6;    // simplex diameter
  double init_step = 0.25;
};

/// Minimizes f starting from x0 (any dimension >= 1). The objective may
/// return +infinity outside its domain.
OptimResult nelder_mead(const ObjectiveFn& f, const std::vector<double>& x0,
                        const NelderMeadOptions& opt = {});

struct BfgsOptions {
  int max_iter = 300;
  double g_tol = 1e-9;    // max-norm of the gradient
  double f_tol = 1e-13;   // relative objective change
};

/// BFGS with backtracking Armijo line search; grad returns the gradient of f.
OptimResult bfgs(const ObjectiveFn& f, const GradientFn& grad,
                 const std::vector<double>& x0, const BfgsOptions& opt = {});

}  // namespace mcmw

#endif
