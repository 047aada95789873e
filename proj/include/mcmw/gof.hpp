#ifndef MCMW_GOF_HPP
#define MCMW_GOF_HPP

#include <string>
#include <vector>

#include "mcmw/dataset.hpp"
#include "mcmw/fit.hpp"
#include "mcmw/params.hpp"

namespace mcmw {

/// Two-sided one-sample Kolmogorov-Smirnov distance between the empirical
/// cdf of d and the fitted cdf:
///   D_n = max_i max( i/n - F(x_(i)), F(x_(i)) - (i-1)/n ).
double ks_statistic(const McMWParams& p, const Dataset& d);

/// AIC = 2k - 2l.
double aic(int k, double loglik);

/// AICC = AIC + 2k(k+1)/(n-k-1); requires n > k+1.
double aicc(int k, double loglik, int n);

struct ModelComparison {
  std::string model_name;
  int k = 0;                 // free-parameter count
  double neg2_loglik = 0.0;  // -2l
  double aic = 0.0;
  double aicc = 0.0;
  double ks = 0.0;
  bool fit_ok = false;
  std::string error;           // set when the fit failed
  FitResult fit;               // the underlying fit when fit_ok
};

/// Fits each model and assembles the comparison table sorted by AIC
/// ascending. Per-model failures are recorded in the row, not thrown.
std::vector<ModelComparison> compare(const Dataset& d,
                                     const std::vector<Submodel>& models,
                                     const FitOptions& opts = {});

}  // namespace mcmw

#endif
