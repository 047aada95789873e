#ifndef MCMW_FIT_HPP
#define MCMW_FIT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcmw/dataset.hpp"
#include "mcmw/likelihood.hpp"
#include "mcmw/params.hpp"

namespace mcmw {

// Dense row-major square matrix, just big enough for k x k information work.
struct Matrix {
  int n = 0;
  std::vector<double> v;
  Matrix() = default;
  explicit Matrix(int dim) : n(dim), v(static_cast<std::size_t>(dim) * dim, 0.0) {}
  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
};

/// Inverse by Gaussian elimination with partial pivoting. Throws
/// std::runtime_error (with a condition estimate in the message) when the
/// matrix is numerically singular.
Matrix invert(const Matrix& m);

/// Standard normal quantile (Acklam's approximation polished by one Halley
/// step on erfc); |error| < 1e-12 over (1e-300, 1-1e-16).
double normal_quantile(double u);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool valid = false;  // false when the variance estimate was negative
};

struct FitOptions {
  int starts = 20;
  std::uint64_t seed = 20260809;
  int nm_max_iter = 2000;
  double score_tol_per_obs = 1e-4;  // converged when max|score| < tol * n
};

struct StartDiagnostic {
  int index = 0;
  std::vector<double> start;  // free parameters, natural scale
  double neg_loglik = 0.0;
  bool finished = false;
};

struct FitResult {
  Submodel model = Submodel::McMW;
  McMWParams params;
  double neg_loglik = 0.0;
  bool converged = false;
  int iterations = 0;
  double score_max_norm = 0.0;
  std::array<bool, 6> fixed_mask{};
  std::vector<int> free_indices;
  Matrix info;        // observed information over the free parameters
  Matrix cov;         // its inverse (empty when information was singular)
  bool cov_valid = false;
  std::string cov_note;
  std::vector<double> std_errors;              // per free parameter
  std::vector<ConfidenceInterval> conf_intervals;
  double ci_level = 0.95;
  std::vector<StartDiagnostic> start_diagnostics;
};

/// Negative log-likelihood for a submodel's free-parameter vector.
double neg_log_likelihood_free(const SubmodelSpec& spec,
                               const std::vector<double>& free,
                               const Dataset& d);

/// Maximum-likelihood fit: log-space multi-start Nelder-Mead followed by a
/// BFGS polish on the analytic score. Deterministic given opts.seed.
/// Throws std::runtime_error when every start fails to produce a finite
/// objective.
FitResult fit_mle(const Dataset& d, Submodel model, const FitOptions& opts = {},
                  double ci_level = 0.95);

/// Observed information (negative Hessian of the log-likelihood) over the
/// free parameters, by central differences of the analytic score in the
/// natural parameter scale, symmetrized.
Matrix observed_information(const McMWParams& p, const Dataset& d,
                            const SubmodelSpec& spec);

struct CovarianceResult {
  Matrix cov;
  std::vector<double> std_errors;
  std::vector<ConfidenceInterval> conf_intervals;
  bool valid = false;
  std::string note;
};

/// cov = info^{-1}; std errors from the diagonal; Wald intervals
/// estimate +- z * se at the given level. A negative diagonal entry
/// suppresses that parameter's interval rather than failing the call.
CovarianceResult covariance_and_ci(const Matrix& info,
                                   const std::vector<double>& estimates,
                                   double level);

}  // namespace mcmw

#endif
