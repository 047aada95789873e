#ifndef MCMW_PARAMS_HPP
#define MCMW_PARAMS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mcmw {

// Six-parameter vector of the generalized modified-Weibull family.
// Constraints: alpha >= 0, gamma >= 0, alpha + gamma > 0,
//              beta > 0, a > 0, b > 0, c > 0.
struct McMWParams {
  double alpha = 1.0;  // scale of the linear exponent term
  double gamma = 1.0;  // coefficient of the power term x^beta
  double beta = 1.0;   // power exponent
  double a = 1.0;      // first beta-ratio shape
  double b = 1.0;      // second beta-ratio shape
  double c = 1.0;      // exponentiation shape

  std::array<double, 6> as_array() const { return {alpha, gamma, beta, a, b, c}; }
  static McMWParams from_array(const std::array<double, 6>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
};

// Three-parameter base distribution (a = b = c = 1 specialization).
struct MWParams {
  double alpha = 1.0;
  double gamma = 1.0;
  double beta = 1.0;
  McMWParams full() const { return {alpha, gamma, beta, 1.0, 1.0, 1.0}; }
};

/// Returns the list of violated constraints, empty if the candidate is valid.
std::vector<std::string> constraint_violations(double alpha, double gamma,
                                               double beta, double a, double b,
                                               double c);

/// Validates and returns the parameter object; throws std::invalid_argument
/// with a diagnostic naming every violated constraint otherwise.
McMWParams validate(double alpha, double gamma, double beta, double a,
                    double b, double c);

enum class Submodel {
  McMW,
  BMW,
  KMW,
  McW,
  McLFR,
  McR,
  McE,
  BR,
  BLFR,
  MW,
  Weibull,
  Rayleigh,
  Exponential,
  LFR,
};

const char* submodel_name(Submodel m);
std::optional<Submodel> submodel_from_name(const std::string& name);

// Which of (alpha, gamma, beta, a, b, c) a submodel pins, and to what.
struct SubmodelSpec {
  Submodel model;
  std::array<bool, 6> fixed;    // true where the parameter is pinned
  std::array<double, 6> value;  // pinned value (ignored where fixed=false)
  int free_count() const;
  std::vector<int> free_indices() const;
  // Embed a free-parameter vector into the full six-parameter vector.
  McMWParams embed(const std::vector<double>& free) const;
  std::vector<double> extract(const McMWParams& p) const;
};

SubmodelSpec submodel_spec(Submodel m);

/// Builds the full six-parameter vector from a submodel's free parameters
/// (given in (alpha, gamma, beta, a, b, c) order, skipping pinned ones).
/// Throws if the count is wrong or the result violates the constraints.
McMWParams submodel(Submodel m, const std::vector<double>& free_params);

const char* parameter_name(int index);

}  // namespace mcmw

#endif
