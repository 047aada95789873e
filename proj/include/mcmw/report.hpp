#ifndef MCMW_REPORT_HPP
#define MCMW_REPORT_HPP

#include <iosfwd>
#include <string>

#include "mcmw/fit.hpp"
#include "mcmw/gof.hpp"

namespace mcmw {

enum class OutputFormat { Table, Json };

/// Fit report: estimates, standard errors, -l, covariance, intervals.
/// Tables use 6 significant digits; JSON carries full precision.
void write_fit_report(std::ostream& os, const FitResult& fit,
                      OutputFormat format);

/// Comparison table shaped like (model, K-S, -2l, AIC, AICC).
void write_comparison(std::ostream& os,
                      const std::vector<ModelComparison>& rows,
                      OutputFormat format);

/// JSON text for a fit (used by the round-trip contract).
std::string fit_report_json(const FitResult& fit);

}  // namespace mcmw

#endif
