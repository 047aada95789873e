#include "mcmw/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mcmw {

namespace {

nlohmann::json fit_to_json(const FitResult& fit) {
  nlohmann::json j;
  j["model"] = submodel_name(fit.model);
  j["neg_loglik"] = fit.neg_loglik;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["score_max_norm"] = fit.score_max_norm;
  j["ci_level"] = fit.ci_level;
  nlohmann::json params;
  const auto arr = fit.params.as_array();
  for (int i = 0; i < 6; ++i) params[parameter_name(i)] = arr[i];
  j["params"] = params;
  nlohmann::json free_list = nlohmann::json::array();
  for (std::size_t k = 0; k < fit.free_indices.size(); ++k) {
    const int i = fit.free_indices[k];
    nlohmann::json e;
    e["name"] = parameter_name(i);
    e["estimate"] = arr[i];
    if (fit.cov_valid && k < fit.std_errors.size()) {
      e["std_error"] = fit.std_errors[k];
      if (fit.conf_intervals[k].valid) {
        e["ci"] = {fit.conf_intervals[k].lo, fit.conf_intervals[k].hi};
      }
    }
    free_list.push_back(e);
  }
  j["free_parameters"] = free_list;
  if (fit.cov_valid) {
    nlohmann::json cov = nlohmann::json::array();
    for (int i = 0; i < fit.cov.n; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < fit.cov.n; ++k) row.push_back(fit.cov.at(i, k));
      cov.push_back(row);
    }
    j["covariance"] = cov;
  } else if (!fit.cov_note.empty()) {
    j["covariance_note"] = fit.cov_note;
  }
  return j;
}

}  // namespace

std::string fit_report_json(const FitResult& fit) {
  return fit_to_json(fit).dump(2);
}

void write_fit_report(std::ostream& os, const FitResult& fit,
                      OutputFormat format) {
  if (format == OutputFormat::Json) {
    os << fit_report_json(fit) << "\n";
    return;
  }
  const auto arr = fit.params.as_array();
  os << "model: " << submodel_name(fit.model) << "\n";
  os << std::setprecision(6);
  os << "-loglik: " << fit.neg_loglik
     << "   converged: " << (fit.converged ? "yes" : "no")
     << "   max|score|: " << fit.score_max_norm << "\n";
  os << std::left << std::setw(8) << "param" << std::right << std::setw(14)
     << "estimate" << std::setw(14) << "std.err" << std::setw(26)
     << "conf.interval" << "\n";
  for (std::size_t k = 0; k < fit.free_indices.size(); ++k) {
    const int i = fit.free_indices[k];
    os << std::left << std::setw(8) << parameter_name(i) << std::right
       << std::setw(14) << arr[i];
    if (fit.cov_valid && k < fit.std_errors.size()) {
      os << std::setw(14) << fit.std_errors[k];
      if (fit.conf_intervals[k].valid) {
        std::ostringstream ci;
        ci << std::setprecision(6) << "[" << fit.conf_intervals[k].lo << ", "
           << fit.conf_intervals[k].hi << "]";
        os << std::setw(26) << ci.str();
      } else {
        os << std::setw(26) << "(suppressed)";
      }
    } else {
      os << std::setw(14) << "-" << std::setw(26) << "-";
    }
    os << "\n";
  }
  for (int i = 0; i < 6; ++i) {
    if (fit.fixed_mask[i])
      os << std::left << std::setw(8) << parameter_name(i) << std::right
         << std::setw(14) << arr[i] << "  (fixed)\n";
  }
  if (fit.cov_valid) {
    os << "covariance (free parameters):\n";
    for (int i = 0; i < fit.cov.n; ++i) {
      for (int k = 0; k < fit.cov.n; ++k)
        os << std::setw(13) << std::setprecision(4) << std::scientific
           << fit.cov.at(i, k);
      os << "\n" << std::defaultfloat << std::setprecision(6);
    }
  } else if (!fit.cov_note.empty()) {
    os << "covariance unavailable: " << fit.cov_note << "\n";
  }
}

void write_comparison(std::ostream& os,
                      const std::vector<ModelComparison>& rows,
                      OutputFormat format) {
  if (format == OutputFormat::Json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json e;
      e["model"] = r.model_name;
      e["k"] = r.k;
      if (r.fit_ok) {
        e["ks"] = r.ks;
        e["neg2_loglik"] = r.neg2_loglik;
        e["aic"] = r.aic;
        e["aicc"] = r.aicc;
      } else {
        e["error"] = r.error;
      }
      j.push_back(e);
    }
    os << j.dump(2) << "\n";
    return;
  }
  os << std::left << std::setw(12) << "model" << std::right << std::setw(6)
     << "k" << std::setw(12) << "K-S" << std::setw(14) << "-2l"
     << std::setw(14) << "AIC" << std::setw(14) << "AICC" << "\n";
  os << std::setprecision(6);
  for (const auto& r : rows) {
    os << std::left << std::setw(12) << r.model_name << std::right
       << std::setw(6) << r.k;
    if (r.fit_ok) {
      os << std::setw(12) << r.ks << std::setw(14) << r.neg2_loglik
         << std::setw(14) << r.aic << std::setw(14) << r.aicc;
    } else {
      os << "  fit failed: " << r.error;
    }
    os << "\n";
  }
}

}  // namespace mcmw
