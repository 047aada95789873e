#include "mcmw/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcmw/distribution.hpp"

namespace mcmw {

double ks_statistic(const McMWParams& p, const Dataset& d) {
  const auto& xs = d.sorted();
  const double n = static_cast<double>(xs.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(p, xs[i]);
    const double up = (static_cast<double>(i) + 1.0) / n - F;
    const double down = F - static_cast<double>(i) / n;
    dist = std::max(dist, std::max(up, down));
  }
  return dist;
}

double aic(int k, double loglik) { return 2.0 * k - 2.0 * loglik; }

double aicc(int k, double loglik, int n) {
  if (n <= k + 1)
    throw std::domain_error("aicc: requires n > k + 1");
  return aic(k, loglik) + 2.0 * k * (k + 1.0) / (n - k - 1.0);
}

std::vector<ModelComparison> compare(const Dataset& d,
                                     const std::vector<Submodel>& models,
                                     const FitOptions& opts) {
  std::vector<ModelComparison> rows;
  for (Submodel m : models) {
    ModelComparison row;
    row.model_name = submodel_name(m);
    row.k = submodel_spec(m).free_count();
    try {
      row.fit = fit_mle(d, m, opts);
      row.fit_ok = true;
      const double ll = -row.fit.neg_loglik;
      row.neg2_loglik = -2.0 * ll;
      row.aic = aic(row.k, ll);
      row.aicc = aicc(row.k, ll, static_cast<int>(d.size()));
      row.ks = ks_statistic(row.fit.params, d);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ModelComparison& a, const ModelComparison& b) {
                     if (a.fit_ok != b.fit_ok) return a.fit_ok;
                     return a.aic < b.aic;
                   });
  return rows;
}

}  // namespace mcmw
