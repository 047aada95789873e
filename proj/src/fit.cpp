#include "mcmw/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mcmw/optimize.hpp"

namespace mcmw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Matrix invert(const Matrix& m) {
  const int n = m.n;
  Matrix a = m;
  Matrix inv(n);
  for (int i = 0; i < n; ++i) inv.at(i, i) = 1.0;
  double max_pivot = 0.0, min_pivot = kInf;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a.at(r, col)) > std::fabs(a.at(piv, col))) piv = r;
    if (piv != col) {
      for (int k = 0; k < n; ++k) {
        std::swap(a.v[piv * n + k], a.v[col * n + k]);
        std::swap(inv.v[piv * n + k], inv.v[col * n + k]);
      }
    }
    const double d = a.at(col, col);
    max_pivot = std::max(max_pivot, std::fabs(d));
    min_pivot = std::min(min_pivot, std::fabs(d));
    if (!(std::fabs(d) > 0.0) || !std::isfinite(d)) {
      std::ostringstream os;
      os << "matrix numerically singular (pivot " << d << " at column " << col
         << ", condition >= " << (min_pivot > 0 ? max_pivot / min_pivot : kInf)
         << ")";
      throw std::runtime_error(os.str());
    }
    for (int k = 0; k < n; ++k) {
      a.v[col * n + k] /= d;
      inv.v[col * n + k] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a.at(r, col);
      if (f == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        a.v[r * n + k] -= f * a.v[col * n + k];
        inv.v[r * n + k] -= f * inv.v[col * n + k];
      }
    }
  }
  return inv;
}

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("normal_quantile: requires u in (0,1)");
  // Acklam's rational approximation
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  } else if (u <= phigh) {
    const double q = u - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  }
  // one Halley refinement against the exact cdf via erfc
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - u;
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  const double un = e / pdf;
  x -= un / (1.0 + 0.5 * x * un);
  return x;
}

double neg_log_likelihood_free(const SubmodelSpec& spec,
                               const std::vector<double>& free,
                               const Dataset& d) {
  for (double v : free)
    if (!std::isfinite(v) || !(v > 0.0)) return kInf;
  return neg_log_likelihood(spec.embed(free), d);
}

namespace {

// score projected to a submodel's free parameters
std::vector<double> score_free(const SubmodelSpec& spec, const McMWParams& p,
                               const Dataset& d) {
  const auto s6 = score(p, d);
  std::vector<double> out;
  for (int i : spec.free_indices()) out.push_back(s6[i]);
  return out;
}

// Starting points, natural scale, for a submodel. Warm starts from nested
// poorer fits come first, then moment-flavored seeds, then log-uniform
// draws over [1e-2, 10] fill the rest.
std::vector<std::vector<double>> build_starts(
    const SubmodelSpec& spec, const Dataset& d, const FitOptions& opts,
    const std::vector<std::vector<double>>& warms) {
  const double xbar = d.mean();
  const double inv_mean = 1.0 / xbar;
  std::vector<std::vector<double>> starts;

  auto push_full = [&](double al, double ga, double be, double a, double b,
                       double c) {
    McMWParams p{al, ga, be, a, b, c};
    std::vector<double> free = spec.extract(p);
    bool ok = true;
    for (double v : free)
      if (!(v > 0.0)) ok = false;
    if (ok) starts.push_back(std::move(free));
  };

  for (const auto& w : warms)
    if (static_cast<int>(w.size()) == spec.free_count()) starts.push_back(w);

  // moment-flavored seeds: exponential rate, split rates, Rayleigh-ish
  push_full(inv_mean, inv_mean, 1.0, 1.0, 1.0, 1.0);
  push_full(0.5 * inv_mean, 0.5 * inv_mean, 0.7, 1.0, 1.0, 1.0);
  push_full(inv_mean, 1.0 / (xbar * xbar), 2.0, 1.0, 1.0, 1.0);
  push_full(inv_mean, 0.1, 0.5, 0.5, 0.5, 2.0);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(std::log(1e-2), std::log(10.0));
  while (static_cast<int>(starts.size()) < opts.starts) {
    std::vector<double> free(spec.free_count());
    for (double& v : free) v = std::exp(unif(rng));
    starts.push_back(std::move(free));
  }
  if (static_cast<int>(starts.size()) > opts.starts && opts.starts > 0)
    starts.resize(static_cast<std::size_t>(opts.starts));
  return starts;
}

}  // namespace

Matrix observed_information(const McMWParams& p, const Dataset& d,
                            const SubmodelSpec& spec) {
  const auto idx = spec.free_indices();
  const int k = static_cast<int>(idx.size());
  Matrix H(k);
  const auto base = p.as_array();
  for (int j = 0; j < k; ++j) {
    // the step shrinks near the positivity boundary so both stencil points
    // stay in the domain
    const double h = std::min(1e-5 * std::max(1.0, std::fabs(base[idx[j]])),
                              0.5 * std::fabs(base[idx[j]]));
    auto hi = base, lo = base;
    hi[idx[j]] += h;
    lo[idx[j]] -= h;
    const auto s_hi = score(McMWParams::from_array(hi), d);
    const auto s_lo = score(McMWParams::from_array(lo), d);
    for (int i = 0; i < k; ++i) {
      // observed information = -d(score_i)/d(theta_j)
      H.at(i, j) = -(s_hi[idx[i]] - s_lo[idx[i]]) / (2.0 * h);
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (!std::isfinite(H.at(i, j))) {
        std::ostringstream os;
        os << "observed_information: non-finite entry at (" << i << "," << j
           << ")";
        throw std::runtime_error(os.str());
      }
    }
  // symmetrize
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const double m = 0.5 * (H.at(i, j) + H.at(j, i));
      H.at(i, j) = H.at(j, i) = m;
    }
  return H;
}

CovarianceResult covariance_and_ci(const Matrix& info,
                                   const std::vector<double>& estimates,
                                   double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::domain_error("covariance_and_ci: level must be in (0,1)");
  if (static_cast<int>(estimates.size()) != info.n)
    throw std::invalid_argument("covariance_and_ci: size mismatch");
  CovarianceResult out;
  try {
    out.cov = invert(info);
  } catch (const std::runtime_error& e) {
    out.note = e.what();
    return out;
  }
  out.valid = true;
  const double z = normal_quantile(0.5 + 0.5 * level);
  for (int i = 0; i < info.n; ++i) {
    const double var = out.cov.at(i, i);
    ConfidenceInterval ci;
    if (var >= 0.0) {
      const double se = std::sqrt(var);
      out.std_errors.push_back(se);
      ci.lo = estimates[i] - z * se;
      ci.hi = estimates[i] + z * se;
      ci.valid = true;
    } else {
      out.std_errors.push_back(std::numeric_limits<double>::quiet_NaN());
      out.note += (out.note.empty() ? "" : "; ");
      out.note += "negative variance for parameter " + std::to_string(i) +
                  ", interval suppressed";
    }
    out.conf_intervals.push_back(ci);
  }
  return out;
}

FitResult fit_mle(const Dataset& d, Submodel model, const FitOptions& opts,
                  double ci_level) {
  const SubmodelSpec spec = submodel_spec(model);
  const int k = spec.free_count();
  if (static_cast<int>(d.size()) < k)
    throw std::invalid_argument(
        "fit_mle: fewer observations than free parameters");

  // Warm starts follow the nesting chains Weibull -> MW -> {BMW, KMW} ->
  // McMW: seeding the richer model with each fitted poorer model makes the
  // richer optimum no worse by construction.
  std::vector<std::vector<double>> warms;
  FitOptions sub = opts;
  sub.starts = std::max(8, opts.starts / 2);
  switch (model) {
    case Submodel::McMW: {
      const FitResult bmw = fit_mle(d, Submodel::BMW, sub, ci_level);
      warms.push_back(spec.extract(bmw.params));
      const FitResult kmw = fit_mle(d, Submodel::KMW, sub, ci_level);
      warms.push_back(spec.extract(kmw.params));
      break;
    }
    case Submodel::BMW:
    case Submodel::KMW: {
      const FitResult mw = fit_mle(d, Submodel::MW, sub, ci_level);
      warms.push_back(spec.extract(McMWParams{mw.params.alpha, mw.params.gamma,
                                              mw.params.beta, 1.0, 1.0, 1.0}));
      break;
    }
    case Submodel::MW: {
      // Weibull sits on the alpha = 0 boundary; nudge inside for the start
      const FitResult w = fit_mle(d, Submodel::Weibull, sub, ci_level);
      warms.push_back(
          {1e-8, std::max(w.params.gamma, 1e-8), std::max(w.params.beta, 1e-8)});
      break;
    }
    default:
      break;
  }

  const auto starts = build_starts(spec, d, opts, warms);

  // the optimizer works in log parameters, clamped to a sane dynamic range
  constexpr double kLogLo = -30.0, kLogHi = 30.0;
  auto objective = [&](const std::vector<double>& logx) {
    std::vector<double> x(logx.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(logx[i] >= kLogLo && logx[i] <= kLogHi))
        return std::numeric_limits<double>::infinity();
      x[i] = std::exp(logx[i]);
    }
    return neg_log_likelihood_free(spec, x, d);
  };
  auto gradient = [&](const std::vector<double>& logx) {
    // d(-l)/d(log theta) = -theta * score(theta)
    std::vector<double> x(logx.size());
    std::vector<double> out(logx.size(),
                            std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(logx[i] >= kLogLo && logx[i] <= kLogHi)) return out;
      x[i] = std::exp(logx[i]);
    }
    const auto g = score_free(spec, spec.embed(x), d);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = -x[i] * g[i];
    return out;
  };

  FitResult best;
  best.model = model;
  best.neg_loglik = kInf;
  bool any_finite = false;

  NelderMeadOptions nm;
  nm.max_iter = opts.nm_max_iter;

  int start_index = 0;
  for (const auto& s0 : starts) {
    StartDiagnostic diag;
    diag.index = start_index++;
    diag.start = s0;
    std::vector<double> log0(s0.size());
    for (std::size_t i = 0; i < s0.size(); ++i) log0[i] = std::log(s0[i]);
    if (!std::isfinite(objective(log0))) {
      diag.neg_loglik = kInf;
      best.start_diagnostics.push_back(diag);
      continue;
    }
    OptimResult nm_res = nelder_mead(objective, log0, nm);
    OptimResult polish = bfgs(objective, gradient, nm_res.x);
    const OptimResult& fin = polish.f <= nm_res.f ? polish : nm_res;
    diag.neg_loglik = fin.f;
    diag.finished = true;
    best.start_diagnostics.push_back(diag);
    if (std::isfinite(fin.f)) {
      any_finite = true;
      if (fin.f < best.neg_loglik) {
        std::vector<double> x(fin.x.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::exp(fin.x[i]);
        best.params = spec.embed(x);
        best.neg_loglik = fin.f;
        best.iterations = nm_res.iterations + polish.iterations;
      }
    }
  }
  if (!any_finite)
    throw std::runtime_error("fit_mle: every start failed (non-finite -l)");

  best.fixed_mask = spec.fixed;
  best.free_indices = spec.free_indices();
  const auto g = score_free(spec, best.params, d);
  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, std::fabs(v));
  best.score_max_norm = gmax;
  best.converged = gmax < opts.score_tol_per_obs * static_cast<double>(d.size());

  try {
    best.info = observed_information(best.params, d, spec);
    const auto est = spec.extract(best.params);
    const auto cr = covariance_and_ci(best.info, est, ci_level);
    best.cov = cr.cov;
    best.cov_valid = cr.valid;
    best.cov_note = cr.note;
    best.std_errors = cr.std_errors;
    best.conf_intervals = cr.conf_intervals;
  } catch (const std::exception& e) {
    best.cov_valid = false;
    best.cov_note = e.what();
  }
  best.ci_level = ci_level;
  return best;
}

}  // namespace mcmw
