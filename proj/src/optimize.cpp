#include "mcmw/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mcmw {

OptimResult nelder_mead(const ObjectiveFn& f, const std::vector<double>& x0,
                        const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  OptimResult res;
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  // initial simplex: x0 plus a step along each coordinate
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    pts[i + 1][i] += (x0[i] != 0.0 ? opt.init_step * std::max(1.0, std::fabs(x0[i]))
                                   : opt.init_step);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  std::vector<std::size_t> order(n + 1);
  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0], worst = order[n],
                      second_worst = order[n - 1];

    // convergence: value spread and simplex diameter
    const double fspread = std::fabs(fv[worst] - fv[best]);
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      diam = std::max(diam, std::fabs(pts[worst][i] - pts[best][i]));
    if (std::isfinite(fv[best]) &&
        fspread <= opt.f_tol * (1.0 + std::fabs(fv[best])) &&
        diam <= opt.x_tol * (1.0 + std::fabs(pts[best][0]))) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
    }
    for (double& v : centroid) v /= static_cast<double>(n);

    auto blend = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = centroid[k] + t * (centroid[k] - pts[worst][k]);
      return x;
    };

    const auto xr = blend(alpha);
    const double fr = eval(xr);
    if (fr < fv[order[0]]) {
      const auto xe = blend(gamma);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second_worst]) {
      pts[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      const auto xc = blend(outside ? rho : -rho);
      const double fc = eval(xc);
      if (fc < std::min(fr, fv[worst])) {
        pts[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k)
            pts[i][k] = pts[best][k] + sigma * (pts[i][k] - pts[best][k]);
          fv[i] = eval(pts[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  res.x = pts[best];
  res.f = fv[best];
  res.iterations = iter;
  res.evaluations = evals;
  return res;
}

OptimResult bfgs(const ObjectiveFn& f, const GradientFn& grad,
                 const std::vector<double>& x0, const BfgsOptions& opt) {
  const std::size_t n = x0.size();
  OptimResult res;
  std::vector<double> x = x0;
  double fx = f(x);
  int evals = 1;
  std::vector<double> g = grad(x);
  // inverse Hessian approximation, identity to start
  std::vector<double> H(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;

  auto maxnorm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double t : v) m = std::max(m, std::fabs(t));
    return m;
  };

  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    bool bad = false;
    for (double t : g)
      if (!std::isfinite(t)) bad = true;
    if (bad) break;
    if (maxnorm(g) < opt.g_tol) {
      res.converged = true;
      break;
    }
    // direction d = -H g
    std::vector<double> dir(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) dir[i] -= H[i * n + k] * g[k];
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) slope += dir[i] * g[i];
    if (!(slope < 0.0)) {
      // reset to steepest descent
      for (std::size_t i = 0; i < n; ++i) {
        dir[i] = -g[i];
        for (std::size_t k = 0; k < n; ++k) H[i * n + k] = (i == k) ? 1.0 : 0.0;
      }
      slope = 0.0;
      for (std::size_t i = 0; i < n; ++i) slope += dir[i] * g[i];
      if (!(slope < 0.0)) break;
    }

    double step = 1.0;
    std::vector<double> xn(n);
    double fn = std::numeric_limits<double>::infinity();
    bool ok = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + step * dir[i];
      fn = f(xn);
      ++evals;
      if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
        ok = true;
        break;
      }
      step *= 0.5;
    }
    if (!ok) break;

    const std::vector<double> gn = grad(xn);
    // BFGS update with s = xn - x, y = gn - g
    std::vector<double> s(n), y(n);
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
      sy += s[i] * y[i];
    }
    const double f_old = fx;
    x = xn;
    fx = fn;
    g = gn;
    if (sy > 1e-14) {
      // H <- (I - s y^T / sy) H (I - y s^T / sy) + s s^T / sy
      std::vector<double> Hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) Hy[i] += H[i * n + k] * y[k];
      double yHy = 0.0;
      for (std::size_t i = 0; i < n; ++i) yHy += y[i] * Hy[i];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          H[i * n + k] += (sy + yHy) * s[i] * s[k] / (sy * sy) -
                          (Hy[i] * s[k] + s[i] * Hy[k]) / sy;
    }
    if (std::fabs(f_old - fx) <= opt.f_tol * (1.0 + std::fabs(fx)) &&
        maxnorm(g) < 1e-5) {
      res.converged = true;
      break;
    }
  }
  res.x = x;
  res.f = fx;
  res.iterations = iter;
  res.evaluations = evals;
  return res;
}

}  // namespace mcmw
