#include "fbar/least_squares.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace fbar {

namespace {

double half_sum_sq(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return 0.5 * s;
}

}  // namespace

LmResult levenberg_marquardt(const ResidualFn& residual, std::vector<double> x0, const LmOptions& opt,
                             const ProjectFn& project) {
  const std::size_t n = x0.size();
  if (project) project(x0);
  LmResult res;
  res.x = std::move(x0);
  std::vector<double> r;
  residual(res.x, r);
  res.cost = half_sum_sq(r);
  const std::size_t m = r.size();
  if (n == 0 || m == 0) {
    res.converged = true;
    return res;
  }

  Eigen::MatrixXd jac(m, n);
  std::vector<double> xp, rp, rm;
  double lambda = -1.0;
  double nu = 2.0;

  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    if (res.cost <= 1e-300) {
      res.converged = true;
      break;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double h = opt.fd_step * std::max(1.0, std::abs(res.x[k]));
      xp = res.x;
      xp[k] += h;
      residual(xp, rp);
      xp[k] -= 2.0 * h;
      residual(xp, rm);
      for (std::size_t i = 0; i < m; ++i) jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = (rp[i] - rm[i]) / (2.0 * h);
    }
    const Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(m));
    const Eigen::MatrixXd a = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * rv;
    Eigen::VectorXd diag = a.diagonal();
    const double dmax = std::max(diag.maxCoeff(), 1e-300);
    for (Eigen::Index k = 0; k < diag.size(); ++k) diag[k] = std::max(diag[k], 1e-12 * dmax);
    if (lambda < 0.0) lambda = 1e-3;

    // Coordinates the projection pins in place are frozen for this iteration,
    // otherwise a parameter sitting on its bound stalls every step.
    std::vector<bool> frozen(n, false);
    auto solve = [&](double lam) {
      Eigen::MatrixXd damped = a;
      damped.diagonal() += lam * diag;
      Eigen::VectorXd rhs = -g;
      for (std::size_t k = 0; k < n; ++k) {
        if (!frozen[k]) continue;
        const auto kk = static_cast<Eigen::Index>(k);
        damped.row(kk).setZero();
        damped.col(kk).setZero();
        damped(kk, kk) = 1.0;
        rhs[kk] = 0.0;
      }
      return Eigen::VectorXd(damped.ldlt().solve(rhs));
    };
    auto free_gradient = [&] {
      double gmax = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (!frozen[k]) gmax = std::max(gmax, std::abs(g[static_cast<Eigen::Index>(k)]));
      return gmax;
    };

    bool accepted = false;
    bool stalled = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      std::vector<double> trial(n);
      for (int pass = 0; pass <= static_cast<int>(n); ++pass) {
        const Eigen::VectorXd step = solve(lambda);
        for (std::size_t k = 0; k < n; ++k) trial[k] = res.x[k] + step[static_cast<Eigen::Index>(k)];
        if (project) project(trial);
        bool newly = false;
        for (std::size_t k = 0; k < n; ++k) {
          if (!frozen[k] && step[static_cast<Eigen::Index>(k)] != 0.0 && trial[k] == res.x[k]) {
            frozen[k] = true;
            newly = true;
          }
        }
        if (!newly) break;
      }
      if (free_gradient() <= 1e-15 * std::max(1.0, res.cost)) {
        stalled = true;
        break;
      }
      std::vector<double> rt;
      residual(trial, rt);
      const double cost = half_sum_sq(rt);
      if (std::isfinite(cost) && cost < res.cost) {
        double dx = 0.0, xn = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          dx += (trial[k] - res.x[k]) * (trial[k] - res.x[k]);
          xn += res.x[k] * res.x[k];
        }
        const double decrease = res.cost - cost;
        const bool small = decrease <= opt.tolerance * res.cost ||
                           std::sqrt(dx) <= opt.tolerance * (std::sqrt(xn) + opt.tolerance);
        res.x = std::move(trial);
        r = std::move(rt);
        res.cost = cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        nu = 2.0;
        accepted = true;
        if (small) stalled = true;
      } else {
        lambda *= nu;
        nu *= 2.0;
        if (lambda > 1e16) break;
      }
    }
    if (!accepted || stalled) {
      res.converged = true;
      ++res.iterations;
      break;
    }
  }
  return res;
}

}  // namespace fbar
