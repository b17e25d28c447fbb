#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fbar {

struct LmOptions {
  int max_iterations = 200;
  /// Stop when the relative cost decrease or relative step falls below this.
  double tolerance = 1e-12;
  /// Central-difference Jacobian step, relative to max(1, |x|).
  double fd_step = 1e-7;
};

struct LmResult {
  std::vector<double> x;
  double cost = 0.0;  // 0.5 * sum r^2
  int iterations = 0;
  bool converged = false;
};

using ResidualFn = std::function<void(std::span<const double> x, std::vector<double>& r)>;
using ProjectFn = std::function<void(std::vector<double>& x)>;

/// Damped least squares (Levenberg-Marquardt with Marquardt diagonal scaling).
/// `project` is applied after every trial step to keep x feasible.
LmResult levenberg_marquardt(const ResidualFn& residual, std::vector<double> x0, const LmOptions& opt,
                             const ProjectFn& project = {});

/// Uniform double in [0, 1) from a 64-bit generator, identical on every platform.
template <typename Engine>
double unit_uniform(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace fbar
