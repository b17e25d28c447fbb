#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fbar {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEps0 = 8.8541878128e-12;  // F/m

enum class Spacing { linear, logarithmic };

/// Sampled frequency axis. Endpoints are included.
struct FrequencyGrid {
  double start = 0.0;  // Hz
  double stop = 0.0;   // Hz
  std::size_t points = 0;
  Spacing spacing = Spacing::linear;

  /// Throws ValidationError unless 0 < start < stop and points >= 2.
  void validate() const;
  std::vector<double> frequencies() const;
};

enum class Quantity { admittance, impedance, reflection };

std::string_view to_string(Quantity q);
Quantity quantity_from_string(std::string_view s);

/// Frequency samples with complex values of one physical quantity.
struct ComplexSpectrum {
  std::vector<double> freq;
  std::vector<cplx> values;
  Quantity quantity = Quantity::admittance;

  std::size_t size() const noexcept { return freq.size(); }
  /// Throws ValidationError on length mismatch or non-increasing frequencies.
  void validate() const;

  /// Same grid, values mapped pointwise: 1/x. Admittance <-> impedance.
  ComplexSpectrum reciprocal() const;
  /// Subset with lo <= f <= hi.
  ComplexSpectrum slice(double lo, double hi) const;
};

/// Per-mode figures. f_s is the |Y| maximum, f_p the following |Y| minimum.
struct ModeMetrics {
  std::string label;
  double f_s = 0.0;
  double f_p = 0.0;
  double k2 = 0.0;
  double q_p = 0.0;
  double fom = 0.0;
};

/// Unwrap a phase sequence by removing jumps larger than pi.
std::vector<double> unwrap_phase(std::span<const double> phase);

/// Linear interpolation of y(x) at xq; x strictly increasing, xq clamped to range.
double interp_linear(std::span<const double> x, std::span<const double> y, double xq);

}  // namespace fbar
