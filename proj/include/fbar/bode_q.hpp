#pragma once

#include <span>
#include <vector>

#include "fbar/spectrum.hpp"

namespace fbar {

/// Bode Q estimators on a one-port reflection coefficient G(w):
///  - complex_derivative: Q = w |dG/dw| / (1 - |G|^2)
///  - group_delay:        Q = w tau_g |G| / (1 - |G|^2), tau_g = -d arg G / dw
/// They agree where |G| is locally flat; the group-delay form turns negative on
/// resonance loops that do not enclose the origin.
enum class BodeQForm { complex_derivative, group_delay };

struct BodeQSeries {
  std::vector<double> freq;
  std::vector<double> q;        // NaN where flagged
  std::vector<bool> flagged;    // |G| >= 1 or non-finite input
};

/// Central differences (non-uniform three-point stencil) inside, one-sided at
/// the ends. Throws ValidationError for fewer than 3 samples.
BodeQSeries bode_q(const ComplexSpectrum& s11, BodeQForm form = BodeQForm::complex_derivative);

/// Centered moving average; the window shrinks symmetrically near the ends.
/// NaN samples are skipped. Throws ValidationError for even or oversized windows.
std::vector<double> smooth_ma(std::span<const double> series, std::size_t window);

struct BodeQPeak {
  double q = 0.0;
  double f = 0.0;
  std::size_t smooth_window = 1;
};

/// Maximum of the smoothed Bode Q over lo <= f <= hi (finite samples only).
/// Throws ValidationError when the band holds no finite sample.
BodeQPeak bode_q_peak(const BodeQSeries& raw, double lo, double hi, std::size_t smooth_window);

}  // namespace fbar
