#pragma once

#include <span>
#include <string>
#include <vector>

#include "fbar/spectrum.hpp"

namespace fbar {

struct MotionalBranch {
  double r_m = 0.0;  // ohm
  double l_m = 0.0;  // H
  double c_m = 0.0;  // F

  double series_frequency() const;
  /// 2 pi f_s l_m / r_m; infinite for a lossless branch.
  double motional_q() const;
  bool operator==(const MotionalBranch&) const = default;
};

/// Modified Butterworth-Van Dyke circuit with mmWave routing parasitics:
/// series (r_s + j w l_s) feeding C0 || R0 in parallel with the motional branches.
struct MbvdParams {
  double r_s = 0.0;  // ohm
  double l_s = 0.0;  // H
  double c_0 = 0.0;  // F
  double r_0 = 0.0;  // ohm, in series with c_0
  std::vector<MotionalBranch> branches;

  bool operator==(const MbvdParams&) const = default;
};

std::vector<std::string> validate_mbvd(const MbvdParams& p);
/// Throws ValidationError on the first violated invariant.
void require_valid(const MbvdParams& p);

/// Admittance of the static and motional branches only (no r_s, l_s).
cplx mbvd_core_admittance_at(const MbvdParams& p, double f);
/// 1 / (r_s + j w l_s + 1 / Y_core)
cplx mbvd_admittance_at(const MbvdParams& p, double f);
ComplexSpectrum mbvd_admittance(const MbvdParams& p, std::span<const double> freqs);
ComplexSpectrum mbvd_admittance(const MbvdParams& p, const FrequencyGrid& g);

/// Inverse design of one branch. With r = 8 k2 / pi^2:
/// c_m = c_0 r / (1 - r), l_m = 1 / ((2 pi f_s)^2 c_m), r_m = 2 pi f_s l_m / q.
/// `q` is the motional quality factor. Throws ValidationError unless
/// 0 < k2 < 8/pi^2 and f_s, q, c_0 > 0.
MotionalBranch branch_from_targets(double f_s, double k2, double q, double c_0);

/// Per branch: f_s, f_p = f_s sqrt(1 + c_m/c_0), k2 from (f_s, f_p), Q_p from the
/// phase slope of the full model impedance at f_p, fom = k2 Q_p.
std::vector<ModeMetrics> derived_metrics(const MbvdParams& p);

struct PhaseSlopeOptions {
  double half_window = 0.002;  // relative to f_p
  std::size_t min_samples = 5;
};

/// Q_p = (f_p / 2) |d phase / df| at f_p, from a central difference of the
/// unwrapped phase over f_p (1 +- half_window). Works on impedance or admittance
/// (the phases differ only in sign). Throws ValidationError when f_p lies outside
/// the grid or the window holds fewer than `min_samples` samples.
double qp_phase_slope(const ComplexSpectrum& z, double f_p, const PhaseSlopeOptions& opt = {});

}  // namespace fbar
