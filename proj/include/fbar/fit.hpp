#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbar/mbvd.hpp"
#include "fbar/spectrum.hpp"

namespace fbar {

struct ModeWindow {
  double lo = 0.0;  // Hz
  double hi = 0.0;  // Hz
  std::string label;
};

struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

/// Settings of the two-stage mBVD extraction.
struct FitConfig {
  std::vector<ModeWindow> mode_windows;
  /// Bands used by the EM stage; empty means "everything outside the mode windows".
  std::vector<Band> em_bands;
  double weight_amplitude = 1.0;  // on log10|Y|
  double weight_phase = 1.0;      // on phase, radians
  int max_iterations = 200;
  double tolerance = 1e-12;
  std::uint64_t seed = 1;
  std::size_t starts = 3;  // first start is the seed itself, the rest perturbed +-20 %
  bool fit_r0 = false;
  double prominence_db = 1.0;  // resonance detection inside the windows

  /// Structural checks (ordering, overlap). Grid containment is checked by the fit.
  void validate() const;
};

struct StageReport {
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
  std::size_t samples = 0;
};

struct EmFit {
  MbvdParams params;  // no branches
  StageReport report;
};

struct MotionalFit {
  std::vector<MotionalBranch> branches;
  StageReport report;
};

struct FitResult {
  MbvdParams params;
  EmFit em_stage;
  MotionalFit motional_stage;
  StageReport final_stage;
  std::vector<std::string> diagnostics;
  bool converged() const { return em_stage.report.converged && motional_stage.report.converged && final_stage.converged; }
};

/// Stage 1: branchless mBVD (r_s, l_s, c_0 and optionally r_0) fitted to the
/// samples outside the mode windows. Seeded by a linear fit of Im(1/Y) against
/// w and 1/w. Throws ValidationError when the EM bands hold under 20 % of the grid.
EmFit fit_em_params(const ComplexSpectrum& y, const FitConfig& cfg);

/// Stage 2: one motional branch per window with the EM elements held fixed.
/// Seeds come from find_modes on the de-embedded core admittance and
/// branch_from_targets. Throws RuntimeFailure naming a window without a resonance.
MotionalFit fit_motional(const ComplexSpectrum& y, const MbvdParams& em, const FitConfig& cfg);

/// Stage 1, stage 2, then a joint refinement of every element over the full grid.
FitResult fit_mbvd(const ComplexSpectrum& y, const FitConfig& cfg);

/// Residual vector norm used by all stages: rms over the weighted
/// (log10|Y| error, phase error) pairs of the given samples.
double fit_residual_rms(const ComplexSpectrum& y, const MbvdParams& p, const FitConfig& cfg);

/// Adds complex Gaussian noise scaled to each sample: y + 10^(level_db/20) |y| n,
/// with E|n|^2 = 1. Box-Muller over mt19937_64, so a seed gives the same
/// sequence everywhere.
ComplexSpectrum add_relative_noise(const ComplexSpectrum& y, double level_db, std::uint64_t seed);

}  // namespace fbar
