#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fbar/materials.hpp"
#include "fbar/spectrum.hpp"

namespace fbar {

// Acoustic impedances here are specific (per unit area, kg m^-2 s^-1). All
// layers share the electrode area, so area enters only through C0.

/// (force, velocity) transfer matrix of a uniform layer, mapping the far face to
/// the near face: [[cos t, jZ sin t], [j sin t / Z, cos t]] with t = 2 pi f d / v.
/// Velocity and Z are complex when the layer is lossy. det = 1.
Eigen::Matrix2cd layer_acoustic_matrix(const Layer& layer, double f);

/// Acoustic impedance seen from a piezo face looking through `layers`
/// (ordered outward from the face) into a traction-free surface.
cplx loaded_face_impedance(std::span<const Layer> outward, double f);

/// Static capacitance eps_S33 * area / t of the piezo layer.
double static_capacitance(const Stack& s);

/// Electrical admittance of the released stack at one frequency (Mason model).
cplx stack_admittance_at(const Stack& s, double f);
/// Y(f) over the grid. Throws ValidationError for stacks with error diagnostics.
ComplexSpectrum stack_admittance(const Stack& s, const FrequencyGrid& g);
ComplexSpectrum stack_admittance(const Stack& s, std::span<const double> freqs);

/// Independent check of stack_admittance: linear finite elements for the 1D
/// wave equation with uniform electric displacement in the piezo layer, unit
/// voltage drive, Y = j w A D. `nodes` is the total node count across the stack;
/// each layer gets at least 10 elements. Second-order accurate in element size.
ComplexSpectrum fd_oracle_admittance(const Stack& s, const FrequencyGrid& g, std::size_t nodes);
ComplexSpectrum fd_oracle_admittance(const Stack& s, std::span<const double> freqs, std::size_t nodes);

/// k^2 = (pi^2/8) (f_p^2 - f_s^2) / f_p^2. Throws ValidationError unless 0 < f_s < f_p.
double extract_k2(double f_s, double f_p);

struct ModeFindOptions {
  /// Minimum |Y| max-to-min ratio of a pair, in dB.
  double prominence_db = 3.0;
  /// Parabolic sub-sample refinement of both extrema (in dB vs frequency).
  bool refine = true;
};

struct ModePair {
  double f_s = 0.0;
  double f_p = 0.0;
  std::size_t index_s = 0;
  std::size_t index_p = 0;
  double prominence_db = 0.0;
  std::string label;
};

struct ModeSearch {
  std::vector<ModePair> modes;  // sorted by f_s
  std::vector<std::string> diagnostics;
};

/// Pairs each significant |Y| maximum with the minimum that follows it.
/// Extrema whose neighbouring max/min differ by less than the prominence are
/// cancelled pairwise, smallest difference first, so noise never splits a mode.
ModeSearch find_modes(const ComplexSpectrum& y, const ModeFindOptions& opt = {});

/// Labels modes by position from `labels`; extra modes stay unlabeled.
void assign_ordinal_labels(std::vector<ModePair>& modes, std::span<const std::string> labels);

/// Full per-mode figures (k2 from the extrema, Q_p from the impedance phase slope).
/// Q_p uses a +-0.2 % window, widened just enough to hold 5 samples on coarse grids.
std::vector<ModeMetrics> mode_metrics(const ComplexSpectrum& y, const std::vector<ModePair>& modes);

/// Thickness-mode labels: first mode S1; a following mode with k2 below 20 % of
/// S1's is A2 (only asymmetric stacks excite it); the next stronger one is S3.
void label_thickness_modes(std::vector<ModeMetrics>& modes);

/// Simulate + find_modes + mode_metrics + labels.
std::vector<ModeMetrics> simulate_modes(const Stack& s, const FrequencyGrid& g,
                                        const ModeFindOptions& opt = {});

struct SweepRow {
  double value = 0.0;
  std::vector<ModeMetrics> modes;
};

/// Applies `value` to the field named by `path` on a copy of `s`.
///
/// Paths: `area_um2`, and `<sel>.<field>` where <sel> is `layers[i]`, `piezo`,
/// or `electrodes` (the layers touching the piezo faces) and <field> is one of
/// thickness_nm, density, c33_e, e33, eps33_s, mech_q. A thickness of 0 removes
/// a non-piezo layer.
Stack apply_parameter(const Stack& s, std::string_view path, double value);

/// One row per value, in input order.
std::vector<SweepRow> sweep(const Stack& s, std::string_view path, std::span<const double> values,
                            const FrequencyGrid& g, const ModeFindOptions& opt = {});

}  // namespace fbar
