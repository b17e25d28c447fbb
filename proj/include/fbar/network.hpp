#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "fbar/spectrum.hpp"

namespace fbar {

/// Two-port scattering data. z0 holds the reference impedance of each port.
struct TwoPortData {
  std::vector<double> freq;
  std::vector<Eigen::Matrix2cd> s;
  std::array<double, 2> z0{50.0, 50.0};

  void validate() const;
};

/// Per-frequency 2x2 matrices plus a flag for points where the conversion was
/// singular. Flagged points hold NaN entries.
struct TwoPortMatrices {
  std::vector<double> freq;
  std::vector<Eigen::Matrix2cd> m;
  std::vector<bool> singular;
  std::array<double, 2> z0{50.0, 50.0};

  std::size_t flagged_count() const;
};

/// Y = sqrt(Y0) (I - S)(I + S)^-1 sqrt(Y0)
TwoPortMatrices s_to_y(const TwoPortData& d);
/// S = (I - y)(I + y)^-1 with y = sqrt(Z0) Y sqrt(Z0). Inverse of s_to_y.
TwoPortData y_to_s(const TwoPortMatrices& y);

enum class Topology { series_thru, shunt };

/// series-thru: -(Y12 + Y21)/2, shunt: Y11 + (Y12 + Y21)/2. Singular points are skipped.
ComplexSpectrum device_admittance(const TwoPortMatrices& y, Topology t);

/// One-port reflection with the per-point singularity flags.
struct FlaggedSpectrum {
  ComplexSpectrum spectrum;
  std::vector<bool> flagged;
};

/// S11 = (1 - z0 Y) / (1 + z0 Y).
FlaggedSpectrum y_to_s11(const ComplexSpectrum& y, double z0);
/// Y = (1 - S11) / (z0 (1 + S11)).
FlaggedSpectrum s11_to_y(const ComplexSpectrum& s11, double z0);

/// Two-port S-matrix of a series element Z between the ports (reference z0 on both).
Eigen::Matrix2cd series_element_s(cplx z, double z0);
/// Two-port S-matrix of a shunt element Z to ground.
Eigen::Matrix2cd shunt_element_s(cplx z, double z0);

}  // namespace fbar
