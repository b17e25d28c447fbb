#include "fbar/network.hpp"

#include <cmath>
#include <limits>

#include "fbar/error.hpp"

namespace fbar {

namespace {

const cplx kNaN{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};

// Relative singularity test for (I + X): tiny determinant against the matrix scale.
bool nearly_singular(const Eigen::Matrix2cd& a) {
  const double scale = a.cwiseAbs().maxCoeff();
  return !(std::abs(a.determinant()) > 1e-14 * scale * scale) || !std::isfinite(scale);
}

Eigen::Matrix2cd bilinear(const Eigen::Matrix2cd& x, bool& singular) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd plus = id + x;
  singular = nearly_singular(plus);
  if (singular) return Eigen::Matrix2cd::Constant(kNaN);
  return (id - x) * plus.inverse();
}

}  // namespace

void TwoPortData::validate() const {
  if (freq.size() != s.size()) throw ValidationError("two-port data: frequency/matrix count mismatch");
  for (std::size_t i = 1; i < freq.size(); ++i)
    if (!(freq[i] > freq[i - 1])) throw ValidationError("two-port data: frequencies must be strictly increasing");
  if (!(z0[0] > 0.0) || !(z0[1] > 0.0)) throw ValidationError("two-port data: z0 must be positive");
}

std::size_t TwoPortMatrices::flagged_count() const {
  std::size_t n = 0;
  for (bool b : singular) n += b ? 1 : 0;
  return n;
}

TwoPortMatrices s_to_y(const TwoPortData& d) {
  d.validate();
  const Eigen::Vector2cd sqrt_y0(1.0 / std::sqrt(d.z0[0]), 1.0 / std::sqrt(d.z0[1]));
  TwoPortMatrices out{d.freq, {}, {}, d.z0};
  out.m.reserve(d.s.size());
  for (const auto& s : d.s) {
    bool singular = false;
    const Eigen::Matrix2cd y = sqrt_y0.asDiagonal() * bilinear(s, singular) * sqrt_y0.asDiagonal();
    out.m.push_back(y);
    out.singular.push_back(singular);
  }
  return out;
}

TwoPortData y_to_s(const TwoPortMatrices& y) {
  const Eigen::Vector2cd sqrt_z0(std::sqrt(y.z0[0]), std::sqrt(y.z0[1]));
  TwoPortData out{y.freq, {}, y.z0};
  out.s.reserve(y.m.size());
  for (const auto& m : y.m) {
    bool singular = false;
    const Eigen::Matrix2cd norm = sqrt_z0.asDiagonal() * m * sqrt_z0.asDiagonal();
    out.s.push_back(bilinear(norm, singular));
  }
  return out;
}

ComplexSpectrum device_admittance(const TwoPortMatrices& y, Topology t) {
  ComplexSpectrum out{{}, {}, Quantity::admittance};
  for (std::size_t i = 0; i < y.m.size(); ++i) {
    if (!y.singular.empty() && y.singular[i]) continue;
    const auto& m = y.m[i];
    const cplx mutual = 0.5 * (m(0, 1) + m(1, 0));
    out.freq.push_back(y.freq[i]);
    out.values.push_back(t == Topology::series_thru ? -mutual : m(0, 0) + mutual);
  }
  return out;
}

FlaggedSpectrum y_to_s11(const ComplexSpectrum& y, double z0) {
  if (!(z0 > 0.0)) throw ValidationError("z0 must be positive");
  FlaggedSpectrum out{{y.freq, {}, Quantity::reflection}, {}};
  for (const cplx& v : y.values) {
    const cplx den = 1.0 + z0 * v;
    const bool bad = !(std::abs(den) > 1e-15 * (1.0 + std::abs(z0 * v)));
    out.flagged.push_back(bad);
    out.spectrum.values.push_back(bad ? kNaN : (1.0 - z0 * v) / den);
  }
  return out;
}

FlaggedSpectrum s11_to_y(const ComplexSpectrum& s11, double z0) {
  if (!(z0 > 0.0)) throw ValidationError("z0 must be positive");
  FlaggedSpectrum out{{s11.freq, {}, Quantity::admittance}, {}};
  for (const cplx& g : s11.values) {
    const cplx den = z0 * (1.0 + g);
    const bool bad = !(std::abs(1.0 + g) > 1e-15);
    out.flagged.push_back(bad);
    out.spectrum.values.push_back(bad ? kNaN : (1.0 - g) / den);
  }
  return out;
}

Eigen::Matrix2cd series_element_s(cplx z, double z0) {
  const cplx den = z + 2.0 * z0;
  Eigen::Matrix2cd s;
  s << z / den, 2.0 * z0 / den, 2.0 * z0 / den, z / den;
  return s;
}

Eigen::Matrix2cd shunt_element_s(cplx z, double z0) {
  const cplx den = 2.0 * z + z0;
  Eigen::Matrix2cd s;
  s << -z0 / den, 2.0 * z / den, 2.0 * z / den, -z0 / den;
  return s;
}

}  // namespace fbar
