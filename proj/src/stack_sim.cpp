#include "fbar/stack_sim.hpp"

#include <algorithm>
#include <cmath>

#include "fbar/error.hpp"

namespace fbar {

namespace {

struct AcousticLine {
  cplx impedance;  // rho * v
  cplx phase;      // w d / v
};

AcousticLine acoustic_line(const Layer& layer, double f) {
  const cplx c = lossy_stiffness(layer.material);
  const cplx v = std::sqrt(c / layer.material.density);
  return {layer.material.density * v, 2.0 * kPi * f * layer.thickness / v};
}

}  // namespace

Eigen::Matrix2cd layer_acoustic_matrix(const Layer& layer, double f) {
  const auto [z, theta] = acoustic_line(layer, f);
  const cplx j{0.0, 1.0};
  const cplx c = std::cos(theta);
  const cplx s = std::sin(theta);
  Eigen::Matrix2cd m;
  m << c, j * z * s, j * s / z, c;
  return m;
}

cplx loaded_face_impedance(std::span<const Layer> outward, double f) {
  // Traction-free outer surface: F = 0, so Z_in = M(0,1) / M(1,1).
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  for (const Layer& l : outward) m = m * layer_acoustic_matrix(l, f);
  if (outward.empty()) return {0.0, 0.0};
  return m(0, 1) / m(1, 1);
}

double static_capacitance(const Stack& s) {
  const Layer& p = s.piezo();
  return p.material.eps33_s * s.area / p.thickness;
}

cplx stack_admittance_at(const Stack& s, double f) {
  const Layer& piezo = s.piezo();
  const double w = 2.0 * kPi * f;
  const double c0 = static_capacitance(s);
  const cplx j{0.0, 1.0};
  if (piezo.material.e33 == 0.0) return j * w * c0;

  std::vector<Layer> above(s.layers.begin(), s.layers.begin() + static_cast<std::ptrdiff_t>(s.piezo_index));
  std::reverse(above.begin(), above.end());
  const std::span<const Layer> below(s.layers.data() + s.piezo_index + 1,
                                     s.layers.size() - s.piezo_index - 1);

  const auto [zp, theta] = acoustic_line(piezo, f);
  const cplx zt = loaded_face_impedance(above, f) / zp;
  const cplx zb = loaded_face_impedance(below, f) / zp;
  const double e = piezo.material.e33;
  const cplx kt2 = e * e / (piezo.material.eps33_s * lossy_stiffness(piezo.material));

  const cplx sn = std::sin(theta);
  const cplx cs = std::cos(theta);
  const cplx num = (zt + zb) * sn + 2.0 * j * (1.0 - cs);
  const cplx den = (zt + zb) * cs + j * (1.0 + zt * zb) * sn;
  const cplx zin = (1.0 - kt2 / theta * num / den) / (j * w * c0);
  return 1.0 / zin;
}

ComplexSpectrum stack_admittance(const Stack& s, std::span<const double> freqs) {
  require_valid(s);
  ComplexSpectrum out{{freqs.begin(), freqs.end()}, {}, Quantity::admittance};
  out.values.reserve(freqs.size());
  for (double f : freqs) {
    if (!(f > 0.0)) throw ValidationError("frequencies must be positive");
    out.values.push_back(stack_admittance_at(s, f));
  }
  return out;
}

ComplexSpectrum stack_admittance(const Stack& s, const FrequencyGrid& g) {
  const auto f = g.frequencies();
  return stack_admittance(s, f);
}

double extract_k2(double f_s, double f_p) {
  if (!(f_s > 0.0) || !(f_p > f_s))
    throw ValidationError("extract_k2 requires 0 < f_s < f_p");
  return kPi * kPi / 8.0 * (f_p * f_p - f_s * f_s) / (f_p * f_p);
}

}  // namespace fbar
