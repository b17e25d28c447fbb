#include "fbar/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "fbar/error.hpp"

namespace fbar {

void FrequencyGrid::validate() const {
  if (!(start > 0.0) || !(stop > start) || !std::isfinite(stop))
    throw ValidationError("frequency grid requires 0 < start < stop");
  if (points < 2) throw ValidationError("frequency grid requires at least 2 points");
}

std::vector<double> FrequencyGrid::frequencies() const {
  validate();
  std::vector<double> f(points);
  const double n = static_cast<double>(points - 1);
  if (spacing == Spacing::linear) {
    const double step = (stop - start) / n;
    for (std::size_t i = 0; i < points; ++i) f[i] = start + step * static_cast<double>(i);
  } else {
    const double ratio = std::log(stop / start) / n;
    for (std::size_t i = 0; i < points; ++i) f[i] = start * std::exp(ratio * static_cast<double>(i));
  }
  f.back() = stop;
  return f;
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::admittance: return "admittance";
    case Quantity::impedance: return "impedance";
    case Quantity::reflection: return "reflection";
  }
  return "admittance";
}

Quantity quantity_from_string(std::string_view s) {
  if (s == "admittance") return Quantity::admittance;
  if (s == "impedance") return Quantity::impedance;
  if (s == "reflection") return Quantity::reflection;
  throw ValidationError("unknown quantity '" + std::string(s) + "'");
}

void ComplexSpectrum::validate() const {
  if (freq.size() != values.size())
    throw ValidationError("spectrum has " + std::to_string(freq.size()) + " frequencies but " +
                          std::to_string(values.size()) + " values");
  for (std::size_t i = 1; i < freq.size(); ++i)
    if (!(freq[i] > freq[i - 1]))
      throw ValidationError("spectrum frequencies must be strictly increasing (index " +
                            std::to_string(i) + ")");
}

ComplexSpectrum ComplexSpectrum::reciprocal() const {
  ComplexSpectrum out{freq, {}, quantity};
  out.values.reserve(values.size());
  for (const cplx& v : values) out.values.push_back(1.0 / v);
  if (quantity == Quantity::admittance)
    out.quantity = Quantity::impedance;
  else if (quantity == Quantity::impedance)
    out.quantity = Quantity::admittance;
  return out;
}

ComplexSpectrum ComplexSpectrum::slice(double lo, double hi) const {
  ComplexSpectrum out{{}, {}, quantity};
  for (std::size_t i = 0; i < freq.size(); ++i) {
    if (freq[i] >= lo && freq[i] <= hi) {
      out.freq.push_back(freq[i]);
      out.values.push_back(values[i]);
    }
  }
  return out;
}

std::vector<double> unwrap_phase(std::span<const double> phase) {
  std::vector<double> out(phase.begin(), phase.end());
  double offset = 0.0;
  for (std::size_t i = 1; i < phase.size(); ++i) {
    const double d = phase[i] - phase[i - 1];
    if (d > kPi)
      offset -= 2.0 * kPi;
    else if (d < -kPi)
      offset += 2.0 * kPi;
    out[i] = phase[i] + offset;
  }
  return out;
}

double interp_linear(std::span<const double> x, std::span<const double> y, double xq) {
  if (xq <= x.front()) return y.front();
  if (xq >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + t * (y[i] - y[i - 1]);
}

}  // namespace fbar
