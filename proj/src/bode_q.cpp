#include "fbar/bode_q.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbar/error.hpp"

namespace fbar {

namespace {

template <typename T>
std::vector<T> derivative(const std::vector<double>& x, const std::vector<T>& y) {
  const std::size_t n = x.size();
  std::vector<T> d(n);
  d[0] = (y[1] - y[0]) / (x[1] - x[0]);
  d[n - 1] = (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    d[i] = (hm * hm * y[i + 1] - hp * hp * y[i - 1] + (hp * hp - hm * hm) * y[i]) / (hm * hp * (hm + hp));
  }
  return d;
}

}  // namespace

BodeQSeries bode_q(const ComplexSpectrum& s11, BodeQForm form) {
  s11.validate();
  const std::size_t n = s11.size();
  if (n < 3) throw ValidationError("Bode Q needs at least 3 samples");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 2.0 * kPi * s11.freq[i];

  BodeQSeries out{s11.freq, std::vector<double>(n), std::vector<bool>(n)};
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) {
    mag[i] = std::abs(s11.values[i]);
    out.flagged[i] = !std::isfinite(mag[i]) || mag[i] >= 1.0;
  }

  std::vector<double> slope(n);
  if (form == BodeQForm::complex_derivative) {
    const auto dg = derivative(w, s11.values);
    for (std::size_t i = 0; i < n; ++i) slope[i] = std::abs(dg[i]);
  } else {
    std::vector<double> phase(n);
    for (std::size_t i = 0; i < n; ++i) phase[i] = std::arg(s11.values[i]);
    const auto dphi = derivative(w, unwrap_phase(phase));
    for (std::size_t i = 0; i < n; ++i) slope[i] = -dphi[i] * mag[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.q[i] = out.flagged[i] ? std::numeric_limits<double>::quiet_NaN()
                              : w[i] * slope[i] / (1.0 - mag[i] * mag[i]);
    if (!std::isfinite(out.q[i]) && !out.flagged[i]) {
      out.flagged[i] = true;
      out.q[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

std::vector<double> smooth_ma(std::span<const double> series, std::size_t window) {
  if (window % 2 == 0) throw ValidationError("smoothing window must be odd");
  if (window > series.size()) throw ValidationError("smoothing window exceeds the series length");
  const std::size_t n = series.size();
  const std::size_t half = window / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t h = std::min({half, i, n - 1 - i});
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = i - h; k <= i + h; ++k) {
      if (std::isfinite(series[k])) {
        sum += series[k];
        ++count;
      }
    }
    out[i] = count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

BodeQPeak bode_q_peak(const BodeQSeries& raw, double lo, double hi, std::size_t smooth_window) {
  const auto smoothed = smooth_ma(raw.q, smooth_window);
  BodeQPeak peak;
  peak.smooth_window = smooth_window;
  bool found = false;
  for (std::size_t i = 0; i < smoothed.size(); ++i) {
    if (raw.freq[i] < lo || raw.freq[i] > hi || raw.flagged[i] || !std::isfinite(smoothed[i])) continue;
    if (!found || smoothed[i] > peak.q) {
      peak.q = smoothed[i];
      peak.f = raw.freq[i];
      found = true;
    }
  }
  if (!found) throw ValidationError("no finite Bode Q sample inside the band");
  return peak;
}

}  // namespace fbar
