#include "fbar/mbvd.hpp"

#include <cmath>
#include <limits>

#include "fbar/error.hpp"
#include "fbar/stack_sim.hpp"

namespace fbar {

double MotionalBranch::series_frequency() const { return 1.0 / (2.0 * kPi * std::sqrt(l_m * c_m)); }

double MotionalBranch::motional_q() const {
  if (r_m == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * kPi * series_frequency() * l_m / r_m;
}

std::vector<std::string> validate_mbvd(const MbvdParams& p) {
  std::vector<std::string> out;
  auto nonneg = [&](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) out.push_back(std::string(name) + " must be non-negative");
  };
  nonneg(p.r_s, "r_s");
  nonneg(p.l_s, "l_s");
  nonneg(p.r_0, "r_0");
  if (!(p.c_0 > 0.0) || !std::isfinite(p.c_0)) out.push_back("c_0 must be positive");
  double prev = 0.0;
  for (std::size_t i = 0; i < p.branches.size(); ++i) {
    const auto& b = p.branches[i];
    const std::string tag = "branch " + std::to_string(i) + ": ";
    if (!(b.r_m >= 0.0) || !std::isfinite(b.r_m)) out.push_back(tag + "r_m must be non-negative");
    if (!(b.l_m > 0.0) || !std::isfinite(b.l_m)) out.push_back(tag + "l_m must be positive");
    if (!(b.c_m > 0.0) || !std::isfinite(b.c_m)) out.push_back(tag + "c_m must be positive");
    if (b.l_m > 0.0 && b.c_m > 0.0) {
      const double fs = b.series_frequency();
      if (!(fs > prev)) out.push_back(tag + "series frequencies must be strictly increasing");
      prev = fs;
    }
  }
  return out;
}

void require_valid(const MbvdParams& p) {
  const auto problems = validate_mbvd(p);
  if (!problems.empty()) throw ValidationError("invalid mBVD parameters: " + problems.front());
}

cplx mbvd_core_admittance_at(const MbvdParams& p, double f) {
  const double w = 2.0 * kPi * f;
  const cplx j{0.0, 1.0};
  cplx y = j * w * p.c_0 / (1.0 + j * w * p.r_0 * p.c_0);
  for (const auto& b : p.branches) y += 1.0 / (b.r_m + j * w * b.l_m + 1.0 / (j * w * b.c_m));
  return y;
}

cplx mbvd_admittance_at(const MbvdParams& p, double f) {
  const double w = 2.0 * kPi * f;
  const cplx core = mbvd_core_admittance_at(p, f);
  if (p.r_s == 0.0 && p.l_s == 0.0) return core;
  return 1.0 / (cplx{p.r_s, w * p.l_s} + 1.0 / core);
}

ComplexSpectrum mbvd_admittance(const MbvdParams& p, std::span<const double> freqs) {
  require_valid(p);
  ComplexSpectrum out{{freqs.begin(), freqs.end()}, {}, Quantity::admittance};
  out.values.reserve(freqs.size());
  for (double f : freqs) out.values.push_back(mbvd_admittance_at(p, f));
  return out;
}

ComplexSpectrum mbvd_admittance(const MbvdParams& p, const FrequencyGrid& g) {
  const auto f = g.frequencies();
  return mbvd_admittance(p, f);
}

MotionalBranch branch_from_targets(double f_s, double k2, double q, double c_0) {
  const double k2_max = 8.0 / (kPi * kPi);
  if (!(k2 > 0.0)) throw ValidationError("k2 must be positive (a zero-coupling branch is degenerate)");
  if (!(k2 < k2_max)) throw ValidationError("k2 must be below 8/pi^2");
  if (!(f_s > 0.0) || !(q > 0.0) || !(c_0 > 0.0))
    throw ValidationError("branch targets require f_s, q, c_0 > 0");
  const double r = 8.0 * k2 / (kPi * kPi);
  const double w = 2.0 * kPi * f_s;
  MotionalBranch b;
  b.c_m = c_0 * r / (1.0 - r);
  b.l_m = 1.0 / (w * w * b.c_m);
  b.r_m = w * b.l_m / q;
  return b;
}

std::vector<ModeMetrics> derived_metrics(const MbvdParams& p) {
  require_valid(p);
  std::vector<ModeMetrics> out;
  for (const auto& b : p.branches) {
    ModeMetrics m;
    m.f_s = b.series_frequency();
    m.f_p = m.f_s * std::sqrt(1.0 + b.c_m / p.c_0);
    m.k2 = extract_k2(m.f_s, m.f_p);
    // Dense local grid around f_p, well inside the estimator's sample requirement.
    FrequencyGrid local{m.f_p * (1.0 - 0.005), m.f_p * (1.0 + 0.005), 201, Spacing::linear};
    m.q_p = qp_phase_slope(mbvd_admittance(p, local).reciprocal(), m.f_p);
    m.fom = m.k2 * m.q_p;
    out.push_back(m);
  }
  return out;
}

double qp_phase_slope(const ComplexSpectrum& z, double f_p, const PhaseSlopeOptions& opt) {
  z.validate();
  if (z.size() < 2 || f_p < z.freq.front() || f_p > z.freq.back())
    throw ValidationError("f_p lies outside the spectrum");
  const double lo = f_p * (1.0 - opt.half_window);
  const double hi = f_p * (1.0 + opt.half_window);
  if (lo < z.freq.front() || hi > z.freq.back())
    throw ValidationError("phase-slope window extends beyond the spectrum");
  std::size_t inside = 0;
  for (double f : z.freq) inside += (f >= lo && f <= hi) ? 1 : 0;
  if (inside < opt.min_samples)
    throw ValidationError("phase-slope window holds " + std::to_string(inside) + " samples, need " +
                          std::to_string(opt.min_samples));
  std::vector<double> phase(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) phase[i] = std::arg(z.values[i]);
  const auto unwrapped = unwrap_phase(phase);
  const double slope = (interp_linear(z.freq, unwrapped, hi) - interp_linear(z.freq, unwrapped, lo)) / (hi - lo);
  return 0.5 * f_p * std::abs(slope);
}

}  // namespace fbar
