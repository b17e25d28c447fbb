#include "fbar/fit.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <random>

#include "fbar/error.hpp"
#include "fbar/least_squares.hpp"
#include "fbar/stack_sim.hpp"

namespace fbar {

void FitConfig::validate() const {
  std::vector<ModeWindow> w = mode_windows;
  for (const auto& m : w)
    if (!(m.lo > 0.0) || !(m.hi > m.lo)) throw ValidationError("mode window requires 0 < lo < hi");
  std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i].lo <= w[i - 1].hi) throw ValidationError("mode windows must not overlap");
  for (const auto& b : em_bands)
    if (!(b.lo >= 0.0) || !(b.hi > b.lo)) throw ValidationError("EM band requires 0 <= lo < hi");
  if (!(weight_amplitude >= 0.0) || !(weight_phase >= 0.0) || weight_amplitude + weight_phase == 0.0)
    throw ValidationError("fit weights must be non-negative and not both zero");
  if (max_iterations <= 0) throw ValidationError("max_iterations must be positive");
  if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  if (starts == 0) throw ValidationError("starts must be at least 1");
}

namespace {

// One fitted scalar. Log variables hold ln(value); linear ones value/scale, clamped at 0.
struct Variable {
  double* target;
  bool log_scale;
  double scale;
};

class ParamMap {
 public:
  explicit ParamMap(MbvdParams p) : params_(std::move(p)) {}
  // Variables point into params_.
  ParamMap(const ParamMap&) = delete;
  ParamMap& operator=(const ParamMap&) = delete;

  void add_em(bool with_r0) {
    vars_.push_back({&params_.r_s, false, std::max(params_.r_s, 1.0)});
    vars_.push_back({&params_.l_s, false, std::max(params_.l_s, 10e-12)});
    vars_.push_back({&params_.c_0, true, 1.0});
    if (with_r0) vars_.push_back({&params_.r_0, false, std::max(params_.r_0, 1.0)});
  }
  void add_branches() {
    for (auto& b : params_.branches) {
      vars_.push_back({&b.r_m, true, 1.0});
      vars_.push_back({&b.l_m, true, 1.0});
      vars_.push_back({&b.c_m, true, 1.0});
    }
  }

  std::vector<double> pack() const {
    std::vector<double> x;
    for (const auto& v : vars_) x.push_back(v.log_scale ? std::log(*v.target) : *v.target / v.scale);
    return x;
  }
  const MbvdParams& unpack(std::span<const double> x) {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      *vars_[i].target = vars_[i].log_scale ? std::exp(x[i]) : x[i] * vars_[i].scale;
    return params_;
  }
  void project(std::vector<double>& x) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (!vars_[i].log_scale) x[i] = std::max(x[i], 0.0);
  }
  // +-20 % multiplicative for log variables; +-20 % of scale for linear ones.
  std::vector<double> perturbed(const std::vector<double>& x, std::mt19937_64& rng) const {
    std::vector<double> out = x;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const double u = 0.4 * unit_uniform(rng) - 0.2;
      out[i] = vars_[i].log_scale ? x[i] + std::log1p(u) : x[i] + u;
    }
    project(out);
    return out;
  }
  std::size_t size() const { return vars_.size(); }

 private:
  MbvdParams params_;
  std::vector<Variable> vars_;
};

struct Target {
  std::vector<double> freq;
  std::vector<double> log_mag;
  std::vector<cplx> values;
};

Target make_target(const ComplexSpectrum& y, const std::vector<std::size_t>& idx) {
  Target t;
  for (std::size_t i : idx) {
    t.freq.push_back(y.freq[i]);
    t.values.push_back(y.values[i]);
    t.log_mag.push_back(std::log10(std::abs(y.values[i])));
  }
  return t;
}

void model_residual(const MbvdParams& p, const Target& t, const FitConfig& cfg, std::vector<double>& r) {
  const std::size_t n = t.freq.size();
  r.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ym = mbvd_admittance_at(p, t.freq[i]);
    const double lm = std::log10(std::abs(ym));
    if (!std::isfinite(lm) || !std::isfinite(ym.real()) || !std::isfinite(ym.imag())) {
      r[2 * i] = r[2 * i + 1] = 1e3;
      continue;
    }
    r[2 * i] = cfg.weight_amplitude * (lm - t.log_mag[i]);
    r[2 * i + 1] = cfg.weight_phase * std::arg(ym / t.values[i]);
  }
}

struct StageOutcome {
  MbvdParams params;
  StageReport report;
};

StageOutcome run_stage(ParamMap& map, const Target& target, const FitConfig& cfg) {
  LmOptions opt;
  opt.max_iterations = cfg.max_iterations;
  opt.tolerance = cfg.tolerance;
  const auto residual = [&](std::span<const double> x, std::vector<double>& r) {
    model_residual(map.unpack(x), target, cfg, r);
  };
  const auto project = [&](std::vector<double>& x) { map.project(x); };

  std::mt19937_64 rng(cfg.seed);
  const std::vector<double> x0 = map.pack();
  LmResult best;
  bool have = false;
  for (std::size_t s = 0; s < cfg.starts; ++s) {
    const std::vector<double> start = s == 0 ? x0 : map.perturbed(x0, rng);
    LmResult r = levenberg_marquardt(residual, start, opt, project);
    if (!have || r.cost < best.cost) {
      best = std::move(r);
      have = true;
    }
  }
  StageOutcome out;
  out.params = map.unpack(best.x);
  out.report.residual_rms = std::sqrt(2.0 * best.cost / static_cast<double>(std::max<std::size_t>(1, 2 * target.freq.size())));
  out.report.iterations = best.iterations;
  out.report.converged = best.converged;
  out.report.samples = target.freq.size();
  return out;
}

bool in_any_window(double f, const std::vector<ModeWindow>& w) {
  return std::any_of(w.begin(), w.end(), [f](const auto& m) { return f >= m.lo && f <= m.hi; });
}

void check_windows_in_grid(const ComplexSpectrum& y, const FitConfig& cfg) {
  for (const auto& w : cfg.mode_windows)
    if (w.lo < y.freq.front() || w.hi > y.freq.back())
      throw ValidationError(fmt::format("mode window [{:.6e}, {:.6e}] Hz lies outside the measured grid", w.lo, w.hi));
}

std::string window_name(const ModeWindow& w) {
  return fmt::format("{}[{:.6e}, {:.6e}] Hz", w.label.empty() ? "" : w.label + " ", w.lo, w.hi);
}

}  // namespace

double fit_residual_rms(const ComplexSpectrum& y, const MbvdParams& p, const FitConfig& cfg) {
  std::vector<std::size_t> all(y.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<double> r;
  model_residual(p, make_target(y, all), cfg, r);
  double s = 0.0;
  for (double v : r) s += v * v;
  return r.empty() ? 0.0 : std::sqrt(s / static_cast<double>(r.size()));
}

EmFit fit_em_params(const ComplexSpectrum& y, const FitConfig& cfg) {
  y.validate();
  cfg.validate();
  if (y.quantity != Quantity::admittance) throw ValidationError("fit expects an admittance spectrum");
  check_windows_in_grid(y, cfg);

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double f = y.freq[i];
    if (in_any_window(f, cfg.mode_windows)) continue;
    const bool in_band = cfg.em_bands.empty() ||
                         std::any_of(cfg.em_bands.begin(), cfg.em_bands.end(),
                                     [f](const Band& b) { return f >= b.lo && f <= b.hi; });
    if (in_band) idx.push_back(i);
  }
  if (static_cast<double>(idx.size()) < 0.2 * static_cast<double>(y.size()))
    throw ValidationError("EM bands cover less than 20 % of the grid");

  // Linear seed: Z = r_s + j (w l_s - 1/(w c_0)) for the branchless circuit.
  double sum_re = 0.0, s_ww = 0.0, s_wi = 0.0, s_ii = 0.0, s_zw = 0.0, s_zi = 0.0;
  for (std::size_t i : idx) {
    const double w = 2.0 * kPi * y.freq[i];
    const cplx z = 1.0 / y.values[i];
    sum_re += z.real();
    const double a = w, b = -1.0 / w;
    s_ww += a * a;
    s_wi += a * b;
    s_ii += b * b;
    s_zw += a * z.imag();
    s_zi += b * z.imag();
  }
  MbvdParams seed;
  seed.r_s = std::max(0.0, sum_re / static_cast<double>(idx.size()));
  const double det = s_ww * s_ii - s_wi * s_wi;
  double ls = det != 0.0 ? (s_zw * s_ii - s_zi * s_wi) / det : 0.0;
  double inv_c = det != 0.0 ? (s_ww * s_zi - s_wi * s_zw) / det : 0.0;
  if (!(inv_c > 0.0)) {
    // Fall back to the low-frequency capacitance estimate.
    const std::size_t i = idx.front();
    inv_c = 2.0 * kPi * y.freq[i] / std::max(y.values[i].imag(), 1e-30);
  }
  seed.l_s = std::max(0.0, ls);
  seed.c_0 = 1.0 / inv_c;

  ParamMap map(seed);
  map.add_em(cfg.fit_r0);
  const auto out = run_stage(map, make_target(y, idx), cfg);
  EmFit fit;
  fit.params = out.params;
  fit.params.branches.clear();
  fit.report = out.report;
  return fit;
}

MotionalFit fit_motional(const ComplexSpectrum& y, const MbvdParams& em, const FitConfig& cfg) {
  y.validate();
  cfg.validate();
  check_windows_in_grid(y, cfg);
  require_valid(em);
  if (cfg.mode_windows.empty()) throw ValidationError("fit needs at least one mode window");

  // Core admittance with the routing parasitics removed.
  ComplexSpectrum core{y.freq, {}, Quantity::admittance};
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double w = 2.0 * kPi * y.freq[i];
    core.values.push_back(1.0 / (1.0 / y.values[i] - cplx{em.r_s, w * em.l_s}));
  }

  std::vector<ModeWindow> windows = cfg.mode_windows;
  std::sort(windows.begin(), windows.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });

  MbvdParams seed = em;
  seed.branches.clear();
  std::vector<std::size_t> idx;
  for (const auto& w : windows) {
    const ComplexSpectrum local = core.slice(w.lo, w.hi);
    ModeFindOptions opt;
    opt.prominence_db = cfg.prominence_db;
    const ModeSearch found = local.size() >= 3 ? find_modes(local, opt) : ModeSearch{};
    if (found.modes.empty()) throw RuntimeFailure("no resonance in window " + window_name(w));
    const auto strongest = std::max_element(found.modes.begin(), found.modes.end(), [](const auto& a, const auto& b) {
      return a.prominence_db < b.prominence_db;
    });
    const double k2_cap = 0.8 * 8.0 / (kPi * kPi);
    const double k2 = std::min(extract_k2(strongest->f_s, strongest->f_p), k2_cap);
    double q = 50.0;
    const auto metrics = mode_metrics(local, {*strongest});
    if (std::isfinite(metrics.front().q_p) && metrics.front().q_p > 1.0) q = metrics.front().q_p;
    seed.branches.push_back(branch_from_targets(strongest->f_s, k2, q, em.c_0));
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y.freq[i] >= w.lo && y.freq[i] <= w.hi) idx.push_back(i);
  }

  ParamMap map(seed);
  map.add_branches();
  const auto out = run_stage(map, make_target(y, idx), cfg);
  return {out.params.branches, out.report};
}

FitResult fit_mbvd(const ComplexSpectrum& y, const FitConfig& cfg) {
  FitResult res;
  res.em_stage = fit_em_params(y, cfg);
  res.motional_stage = fit_motional(y, res.em_stage.params, cfg);

  MbvdParams start = res.em_stage.params;
  start.branches = res.motional_stage.branches;
  ParamMap map(start);
  map.add_em(cfg.fit_r0);
  map.add_branches();
  std::vector<std::size_t> all(y.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto out = run_stage(map, make_target(y, all), cfg);
  res.params = out.params;
  res.final_stage = out.report;

  if (!validate_mbvd(res.params).empty())
    res.diagnostics.push_back("fitted parameters violate mBVD invariants: " + validate_mbvd(res.params).front());
  if (!res.em_stage.report.converged) res.diagnostics.push_back("EM stage did not converge");
  if (!res.motional_stage.report.converged) res.diagnostics.push_back("motional stage did not converge");
  if (!res.final_stage.converged) res.diagnostics.push_back("joint refinement did not converge");
  return res;
}

ComplexSpectrum add_relative_noise(const ComplexSpectrum& y, double level_db, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double scale = std::pow(10.0, level_db / 20.0) / std::sqrt(2.0);
  ComplexSpectrum out = y;
  for (auto& v : out.values) {
    const double u1 = 1.0 - unit_uniform(rng);  // (0, 1]
    const double u2 = unit_uniform(rng);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const cplx n(rad * std::cos(2.0 * kPi * u2), rad * std::sin(2.0 * kPi * u2));
    v += scale * std::abs(v) * n;
  }
  return out;
}

}  // namespace fbar
