#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "fbar/error.hpp"
#include "fbar/mbvd.hpp"
#include "fbar/stack_sim.hpp"

namespace fbar {

namespace {

struct Extremum {
  std::size_t index;
  bool is_max;
};

std::vector<Extremum> raw_extrema(const std::vector<double>& m) {
  std::vector<Extremum> out;
  int last_dir = 0;
  std::size_t last_end = 0;  // sample where the previous monotone move ended
  for (std::size_t i = 1; i < m.size(); ++i) {
    const double d = m[i] - m[i - 1];
    const int dir = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (dir == 0) continue;
    if (last_dir != 0 && dir != last_dir) out.push_back({last_end, last_dir > 0});
    last_dir = dir;
    last_end = i;
  }
  return out;
}

// Vertex abscissa of the parabola through three points, clamped to their span.
double parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d0 = (y1 - y0) / (x1 - x0);
  const double d1 = (y2 - y1) / (x2 - x1);
  const double a = (d1 - d0) / (x2 - x0);
  if (a == 0.0 || !std::isfinite(a)) return x1;
  const double b = d0 - a * (x0 + x1);
  return std::clamp(-b / (2.0 * a), x0, x2);
}

double refine(const std::vector<double>& f, const std::vector<double>& m, std::size_t i) {
  if (i == 0 || i + 1 >= f.size()) return f[i];
  return parabolic_vertex(f[i - 1], m[i - 1], f[i], m[i], f[i + 1], m[i + 1]);
}

}  // namespace

ModeSearch find_modes(const ComplexSpectrum& y, const ModeFindOptions& opt) {
  y.validate();
  if (y.quantity != Quantity::admittance) throw ValidationError("find_modes expects an admittance spectrum");
  ModeSearch result;
  const std::size_t n = y.size();
  if (n < 3) return result;

  std::vector<double> db(n);
  for (std::size_t i = 0; i < n; ++i)
    db[i] = 20.0 * std::log10(std::max(std::abs(y.values[i]), std::numeric_limits<double>::min()));

  auto ext = raw_extrema(db);
  // Cancel the adjacent extremum pair with the smallest level difference until
  // every remaining neighbour pair differs by at least the prominence.
  while (ext.size() >= 2) {
    std::size_t best = 0;
    double best_diff = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < ext.size(); ++k) {
      const double diff = std::abs(db[ext[k].index] - db[ext[k + 1].index]);
      if (diff < best_diff) {
        best_diff = diff;
        best = k;
      }
    }
    if (best_diff >= opt.prominence_db) break;
    ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(best), ext.begin() + static_cast<std::ptrdiff_t>(best) + 2);
  }

  for (std::size_t k = 0; k < ext.size(); ++k) {
    if (!ext[k].is_max) continue;
    const std::size_t is = ext[k].index;
    if (k + 1 >= ext.size()) {
      result.diagnostics.push_back(
          fmt::format("maximum at {:.6e} Hz lacks a paired minimum inside the grid", y.freq[is]));
      continue;
    }
    const std::size_t ip = ext[k + 1].index;
    ModePair pair;
    pair.index_s = is;
    pair.index_p = ip;
    pair.prominence_db = db[is] - db[ip];
    pair.f_s = opt.refine ? refine(y.freq, db, is) : y.freq[is];
    pair.f_p = opt.refine ? refine(y.freq, db, ip) : y.freq[ip];
    if (!(pair.f_p > pair.f_s)) {
      pair.f_s = y.freq[is];
      pair.f_p = y.freq[ip];
    }
    result.modes.push_back(pair);
  }
  return result;
}

void assign_ordinal_labels(std::vector<ModePair>& modes, std::span<const std::string> labels) {
  for (std::size_t i = 0; i < modes.size(); ++i) modes[i].label = i < labels.size() ? labels[i] : "";
}

std::vector<ModeMetrics> mode_metrics(const ComplexSpectrum& y, const std::vector<ModePair>& modes) {
  const ComplexSpectrum z = y.reciprocal();
  std::vector<ModeMetrics> out;
  for (const auto& p : modes) {
    ModeMetrics m;
    m.label = p.label;
    m.f_s = p.f_s;
    m.f_p = p.f_p;
    m.k2 = extract_k2(p.f_s, p.f_p);
    // Smallest window of at least +-0.2 % holding two samples on each side of f_p.
    PhaseSlopeOptions opt;
    const std::size_t i = p.index_p;
    if (i >= 2 && i + 2 < z.size()) {
      const double need = std::max(p.f_p - z.freq[i - 2], z.freq[i + 2] - p.f_p) / p.f_p;
      opt.half_window = std::max(opt.half_window, need * (1.0 + 1e-9));
      try {
        m.q_p = qp_phase_slope(z, p.f_p, opt);
      } catch (const ValidationError&) {
        m.q_p = std::numeric_limits<double>::quiet_NaN();
      }
    } else {
      m.q_p = std::numeric_limits<double>::quiet_NaN();
    }
    m.fom = m.k2 * m.q_p;
    out.push_back(m);
  }
  return out;
}

void label_thickness_modes(std::vector<ModeMetrics>& modes) {
  for (auto& m : modes) m.label.clear();
  if (modes.empty()) return;
  modes[0].label = "S1";
  const double strong = modes[0].k2;
  bool have_a2 = false;
  for (std::size_t i = 1; i < modes.size(); ++i) {
    if (!have_a2 && modes[i].k2 < 0.2 * strong) {
      modes[i].label = "A2";
      have_a2 = true;
      continue;
    }
    modes[i].label = "S3";
    break;
  }
}

std::vector<ModeMetrics> simulate_modes(const Stack& s, const FrequencyGrid& g, const ModeFindOptions& opt) {
  const ComplexSpectrum y = stack_admittance(s, g);
  const ModeSearch found = find_modes(y, opt);
  auto metrics = mode_metrics(y, found.modes);
  label_thickness_modes(metrics);
  return metrics;
}

}  // namespace fbar
