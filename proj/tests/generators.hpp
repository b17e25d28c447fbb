#pragma once

// Hand-rolled random generators for the property tests.

#include <cmath>
#include <cstdint>
#include <random>

#include "fbar/least_squares.hpp"
#include "fbar/materials.hpp"
#include "fbar/mbvd.hpp"

namespace fbar::gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return lo + static_cast<int>(unit_uniform(rng_) * (hi - lo + 1)); }
  bool coin() { return unit_uniform(rng_) < 0.5; }
  std::mt19937_64& engine() { return rng_; }

  MaterialProps material(bool piezo) {
    MaterialProps m;
    m.name = piezo ? "P" : "M";
    m.density = uniform(1500.0, 22000.0);
    m.c33_e = log_uniform(50e9, 450e9);
    m.eps33_s = uniform(1.0, 20.0) * kEps0;
    m.e33 = piezo ? uniform(0.3, 3.0) : 0.0;
    m.mech_q = log_uniform(5.0, 2000.0);
    return m;
  }

  Stack lossy_stack() {
    Stack s;
    const int above = integer(0, 2), below = integer(0, 2);
    for (int i = 0; i < above; ++i) s.layers.push_back({material(false), log_uniform(5e-9, 300e-9)});
    s.piezo_index = s.layers.size();
    s.layers.push_back({material(true), log_uniform(40e-9, 1000e-9)});
    for (int i = 0; i < below; ++i) s.layers.push_back({material(false), log_uniform(5e-9, 300e-9)});
    s.area = log_uniform(1e-11, 1e-8);
    return s;
  }

  MbvdParams mbvd() {
    MbvdParams p;
    p.r_s = coin() ? 0.0 : uniform(0.0, 20.0);
    p.l_s = coin() ? 0.0 : log_uniform(1e-12, 500e-12);
    p.c_0 = log_uniform(10e-15, 2e-12);
    p.r_0 = coin() ? 0.0 : uniform(0.0, 10.0);
    const int n = integer(0, 3);
    double f = log_uniform(1e9, 20e9);
    for (int i = 0; i < n; ++i) {
      const MotionalBranch b = branch_from_targets(f, uniform(0.005, 0.3), log_uniform(5.0, 3000.0), p.c_0);
      p.branches.push_back(coin() ? b : MotionalBranch{0.0, b.l_m, b.c_m});
      f *= uniform(1.2, 3.0);
    }
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fbar::gen
