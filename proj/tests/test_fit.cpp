#include <gtest/gtest.h>

#include <cmath>

#include "fbar/error.hpp"
#include "fbar/fit.hpp"
#include "fbar/least_squares.hpp"
#include "fbar/mbvd.hpp"

using namespace fbar;

namespace {

MbvdParams reference_targets() {
  return {3.0, 50e-12, 175e-15, 0.0,
          {branch_from_targets(21.4e9, 0.07, 62, 175e-15), branch_from_targets(55.4e9, 0.04, 19, 175e-15)}};
}

FitConfig reference_config() {
  FitConfig c;
  c.mode_windows = {{18e9, 25e9, "S1"}, {48e9, 63e9, "S3"}};
  return c;
}

const FrequencyGrid kGrid{10e9, 70e9, 6001};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(LeastSquares, FitsExponentialDecay) {
  std::vector<double> t, yv;
  for (int i = 0; i < 50; ++i) {
    t.push_back(0.1 * i);
    yv.push_back(3.0 * std::exp(-1.7 * 0.1 * i) + 0.5);
  }
  auto res = [&](std::span<const double> x, std::vector<double>& r) {
    r.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) r[i] = x[0] * std::exp(-x[1] * t[i]) + x[2] - yv[i];
  };
  const auto out = levenberg_marquardt(res, {1.0, 1.0, 0.0}, {});
  EXPECT_TRUE(out.converged);
  EXPECT_NEAR(out.x[0], 3.0, 1e-8);
  EXPECT_NEAR(out.x[1], 1.7, 1e-8);
  EXPECT_NEAR(out.x[2], 0.5, 1e-8);
}

TEST(LeastSquares, ProjectionHoldsBound) {
  // Unconstrained optimum at x = -2; with x >= 0 the answer is the bound.
  auto res = [](std::span<const double> x, std::vector<double>& r) { r = {x[0] + 2.0, 0.1 * x[1] - 0.3}; };
  auto project = [](std::vector<double>& x) { x[0] = std::max(x[0], 0.0); };
  const auto out = levenberg_marquardt(res, {5.0, 0.0}, {}, project);
  EXPECT_TRUE(out.converged);
  EXPECT_EQ(out.x[0], 0.0);
  EXPECT_NEAR(out.x[1], 3.0, 1e-8);
  EXPECT_LT(out.iterations, 50);
}

TEST(FitConfigRules, Validation) {
  FitConfig c = reference_config();
  EXPECT_NO_THROW(c.validate());
  c.mode_windows = {{20e9, 30e9, ""}, {25e9, 40e9, ""}};
  EXPECT_THROW(c.validate(), ValidationError);
  c = reference_config();
  c.mode_windows[0].hi = c.mode_windows[0].lo;
  EXPECT_THROW(c.validate(), ValidationError);
  c = reference_config();
  c.weight_amplitude = c.weight_phase = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(EmStage, PureCapacitor) {
  const auto y = mbvd_admittance(MbvdParams{0, 0, 175e-15, 0, {}}, kGrid);
  const auto em = fit_em_params(y, reference_config());
  EXPECT_LE(rel(em.params.c_0, 175e-15), 1e-3);
  EXPECT_LT(em.params.r_s, 1e-3);
  EXPECT_LT(em.params.l_s, 1e-13);
  EXPECT_TRUE(em.report.converged);
  EXPECT_GT(em.report.samples, 0u);
}

TEST(EmStage, CapacitorWithParasitics) {
  const MbvdParams p{3.0, 50e-12, 175e-15, 0, {}};
  const auto em = fit_em_params(mbvd_admittance(p, kGrid), reference_config());
  EXPECT_LE(rel(em.params.c_0, p.c_0), 1e-6);
  EXPECT_LE(rel(em.params.r_s, p.r_s), 1e-6);
  EXPECT_LE(rel(em.params.l_s, p.l_s), 1e-6);
}

TEST(EmStage, NoisyCapacitorWithParasitics) {
  const MbvdParams p{3.0, 50e-12, 175e-15, 0, {}};
  const auto y = add_relative_noise(mbvd_admittance(p, kGrid), -40.0, 7);
  const auto em = fit_em_params(y, reference_config());
  EXPECT_LE(rel(em.params.c_0, p.c_0), 0.05);
  EXPECT_LE(rel(em.params.r_s, p.r_s), 0.05);
  EXPECT_LE(rel(em.params.l_s, p.l_s), 0.05);
}

TEST(EmStage, RejectsThinCoverage) {
  const auto y = mbvd_admittance(MbvdParams{0, 0, 175e-15, 0, {}}, kGrid);
  FitConfig c;
  c.mode_windows = {{10.5e9, 65e9, ""}};
  EXPECT_THROW(fit_em_params(y, c), ValidationError);
}

TEST(MotionalStage, SingleBranchNoiseless) {
  const MbvdParams p{0, 0, 175e-15, 0, {branch_from_targets(21.4e9, 0.07, 62, 175e-15)}};
  const auto y = mbvd_admittance(p, FrequencyGrid{12e9, 32e9, 4001});
  FitConfig c;
  c.mode_windows = {{19e9, 24e9, "S1"}};
  MbvdParams em = p;
  em.branches.clear();
  const auto mot = fit_motional(y, em, c);
  ASSERT_EQ(mot.branches.size(), 1u);
  EXPECT_LE(rel(mot.branches[0].r_m, p.branches[0].r_m), 0.01);
  EXPECT_LE(rel(mot.branches[0].l_m, p.branches[0].l_m), 0.01);
  EXPECT_LE(rel(mot.branches[0].c_m, p.branches[0].c_m), 0.01);
}

TEST(MotionalStage, FlatWindowNamesTheWindow) {
  const auto y = mbvd_admittance(reference_targets(), kGrid);
  FitConfig c;
  c.mode_windows = {{18e9, 25e9, "S1"}, {30e9, 40e9, "flat"}};
  const auto em = fit_em_params(y, c);
  try {
    (void)fit_motional(y, em.params, c);
    FAIL();
  } catch (const RuntimeFailure& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("no resonance in window"), std::string::npos) << msg;
    EXPECT_NE(msg.find("flat"), std::string::npos) << msg;
  }
}

TEST(FullFit, NoiselessReferenceTargetsRecoverEveryElement) {
  const MbvdParams p = reference_targets();
  const auto r = fit_mbvd(mbvd_admittance(p, kGrid), reference_config());
  EXPECT_TRUE(r.converged());
  EXPECT_LE(rel(r.params.r_s, p.r_s), 0.01);
  EXPECT_LE(rel(r.params.l_s, p.l_s), 0.01);
  EXPECT_LE(rel(r.params.c_0, p.c_0), 0.01);
  EXPECT_LE(std::abs(r.params.r_0), 1e-3);
  ASSERT_EQ(r.params.branches.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_LE(rel(r.params.branches[i].r_m, p.branches[i].r_m), 0.01);
    EXPECT_LE(rel(r.params.branches[i].l_m, p.branches[i].l_m), 0.01);
    EXPECT_LE(rel(r.params.branches[i].c_m, p.branches[i].c_m), 0.01);
  }
}

TEST(FullFit, EmValuesWithModesExcluded) {
  const MbvdParams p = reference_targets();
  const auto r = fit_mbvd(mbvd_admittance(p, kGrid), reference_config());
  EXPECT_LE(rel(r.params.r_s, p.r_s), 0.02);
  EXPECT_LE(rel(r.params.l_s, p.l_s), 0.02);
  EXPECT_LE(rel(r.params.c_0, p.c_0), 0.02);
  EXPECT_LE(std::abs(r.params.r_0), 0.02);
}

TEST(FullFit, NoisyReferenceTargets) {
  const MbvdParams p = reference_targets();
  const auto truth = derived_metrics(p);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto r = fit_mbvd(add_relative_noise(mbvd_admittance(p, kGrid), -40.0, seed), reference_config());
    EXPECT_LE(rel(r.params.r_s, p.r_s), 0.05) << seed;
    EXPECT_LE(rel(r.params.l_s, p.l_s), 0.05) << seed;
    EXPECT_LE(rel(r.params.c_0, p.c_0), 0.05) << seed;
    const auto got = derived_metrics(r.params);
    ASSERT_EQ(got.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_LE(std::abs(got[i].k2 - truth[i].k2), 0.002) << seed;
      EXPECT_LE(rel(r.params.branches[i].motional_q(), p.branches[i].motional_q()), 0.05) << seed;
    }
  }
}

TEST(FullFit, Deterministic) {
  const auto y = add_relative_noise(mbvd_admittance(reference_targets(), kGrid), -40.0, 5);
  const auto a = fit_mbvd(y, reference_config());
  const auto b = fit_mbvd(y, reference_config());
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.final_stage.residual_rms, b.final_stage.residual_rms);
}

TEST(FullFit, ResidualReported) {
  const auto y = mbvd_admittance(reference_targets(), kGrid);
  const auto r = fit_mbvd(y, reference_config());
  EXPECT_LT(r.final_stage.residual_rms, 1e-8);
  EXPECT_LT(fit_residual_rms(y, reference_targets(), reference_config()), 1e-15);
}

TEST(Noise, LevelAndDeterminism) {
  const auto y = mbvd_admittance(MbvdParams{0, 0, 1e-13, 0, {}}, kGrid);
  const auto a = add_relative_noise(y, -40.0, 9), b = add_relative_noise(y, -40.0, 9);
  EXPECT_EQ(a.values, b.values);
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += std::norm((a.values[i] - y.values[i]) / y.values[i]);
  EXPECT_NEAR(std::sqrt(acc / y.size()), 0.01, 0.0005);
  EXPECT_NE(add_relative_noise(y, -40.0, 10).values, a.values);
}
