// Acceptance checks. Prints one PASS/FAIL line per check and exits non-zero if
// any check fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fbar/bode_q.hpp"
#include "fbar/cli.hpp"
#include "fbar/config_io.hpp"
#include "fbar/fit.hpp"
#include "fbar/materials.hpp"
#include "fbar/mbvd.hpp"
#include "fbar/network.hpp"
#include "fbar/stack_sim.hpp"
#include "fbar/survey.hpp"

using namespace fbar;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(const std::string& id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << detail << "\n";
  if (!ok) ++failures;
}

bool within_rel(double v, double target, double tol) { return std::abs(v - target) <= tol * std::abs(target); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fbar_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const nlohmann::json* find_label(const nlohmann::json& modes, const std::string& label) {
  for (const auto& m : modes)
    if (m.value("label", "") == label) return &m;
  return nullptr;
}

MbvdParams reference_targets() {
  return {3.0, 50e-12, 175e-15, 0.0,
          {branch_from_targets(21.4e9, 0.07, 62, 175e-15), branch_from_targets(55.4e9, 0.04, 19, 175e-15)}};
}

FitConfig reference_config() { return load_fit_config(read_text_file(FBAR_DATA_DIR "/two_mode_fit.json")); }

const FrequencyGrid kFitGrid{10e9, 70e9, 6001};

void simulated_modes() {
  const auto dir = fresh_dir("simulate");
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = run_cli({"--out-dir", dir.string(), "--materials", FBAR_DATA_DIR "/materials.json", "simulate",
                            "--stack", FBAR_DATA_DIR "/default_stack.json", "--from", "5e9", "--to", "80e9",
                            "--points", "2001"},
                           out, err);
  const double elapsed = seconds_since(t0);
  check("1.exit", code == 0, fmt::format("simulate exit code {}", code));
  if (code != 0) return;
  const auto modes = nlohmann::json::parse(read_text_file(dir / "modes.json"))["modes"];
  const auto* s1 = find_label(modes, "S1");
  const auto* s3 = find_label(modes, "S3");
  check("1.modes", s1 && s3, fmt::format("{} modes found, S1 {} S3 {}", modes.size(), s1 ? "yes" : "no", s3 ? "yes" : "no"));
  if (!s1 || !s3) return;
  const double f1 = (*s1)["f_s_hz"], f3 = (*s3)["f_s_hz"], k1 = (*s1)["k2"], k3 = (*s3)["k2"];
  check("1.s1_freq", within_rel(f1, 15.6e9, 0.20), fmt::format("S1 f_s {:.3f} GHz, band 15.6 GHz +-20%", f1 / 1e9));
  check("1.s3_freq", within_rel(f3, 49.3e9, 0.20), fmt::format("S3 f_s {:.3f} GHz, band 49.3 GHz +-20%", f3 / 1e9));
  check("1.ratio", within_rel(f3 / f1, 3.16, 0.10), fmt::format("S3/S1 ratio {:.3f}, band 3.16 +-10%", f3 / f1));
  check("1.s1_k2", std::abs(k1 - 0.095) <= 0.025, fmt::format("S1 k2 {:.2f}%, band 9.5 +-2.5 points", 100 * k1));
  check("1.s3_k2", std::abs(k3 - 0.066) <= 0.020, fmt::format("S3 k2 {:.2f}%, band 6.6 +-2.0 points", 100 * k3));
  check("1.runtime", elapsed < 5.0, fmt::format("{:.3f} s at 2001 points", elapsed));
}

void fom_display() {
  const std::string a = format_fom(fom(0.070, 62)), b = format_fom(fom(0.040, 19));
  check("2.fom_s1", a == "4.34", "fom(0.070, 62) displays " + a);
  check("2.fom_s3", b == "0.76", "fom(0.040, 19) displays " + b);
}

void fit_round_trip() {
  const MbvdParams truth = reference_targets();
  const FitConfig cfg = reference_config();
  const auto y = mbvd_admittance(truth, kFitGrid);

  auto t0 = std::chrono::steady_clock::now();
  const FitResult clean = fit_mbvd(y, cfg);
  const double clean_time = seconds_since(t0);
  double worst = 0.0;
  std::string worst_name;
  auto track = [&](const std::string& name, double v, double ref) {
    const double e = std::abs(v - ref) / std::abs(ref);
    if (e > worst) worst = e, worst_name = name;
  };
  const MbvdParams& p = clean.params;
  bool shape = p.branches.size() == truth.branches.size();
  if (shape) {
    track("r_s", p.r_s, truth.r_s);
    track("l_s", p.l_s, truth.l_s);
    track("c_0", p.c_0, truth.c_0);
    for (std::size_t i = 0; i < truth.branches.size(); ++i) {
      track(fmt::format("r_m{}", i + 1), p.branches[i].r_m, truth.branches[i].r_m);
      track(fmt::format("l_m{}", i + 1), p.branches[i].l_m, truth.branches[i].l_m);
      track(fmt::format("c_m{}", i + 1), p.branches[i].c_m, truth.branches[i].c_m);
    }
    shape = shape && p.r_0 == 0.0;
  }
  check("3.noiseless", shape && worst <= 0.01,
        fmt::format("{} branches, worst element error {:.2e} ({})", p.branches.size(), worst, worst_name));
  check("3.runtime_noiseless", clean_time < 10.0, fmt::format("{:.2f} s", clean_time));

  t0 = std::chrono::steady_clock::now();
  const FitResult noisy = fit_mbvd(add_relative_noise(y, -40.0, 42), cfg);
  const double noisy_time = seconds_since(t0);
  const auto got = derived_metrics(noisy.params);
  const std::vector<std::pair<double, double>> targets{{0.070, 62}, {0.040, 19}};
  const std::vector<std::string> names{"S1", "S3"};
  if (got.size() != targets.size()) {
    check("3.noisy", false, fmt::format("{} branches recovered", got.size()));
  } else {
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const double k2 = got[i].k2;
      const double q = noisy.params.branches[i].motional_q();
      check("3.noisy_k2_" + names[i], std::abs(k2 - targets[i].first) <= 0.002,
            fmt::format("k2 {:.3f}% vs {:.1f}%", 100 * k2, 100 * targets[i].first));
      check("3.noisy_q_" + names[i], within_rel(q, targets[i].second, 0.05),
            fmt::format("motional Q {:.2f} vs {:.0f}", q, targets[i].second));
    }
  }
  check("3.runtime_noisy", noisy_time < 10.0, fmt::format("{:.2f} s", noisy_time));
}

void bode_consistency() {
  const MbvdParams truth = reference_targets();
  const auto s11 = y_to_s11(mbvd_admittance(truth, kFitGrid), 50.0).spectrum;
  const auto raw = bode_q(s11);
  const auto metrics = derived_metrics(truth);
  const FitConfig cfg = reference_config();
  const std::vector<double> expect{66, 17}, tol{0.15, 0.25};
  const std::vector<std::string> names{"S1", "S3"};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto peak = bode_q_peak(raw, cfg.mode_windows[i].lo, cfg.mode_windows[i].hi, 11);
    check("4.bode_" + names[i], within_rel(peak.q, expect[i], tol[i]),
          fmt::format("max Bode Q {:.2f} at {:.2f} GHz (window {}), band {:.0f} +-{:.0f}%", peak.q, peak.f / 1e9,
                      peak.smooth_window, expect[i], 100 * tol[i]));
    const double spread = std::abs(peak.q - metrics[i].q_p) / metrics[i].q_p;
    check("4.spread_" + names[i], spread <= 0.12,
          fmt::format("|Bode - Q_p|/Q_p = {:.3f} with Q_p {:.2f}", spread, metrics[i].q_p));
  }
}

void oracle_equivalence() {
  const Stack s = default_stack();
  const FrequencyGrid g{5e9, 80e9, 2001};
  const auto tm = stack_admittance(s, g);
  const auto fe = fd_oracle_admittance(s, g, 2000);
  const auto tm_modes = find_modes(tm).modes;
  const auto fe_modes = find_modes(fe).modes;

  double off = 0.0;
  for (std::size_t i = 0; i < g.points; ++i) {
    const double f = tm.freq[i];
    bool near = false;
    for (const auto& m : tm_modes) near = near || (f > 0.95 * m.f_s && f < 1.05 * m.f_p);
    if (!near) off = std::max(off, std::abs(fe.values[i] - tm.values[i]) / std::abs(tm.values[i]));
  }
  check("5.off_resonance", off <= 0.01, fmt::format("max relative deviation {:.2e} outside 0.95 f_s..1.05 f_p", off));

  bool same = tm_modes.size() == fe_modes.size() && !tm_modes.empty();
  double worst = 0.0;
  if (same)
    for (std::size_t i = 0; i < tm_modes.size(); ++i) {
      worst = std::max(worst, std::abs(fe_modes[i].f_s - tm_modes[i].f_s) / tm_modes[i].f_s);
      worst = std::max(worst, std::abs(fe_modes[i].f_p - tm_modes[i].f_p) / tm_modes[i].f_p);
    }
  check("5.mode_frequencies", same && worst <= 0.002,
        fmt::format("{} vs {} modes, worst frequency deviation {:.2e}", tm_modes.size(), fe_modes.size(), worst));

  std::vector<double> f;
  for (double x = 3e9; x < 80e9; x *= 1.07) f.push_back(x);
  const auto ref = stack_admittance(s, f);
  auto err = [&](std::size_t nodes) {
    const auto y = fd_oracle_admittance(s, f, nodes);
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(y.values[i] - ref.values[i]) / std::abs(ref.values[i]));
    return e;
  };
  const double e1 = err(1000), e2 = err(2000);
  const double order = std::log2(e1 / e2);
  check("5.order", order >= 1.8, fmt::format("order {:.3f} from errors {:.2e} (1000) and {:.2e} (2000)", order, e1, e2));
}

void property_suites() {
  const std::string filter =
      "LayerMatrix.DeterminantIsOne:StackAdmittance.PassiveForRandomLossyStacks:"
      "Mbvd.PassiveForRandomNonnegativeParameters:FindModes.SymmetricElectrodesHideA2:"
      "FindModes.ElectrodeAsymmetryRevealsExactlyOneA2:Network.TwoPortInversePair:OnePort.InversePairAndPassivity:"
      "Touchstone.RandomPassiveTwoPortRoundTrip:Touchstone.FuzzedBytesNeverEscape:Touchstone.FuzzedMutationsOfValidFile";
  const std::string cmd = fmt::format("\"{}\" --gtest_brief=1 --gtest_filter={} > /dev/null 2>&1", FBAR_TESTS, filter);
  const int rc = std::system(cmd.c_str());
  check("6.properties", rc == 0, fmt::format("property suites exit status {}", rc));
}

// Each run starts from an empty output directory at the same path, so the
// manifests (which record paths) are comparable byte for byte too.
void determinism() {
  const fs::path dir = fs::temp_directory_path() / "fbar_acceptance_det";
  std::vector<std::map<std::string, std::string>> snapshots;
  bool ran = true;
  for (int run = 0; run < 3; ++run) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string base = fmt::format("\"{}\" --out-dir \"{}\" --seed 42 ", FBAR_BINARY, dir.string());
    const std::vector<std::string> cmds{
        base + "synth --fs 21.4e9 --fs 55.4e9 --k2 0.07 --k2 0.04 --q 62 --q 19 --c0 175e-15 --rs 3 --ls 50e-12 "
               "--from 10e9 --to 70e9 --points 6001 --noise-db -40",
        base + fmt::format("fit --input \"{}\" --config \"{}\"", (dir / "synth.s1p").string(),
                           FBAR_DATA_DIR "/two_mode_fit.json"),
        base + "simulate"};
    for (const auto& c : cmds) ran = ran && std::system((c + " > /dev/null 2>&1").c_str()) == 0;
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
      files[entry.path().filename().string()] = read_text_file(entry.path());
    snapshots.push_back(std::move(files));
  }
  check("7.runs", ran, "synth, fit and simulate exit 0 in every run");
  std::size_t differing = 0;
  for (const auto& [name, text] : snapshots[0])
    for (std::size_t r = 1; r < snapshots.size(); ++r) {
      const auto it = snapshots[r].find(name);
      if (it == snapshots[r].end() || it->second != text) ++differing;
    }
  const bool same_set = snapshots[1].size() == snapshots[0].size() && snapshots[2].size() == snapshots[0].size();
  check("7.identical", ran && same_set && !snapshots[0].empty() && differing == 0,
        fmt::format("{} files per run, {} differ across 3 runs", snapshots[0].size(), differing));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{simulated_modes, fom_display,        fit_round_trip, bode_consistency,
                                                    oracle_equivalence, property_suites, determinism};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      check("error", false, e.what());
    }
  }
  std::cout << (failures == 0 ? "all acceptance checks passed" : fmt::format("{} acceptance check(s) failed", failures))
            << "\n";
  return failures == 0 ? 0 : 1;
}
