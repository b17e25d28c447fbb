#include "fbar/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "fbar/bode_q.hpp"
#include "fbar/config_io.hpp"
#include "fbar/csv_io.hpp"
#include "fbar/error.hpp"
#include "fbar/fit.hpp"
#include "fbar/manifest.hpp"
#include "fbar/mbvd.hpp"
#include "fbar/network.hpp"
#include "fbar/stack_sim.hpp"
#include "fbar/survey.hpp"
#include "fbar/touchstone.hpp"

namespace fbar {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::string out_dir;
  std::string materials;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string topology = "series-thru";
  std::size_t smooth_window = 11;
  double z0 = 50.0;
};

struct GridOptions {
  double from = 0.0;
  double to = 0.0;
  std::size_t points = 0;
  bool log = false;

  FrequencyGrid grid() const {
    FrequencyGrid g{from, to, points, log ? Spacing::logarithmic : Spacing::linear};
    g.validate();
    return g;
  }
};

void add_grid_options(CLI::App* sub, GridOptions& g, double from, double to, std::size_t points) {
  g = {from, to, points, false};
  sub->add_option("--from", g.from, "Start frequency [Hz]")->capture_default_str();
  sub->add_option("--to", g.to, "Stop frequency [Hz]")->capture_default_str();
  sub->add_option("--points", g.points, "Number of grid points")->capture_default_str();
  sub->add_flag("--log", g.log, "Logarithmic spacing");
}

// Output files go only into the output directory, under plain file names.
class Run {
 public:
  Run(std::string subcommand, const GlobalOptions& opt, const std::vector<std::string>& args, std::ostream& err)
      : opt_(opt), err_(err) {
    manifest_.subcommand = std::move(subcommand);
    manifest_.arguments = args;
    out_dir_ = opt.out_dir;
    if (out_dir_.empty()) {
      const char* env = std::getenv("FBAR_OUT_DIR");
      out_dir_ = env && *env ? env : ".";
    }
  }

  std::string read(const std::string& path) {
    const std::string text = read_text_file(path);
    manifest_.inputs.push_back({fs::weakly_canonical(fs::absolute(path)).string(), sha256_hex(text)});
    return text;
  }

  void write(const std::string& name, const std::string& content) {
    const fs::path p(name);
    if (name.empty() || p.has_parent_path() || p.is_absolute() || name == "." || name == "..")
      throw ValidationError("output name '" + name + "' must be a plain file name");
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    std::ofstream f(out_dir_ / p, std::ios::binary | std::ios::trunc);
    if (!f) throw RuntimeFailure("cannot write '" + (out_dir_ / p).string() + "'");
    f << content;
    f.close();
    if (!f) throw RuntimeFailure("write failed for '" + (out_dir_ / p).string() + "'");
    manifest_.outputs.push_back({name, sha256_hex(content)});
  }

  void finish() { write(manifest_.subcommand + ".manifest.json", manifest_.to_json()); }

  MaterialTable materials() {
    MaterialTable t = MaterialTable::builtin();
    if (!opt_.materials.empty()) t.merge(load_materials(read(opt_.materials)));
    return t;
  }

  Stack stack(const std::string& path) {
    if (path.empty()) return default_stack();
    return load_stack_config(read(path), materials());
  }

  Topology topology() const {
    if (opt_.topology == "series-thru") return Topology::series_thru;
    if (opt_.topology == "shunt") return Topology::shunt;
    throw ValidationError("--topology must be series-thru or shunt");
  }

  std::ostream& err() { return err_; }
  const GlobalOptions& opt() const { return opt_; }

 private:
  const GlobalOptions& opt_;
  std::ostream& err_;
  fs::path out_dir_;
  RunManifest manifest_;
};

std::string extension(const std::string& path) {
  std::string e = fs::path(path).extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return e;
}

ComplexSpectrum drop_flagged(const FlaggedSpectrum& f, Run& run, std::string_view what) {
  ComplexSpectrum out;
  out.quantity = f.spectrum.quantity;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < f.spectrum.size(); ++i) {
    if (f.flagged[i]) {
      ++dropped;
      continue;
    }
    out.freq.push_back(f.spectrum.freq[i]);
    out.values.push_back(f.spectrum.values[i]);
  }
  if (dropped) run.err() << fmt::format("warning: {} singular point(s) dropped in {}\n", dropped, what);
  return out;
}

ComplexSpectrum load_admittance(Run& run, const std::string& path) {
  const std::string ext = extension(path);
  const std::string text = run.read(path);
  if (ext == ".s1p") {
    const auto doc = parse_touchstone(text, 1);
    return drop_flagged(s11_to_y(one_port_s11(doc), doc.options.z0), run, "S11 -> Y");
  }
  if (ext == ".s2p") {
    const auto y = s_to_y(two_port_data(parse_touchstone(text, 2)));
    if (y.flagged_count())
      run.err() << fmt::format("warning: {} singular point(s) dropped in S -> Y\n", y.flagged_count());
    return device_admittance(y, run.topology());
  }
  if (ext == ".csv") {
    ComplexSpectrum s = parse_spectrum_csv(text);
    switch (s.quantity) {
      case Quantity::admittance: return s;
      case Quantity::impedance: return s.reciprocal();
      case Quantity::reflection: return drop_flagged(s11_to_y(s, run.opt().z0), run, "S11 -> Y");
    }
  }
  throw ValidationError("unsupported input '" + path + "' (expected .s1p, .s2p or .csv)");
}

ComplexSpectrum load_reflection(Run& run, const std::string& path) {
  if (extension(path) == ".s1p") return one_port_s11(parse_touchstone(run.read(path), 1));
  return drop_flagged(y_to_s11(load_admittance(run, path), run.opt().z0), run, "Y -> S11");
}

std::pair<double, double> parse_band(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ValidationError("band '" + s + "' must be LO,HI");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ValidationError("band '" + s + "' must be LO,HI");
  }
}

void print_modes(std::ostream& out, const std::vector<ModeMetrics>& modes) {
  for (const auto& m : modes)
    out << fmt::format("{:<4} f_s={:.6g} Hz f_p={:.6g} Hz k2={:.4f} Q_p={:.2f} FoM={}\n", m.label.empty() ? "-" : m.label,
                       m.f_s, m.f_p, m.k2, m.q_p, std::isfinite(m.fom) ? format_fom(m.fom) : "nan");
}

std::vector<ModeMetrics> metrics_with_fom(std::vector<ModeMetrics> modes) {
  for (auto& m : modes) m.fom = std::isfinite(m.q_p) ? m.k2 * m.q_p : std::nan("");
  return modes;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thin-film bulk acoustic resonator modelling and extraction", "fbar"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GlobalOptions g;
  app.add_option("--out-dir", g.out_dir, "Output directory (default: $FBAR_OUT_DIR or .)");
  app.add_option("--materials", g.materials, "Materials table JSON merged over the built-in table");
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed (fit starts, synthetic noise)");
  app.add_option("--topology", g.topology, "Two-port de-embedding topology")
      ->check(CLI::IsMember({"series-thru", "shunt"}))
      ->capture_default_str();
  app.add_option("--smooth-window", g.smooth_window, "Bode Q moving-average window (odd)")->capture_default_str();
  app.add_option("--z0", g.z0, "Reference impedance for one-port conversions [ohm]")->capture_default_str();

  std::function<void(Run&)> action;
  auto register_sub = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  // simulate
  std::string sim_stack, sim_out = "admittance.csv";
  std::size_t sim_nodes = 0;
  GridOptions sim_grid;
  auto* simulate = register_sub("simulate", "Stack admittance and thickness modes");
  simulate->add_option("--stack", sim_stack, "Stack config JSON (default: built-in stack)");
  add_grid_options(simulate, sim_grid, 5e9, 80e9, 2001);
  simulate->add_option("--fe-nodes", sim_nodes, "Use the finite-element solver with this many nodes");
  simulate->add_option("--out", sim_out, "Admittance CSV name")->capture_default_str();
  simulate->callback([&] {
    action = [&](Run& run) {
      const Stack s = run.stack(sim_stack);
      const FrequencyGrid grid = sim_grid.grid();
      const ComplexSpectrum y = sim_nodes ? fd_oracle_admittance(s, grid, sim_nodes) : stack_admittance(s, grid);
      const ModeSearch found = find_modes(y);
      for (const auto& d : found.diagnostics) run.err() << "note: " << d << "\n";
      auto modes = mode_metrics(y, found.modes);
      label_thickness_modes(modes);
      modes = metrics_with_fom(modes);
      run.write(sim_out, write_spectrum_csv(y));
      run.write("modes.json", modes_to_json(modes));
      print_modes(out, modes);
    };
  });

  // modes
  std::string modes_in, modes_labels = "thickness";
  double modes_prominence = 3.0;
  auto* modes_cmd = register_sub("modes", "Resonance metrics of a measured or simulated spectrum");
  modes_cmd->add_option("--input", modes_in, "Spectrum (.s1p, .s2p or CSV)")->required();
  modes_cmd->add_option("--prominence-db", modes_prominence, "Minimum max/min ratio of a mode")->capture_default_str();
  modes_cmd->add_option("--labels", modes_labels, "Mode labels")
      ->check(CLI::IsMember({"thickness", "none"}))
      ->capture_default_str();
  modes_cmd->callback([&] {
    action = [&](Run& run) {
      const ComplexSpectrum y = load_admittance(run, modes_in);
      ModeFindOptions o;
      o.prominence_db = modes_prominence;
      const ModeSearch found = find_modes(y, o);
      for (const auto& d : found.diagnostics) run.err() << "note: " << d << "\n";
      auto modes = mode_metrics(y, found.modes);
      if (modes_labels == "thickness") label_thickness_modes(modes);
      modes = metrics_with_fom(modes);
      run.write("modes.json", modes_to_json(modes));
      print_modes(out, modes);
    };
  });

  // fit
  std::string fit_in, fit_cfg;
  std::vector<std::string> fit_windows;
  auto* fit = register_sub("fit", "Two-stage mBVD extraction");
  fit->add_option("--input", fit_in, "Spectrum (.s1p, .s2p or CSV)")->required();
  fit->add_option("--config", fit_cfg, "Fit config JSON");
  fit->add_option("--window", fit_windows, "Mode window LO,HI [Hz] (repeatable; replaces the config's windows)");
  fit->callback([&] {
    action = [&](Run& run) {
      FitConfig cfg;
      if (!fit_cfg.empty()) cfg = load_fit_config(run.read(fit_cfg));
      if (!fit_windows.empty()) {
        cfg.mode_windows.clear();
        for (const auto& w : fit_windows) {
          const auto [lo, hi] = parse_band(w);
          cfg.mode_windows.push_back({lo, hi, ""});
        }
      }
      if (cfg.mode_windows.empty()) throw ValidationError("fit needs mode windows (--config or --window)");
      if (g.seed_given) cfg.seed = g.seed;
      cfg.validate();
      const ComplexSpectrum y = load_admittance(run, fit_in);
      const FitResult r = fit_mbvd(y, cfg);
      for (const auto& d : r.diagnostics) run.err() << "note: " << d << "\n";
      if (!r.converged()) run.err() << "warning: fit reached the iteration limit before converging\n";
      const ComplexSpectrum model = mbvd_admittance(r.params, y.freq);
      std::string res = "freq_hz,data_re,data_im,model_re,model_im,log10_mag_err,phase_err_rad\n";
      for (std::size_t i = 0; i < y.size(); ++i) {
        const cplx d = y.values[i], m = model.values[i];
        res += fmt::format("{},{},{},{},{},{},{}\n", format_double(y.freq[i]), format_double(d.real()),
                           format_double(d.imag()), format_double(m.real()), format_double(m.imag()),
                           format_double(std::log10(std::abs(m)) - std::log10(std::abs(d))),
                           format_double(std::arg(m / d)));
      }
      run.write("mbvd.json", dump_mbvd(r.params));
      run.write("fit_report.json", fit_result_to_json(r));
      run.write("fit_residuals.csv", res);
      print_modes(out, metrics_with_fom(derived_metrics(r.params)));
    };
  });

  // bodeq
  std::string bq_in, bq_model, bq_form = "complex";
  std::vector<std::string> bq_bands;
  GridOptions bq_grid;
  auto* bodeq = register_sub("bodeq", "Frequency-resolved Bode Q");
  auto* bq_in_opt = bodeq->add_option("--input", bq_in, "Spectrum (.s1p, .s2p or CSV)");
  bodeq->add_option("--model", bq_model, "mBVD params JSON instead of measured data")->excludes(bq_in_opt);
  add_grid_options(bodeq, bq_grid, 10e9, 70e9, 6001);
  bodeq->add_option("--form", bq_form, "Estimator")
      ->check(CLI::IsMember({"complex", "group-delay"}))
      ->capture_default_str();
  bodeq->add_option("--band", bq_bands, "Report the smoothed maximum inside LO,HI [Hz] (repeatable)");
  bodeq->callback([&] {
    action = [&](Run& run) {
      ComplexSpectrum s11;
      if (!bq_model.empty()) {
        const MbvdParams p = load_mbvd(run.read(bq_model));
        s11 = drop_flagged(y_to_s11(mbvd_admittance(p, bq_grid.grid()), g.z0), run, "Y -> S11");
      } else if (!bq_in.empty()) {
        s11 = load_reflection(run, bq_in);
      } else {
        throw ValidationError("bodeq needs --input or --model");
      }
      const auto form = bq_form == "complex" ? BodeQForm::complex_derivative : BodeQForm::group_delay;
      const BodeQSeries raw = bode_q(s11, form);
      const auto smooth = smooth_ma(raw.q, g.smooth_window);
      run.write("bodeq.csv", write_bode_csv(raw, smooth));
      if (!bq_bands.empty()) {
        nlohmann::json peaks = nlohmann::json::array();
        for (const auto& b : bq_bands) {
          const auto [lo, hi] = parse_band(b);
          const BodeQPeak pk = bode_q_peak(raw, lo, hi, g.smooth_window);
          peaks.push_back({{"lo_hz", lo}, {"hi_hz", hi}, {"q_max", pk.q}, {"f_hz", pk.f}});
          out << fmt::format("band {:.6g}-{:.6g} Hz: Bode Q max {:.2f} at {:.6g} Hz\n", lo, hi, pk.q, pk.f);
        }
        run.write("bodeq_peaks.json", nlohmann::json{{"smooth_window", g.smooth_window}, {"peaks", peaks}}.dump(2) + "\n");
      }
    };
  });

  // synth
  std::vector<double> syn_fs, syn_k2, syn_q;
  double syn_c0 = 0.0, syn_rs = 0.0, syn_ls = 0.0, syn_r0 = 0.0;
  std::optional<double> syn_noise;
  int syn_ports = 1;
  GridOptions syn_grid;
  auto* synth = register_sub("synth", "mBVD from (f_s, k2, Q) targets plus a synthetic Touchstone file");
  synth->add_option("--fs", syn_fs, "Series resonance per mode [Hz]")->required();
  synth->add_option("--k2", syn_k2, "Coupling per mode")->required();
  synth->add_option("--q", syn_q, "Motional Q per mode")->required();
  synth->add_option("--c0", syn_c0, "Static capacitance [F]")->required();
  synth->add_option("--rs", syn_rs, "Series resistance [ohm]");
  synth->add_option("--ls", syn_ls, "Series inductance [H]");
  synth->add_option("--r0", syn_r0, "Static-branch resistance [ohm]");
  synth->add_option("--noise-db", syn_noise, "Relative complex noise level, e.g. -40");
  synth->add_option("--ports", syn_ports, "1 (.s1p) or 2 (.s2p)")->check(CLI::IsMember({1, 2}));
  add_grid_options(synth, syn_grid, 0.0, 0.0, 4001);
  synth->callback([&] {
    action = [&](Run& run) {
      if (syn_fs.size() != syn_k2.size() || syn_fs.size() != syn_q.size())
        throw ValidationError("--fs, --k2 and --q need one value per mode");
      MbvdParams p{syn_rs, syn_ls, syn_c0, syn_r0, {}};
      if (!(syn_c0 > 0.0)) throw ValidationError("--c0 must be positive");
      FitConfig cfg;
      for (std::size_t i = 0; i < syn_fs.size(); ++i) {
        const MotionalBranch b = branch_from_targets(syn_fs[i], syn_k2[i], syn_q[i], syn_c0);
        p.branches.push_back(b);
        const double fp = syn_fs[i] * std::sqrt(1.0 + b.c_m / syn_c0);
        cfg.mode_windows.push_back({syn_fs[i] * 0.92, fp * 1.08, fmt::format("M{}", i + 1)});
      }
      require_valid(p);
      cfg.validate();
      GridOptions go = syn_grid;
      if (go.from == 0.0) go.from = 0.5 * *std::min_element(syn_fs.begin(), syn_fs.end());
      if (go.to == 0.0) go.to = 1.5 * *std::max_element(syn_fs.begin(), syn_fs.end());
      ComplexSpectrum y = mbvd_admittance(p, go.grid());
      if (syn_noise) y = add_relative_noise(y, *syn_noise, g.seed);
      const OptionLine opt{FreqUnit::hz, DataFormat::ri, g.z0};
      if (syn_ports == 1) {
        const auto s11 = drop_flagged(y_to_s11(y, g.z0), run, "Y -> S11");
        run.write("synth.s1p", write_touchstone(make_one_port(s11, opt)));
      } else {
        TwoPortData d;
        d.z0 = {g.z0, g.z0};
        d.freq = y.freq;
        const bool series = run.topology() == Topology::series_thru;
        for (const cplx v : y.values)
          d.s.push_back(series ? series_element_s(1.0 / v, g.z0) : shunt_element_s(1.0 / v, g.z0));
        run.write("synth.s2p", write_touchstone(make_two_port(d, opt)));
      }
      run.write("mbvd.json", dump_mbvd(p));
      run.write("fit_config.json", dump_fit_config(cfg));
      print_modes(out, metrics_with_fom(derived_metrics(p)));
    };
  });

  // sweep
  std::string sw_stack, sw_param;
  std::vector<double> sw_values;
  GridOptions sw_grid;
  auto* sweep_cmd = register_sub("sweep", "Mode metrics against one stack parameter");
  sweep_cmd->add_option("--stack", sw_stack, "Stack config JSON (default: built-in stack)");
  sweep_cmd->add_option("--param", sw_param, "Parameter path, e.g. electrodes.thickness_nm")->required();
  sweep_cmd->add_option("--values", sw_values, "Parameter values")->required()->delimiter(',');
  add_grid_options(sweep_cmd, sw_grid, 5e9, 80e9, 2001);
  sweep_cmd->callback([&] {
    action = [&](Run& run) {
      const auto rows = sweep(run.stack(sw_stack), sw_param, sw_values, sw_grid.grid());
      std::vector<SweepRow> with_fom = rows;
      for (auto& r : with_fom) r.modes = metrics_with_fom(r.modes);
      run.write("sweep.csv", write_sweep_csv(with_fom));
    };
  });

  // convert
  std::string cv_in, cv_out, cv_format = "ri", cv_unit = "hz";
  auto* convert = register_sub("convert", "Touchstone <-> CSV");
  convert->add_option("--input", cv_in, "Input file (.s1p, .s2p or .csv)")->required();
  convert->add_option("--out", cv_out, "Output file name; its extension selects the format")->required();
  convert->add_option("--format", cv_format, "Touchstone number format")
      ->check(CLI::IsMember({"ri", "ma", "db"}))
      ->capture_default_str();
  convert->add_option("--unit", cv_unit, "Touchstone frequency unit")
      ->check(CLI::IsMember({"hz", "khz", "mhz", "ghz"}))
      ->capture_default_str();
  convert->callback([&] {
    action = [&](Run& run) {
      const std::string in_ext = extension(cv_in), out_ext = extension(cv_out);
      const std::string text = run.read(cv_in);
      if (in_ext == ".s1p" || in_ext == ".s2p") {
        if (out_ext != ".csv") throw ValidationError("Touchstone input converts to .csv");
        const auto doc = parse_touchstone(text, in_ext == ".s1p" ? 1 : 2);
        run.write(cv_out, doc.ports == 1 ? write_spectrum_csv(one_port_s11(doc)) : write_two_port_csv(two_port_data(doc)));
      } else if (in_ext == ".csv") {
        OptionLine opt;
        opt.unit = cv_unit == "hz" ? FreqUnit::hz : cv_unit == "khz" ? FreqUnit::khz : cv_unit == "mhz" ? FreqUnit::mhz : FreqUnit::ghz;
        opt.format = cv_format == "ri" ? DataFormat::ri : cv_format == "ma" ? DataFormat::ma : DataFormat::db;
        opt.z0 = g.z0;
        if (out_ext == ".s1p") {
          ComplexSpectrum s = parse_spectrum_csv(text);
          if (s.quantity == Quantity::impedance) s = s.reciprocal();
          if (s.quantity == Quantity::admittance) s = drop_flagged(y_to_s11(s, g.z0), run, "Y -> S11");
          run.write(cv_out, write_touchstone(make_one_port(s, opt)));
        } else if (out_ext == ".s2p") {
          run.write(cv_out, write_touchstone(make_two_port(parse_two_port_csv(text, g.z0), opt)));
        } else {
          throw ValidationError("CSV input converts to .s1p or .s2p");
        }
      } else {
        throw ValidationError("unsupported input '" + cv_in + "'");
      }
    };
  });

  // survey
  std::string sv_in, sv_format = "csv";
  double sv_min = 15e9;
  bool sv_no_builtin = false;
  auto* survey = register_sub("survey", "Rank resonators by FoM = k2 Q");
  survey->add_option("--input", sv_in, "Survey CSV (label,frequency_hz,k2,q,technology)");
  survey->add_flag("--no-builtin", sv_no_builtin, "Leave out the built-in entries");
  survey->add_option("--min-freq", sv_min, "Minimum frequency [Hz]")->capture_default_str();
  survey->add_option("--format", sv_format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  survey->callback([&] {
    action = [&](Run& run) {
      std::vector<SurveyEntry> entries;
      if (!sv_no_builtin) entries = builtin_survey();
      if (!sv_in.empty()) {
        auto more = parse_survey_csv(run.read(sv_in));
        entries.insert(entries.end(), more.begin(), more.end());
      }
      const auto ranked = rank(entries, sv_min);
      run.write(sv_format == "csv" ? "survey.csv" : "survey.json",
                sv_format == "csv" ? write_survey_csv(ranked) : write_survey_json(ranked));
      for (const auto& e : ranked)
        out << fmt::format("{:<16} {:>8.2f} GHz  FoM {}\n", e.label, e.frequency / 1e9, format_fom(e.fom()));
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    g.seed_given = seed_opt->count() > 0;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return kExitValidation;
  }

  try {
    std::string name;
    for (const auto* sub : app.get_subcommands()) name = sub->get_name();
    Run run(name, g, args, err);
    action(run);
    run.finish();
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const RuntimeFailure& e) {
    err << "failure: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace fbar
