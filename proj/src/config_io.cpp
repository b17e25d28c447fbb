#include "fbar/config_io.hpp"

#include <fstream>
#include <json.hpp>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "fbar/error.hpp"

namespace fbar {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
}

// Field access with path tracking; finish() rejects keys that were never read.
class StrictObject {
 public:
  StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(where() + "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) throw ValidationError("missing required field '" + child(key) + "'");
    return *it;
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ValidationError(child(key) + ": expected a number");
    return v.get<double>();
  }
  double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : (used_.insert(key), fallback); }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ValidationError(child(key) + ": expected a string");
    return v.get<std::string>();
  }

  template <typename Int>
  Int integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer() || (std::is_unsigned_v<Int> && v.get<long long>() < 0))
      throw ValidationError(child(key) + ": expected a non-negative integer");
    return v.get<Int>();
  }

  bool boolean(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_boolean()) throw ValidationError(child(key) + ": expected true or false");
    return v.get<bool>();
  }

  const json& array(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) throw ValidationError(child(key) + ": expected an array");
    return v;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) throw ValidationError("unknown field '" + child(k) + "'");
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string where() const { return path_.empty() ? "" : path_ + ": "; }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

// Value v such that v / scale reproduces `si` exactly, so configs round-trip.
double si_to_scaled(double si, double scale) {
  const double guess = si * scale;
  double lo = guess, hi = guess;
  for (int i = 0; i < 8; ++i) {
    if (lo / scale == si) return lo;
    if (hi / scale == si) return hi;
    lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
  }
  return guess;
}

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

}  // namespace

MaterialTable load_materials(std::string_view json_text) {
  const json root = parse_json(json_text);
  StrictObject top(root, "");
  const json& list = top.array("materials");
  top.finish();
  MaterialTable table;
  for (std::size_t i = 0; i < list.size(); ++i) {
    StrictObject o(list[i], indexed("materials", i));
    MaterialProps m;
    m.name = o.text("name");
    m.density = o.number("density_kg_m3");
    m.c33_e = o.number("c33_e_pa");
    m.e33 = o.number("e33_c_m2");
    m.eps33_s = o.number("eps33_s_f_m");
    const json& q = o.raw("mech_q");
    if (q.is_null())
      m.mech_q = std::numeric_limits<double>::infinity();
    else if (q.is_number())
      m.mech_q = q.get<double>();
    else
      throw ValidationError(o.child("mech_q") + ": expected a number or null");
    m.source_note = o.has("source_note") ? o.text("source_note") : "";
    o.finish();
    try {
      table.put(std::move(m));
    } catch (const ValidationError& e) {
      throw ValidationError(indexed("materials", i) + ": " + e.what());
    }
  }
  return table;
}

std::string dump_materials(const MaterialTable& table) {
  json list = json::array();
  for (const auto& [name, m] : table.entries()) {
    json o;
    o["name"] = m.name;
    o["density_kg_m3"] = m.density;
    o["c33_e_pa"] = m.c33_e;
    o["e33_c_m2"] = m.e33;
    o["eps33_s_f_m"] = m.eps33_s;
    o["mech_q"] = m.lossless() ? json(nullptr) : json(m.mech_q);
    o["source_note"] = m.source_note;
    list.push_back(std::move(o));
  }
  return json{{"materials", list}}.dump(2) + "\n";
}

Stack load_stack_config(std::string_view json_text, const MaterialTable& table) {
  const json root = parse_json(json_text);
  StrictObject top(root, "");
  Stack s;
  const json& layers = top.array("layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    StrictObject o(layers[i], indexed("layers", i));
    const std::string name = o.text("material");
    const double t_nm = o.number("thickness_nm");
    o.finish();
    if (!(t_nm > 0.0)) throw ValidationError(o.child("thickness_nm") + ": thickness must be positive");
    try {
      s.layers.push_back({table.at(name), t_nm / 1e9});
    } catch (const ValidationError& e) {
      throw ValidationError(o.child("material") + ": " + e.what());
    }
  }
  s.piezo_index = top.integer<std::size_t>("piezo_index");
  const double area_um2 = top.number("area_um2");
  if (!(area_um2 > 0.0)) throw ValidationError("area_um2: area must be positive");
  s.area = area_um2 / 1e12;
  if (top.has("boundary")) {
    const std::string b = top.text("boundary");
    if (b != "traction-free") throw ValidationError("boundary: only 'traction-free' is supported");
  }
  top.finish();
  require_valid(s);
  return s;
}

std::string dump_stack_config(const Stack& s) {
  json layers = json::array();
  for (const auto& l : s.layers) layers.push_back({{"material", l.material.name}, {"thickness_nm", si_to_scaled(l.thickness, 1e9)}});
  json o;
  o["layers"] = layers;
  o["piezo_index"] = s.piezo_index;
  o["area_um2"] = si_to_scaled(s.area, 1e12);
  o["boundary"] = "traction-free";
  return o.dump(2) + "\n";
}

FitConfig load_fit_config(std::string_view json_text) {
  const json root = parse_json(json_text);
  StrictObject top(root, "");
  FitConfig cfg;
  const json& windows = top.array("mode_windows");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    StrictObject o(windows[i], indexed("mode_windows", i));
    ModeWindow w;
    w.lo = o.number("lo_hz");
    w.hi = o.number("hi_hz");
    if (o.has("label")) w.label = o.text("label");
    o.finish();
    cfg.mode_windows.push_back(w);
  }
  if (top.has("em_bands")) {
    const json& bands = top.array("em_bands");
    for (std::size_t i = 0; i < bands.size(); ++i) {
      StrictObject o(bands[i], indexed("em_bands", i));
      Band b{o.number("lo_hz"), o.number("hi_hz")};
      o.finish();
      cfg.em_bands.push_back(b);
    }
  }
  if (top.has("weights")) {
    StrictObject w(top.raw("weights"), "weights");
    cfg.weight_amplitude = w.number_or("amplitude", cfg.weight_amplitude);
    cfg.weight_phase = w.number_or("phase", cfg.weight_phase);
    w.finish();
  }
  if (top.has("max_iterations")) cfg.max_iterations = top.integer<int>("max_iterations");
  cfg.tolerance = top.number_or("tolerance", cfg.tolerance);
  if (top.has("seed")) cfg.seed = top.integer<std::uint64_t>("seed");
  if (top.has("starts")) cfg.starts = top.integer<std::size_t>("starts");
  if (top.has("fit_r0")) cfg.fit_r0 = top.boolean("fit_r0");
  cfg.prominence_db = top.number_or("prominence_db", cfg.prominence_db);
  top.finish();
  cfg.validate();
  return cfg;
}

std::string dump_fit_config(const FitConfig& cfg) {
  json windows = json::array();
  for (const auto& w : cfg.mode_windows) {
    json o{{"lo_hz", w.lo}, {"hi_hz", w.hi}};
    if (!w.label.empty()) o["label"] = w.label;
    windows.push_back(o);
  }
  json o;
  o["mode_windows"] = windows;
  if (!cfg.em_bands.empty()) {
    json bands = json::array();
    for (const auto& b : cfg.em_bands) bands.push_back({{"lo_hz", b.lo}, {"hi_hz", b.hi}});
    o["em_bands"] = bands;
  }
  o["weights"] = {{"amplitude", cfg.weight_amplitude}, {"phase", cfg.weight_phase}};
  o["max_iterations"] = cfg.max_iterations;
  o["tolerance"] = cfg.tolerance;
  o["seed"] = cfg.seed;
  o["starts"] = cfg.starts;
  o["fit_r0"] = cfg.fit_r0;
  o["prominence_db"] = cfg.prominence_db;
  return o.dump(2) + "\n";
}

MbvdParams load_mbvd(std::string_view json_text) {
  const json root = parse_json(json_text);
  StrictObject top(root, "");
  MbvdParams p;
  p.r_s = top.number_or("r_s_ohm", 0.0);
  p.l_s = top.number_or("l_s_h", 0.0);
  p.c_0 = top.number("c_0_f");
  p.r_0 = top.number_or("r_0_ohm", 0.0);
  const json& branches = top.array("branches");
  for (std::size_t i = 0; i < branches.size(); ++i) {
    StrictObject o(branches[i], indexed("branches", i));
    MotionalBranch b{o.number("r_m_ohm"), o.number("l_m_h"), o.number("c_m_f")};
    o.finish();
    p.branches.push_back(b);
  }
  top.finish();
  require_valid(p);
  return p;
}

std::string dump_mbvd(const MbvdParams& p) {
  json branches = json::array();
  for (const auto& b : p.branches) branches.push_back({{"r_m_ohm", b.r_m}, {"l_m_h", b.l_m}, {"c_m_f", b.c_m}});
  json o;
  o["r_s_ohm"] = p.r_s;
  o["l_s_h"] = p.l_s;
  o["c_0_f"] = p.c_0;
  o["r_0_ohm"] = p.r_0;
  o["branches"] = branches;
  return o.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fbar
