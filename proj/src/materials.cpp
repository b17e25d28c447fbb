#include "fbar/materials.hpp"

#include <cmath>

#include "fbar/error.hpp"
#include "fbar/spectrum.hpp"

namespace fbar {

double stiffened_stiffness(const MaterialProps& m) {
  if (m.e33 == 0.0) return m.c33_e;
  return m.c33_e + m.e33 * m.e33 / m.eps33_s;
}

std::complex<double> lossy_stiffness(const MaterialProps& m) {
  const double c = stiffened_stiffness(m);
  if (m.lossless()) return {c, 0.0};
  return {c, c / m.mech_q};
}

double longitudinal_velocity(const MaterialProps& m) {
  return std::sqrt(stiffened_stiffness(m) / m.density);
}

double intrinsic_kt2(const MaterialProps& m) {
  if (m.e33 == 0.0) return 0.0;
  return m.e33 * m.e33 / (m.eps33_s * stiffened_stiffness(m));
}

std::vector<std::string> validate_material(const MaterialProps& m) {
  std::vector<std::string> out;
  const std::string who = "material '" + m.name + "': ";
  if (m.name.empty()) out.push_back("material name is empty");
  if (!(m.density > 0.0) || !std::isfinite(m.density)) out.push_back(who + "density must be positive");
  if (!(m.c33_e > 0.0) || !std::isfinite(m.c33_e)) out.push_back(who + "c33_e must be positive");
  if (!(m.eps33_s > 0.0) || !std::isfinite(m.eps33_s)) out.push_back(who + "eps33_s must be positive");
  if (!(m.e33 >= 0.0) || !std::isfinite(m.e33)) out.push_back(who + "e33 must be non-negative");
  if (!(m.mech_q > 0.0)) out.push_back(who + "mech_q must be positive");
  return out;
}

std::vector<Diagnostic> validate_stack(const Stack& s) {
  using Sev = Diagnostic::Severity;
  std::vector<Diagnostic> out;
  if (s.layers.empty()) {
    out.push_back({Sev::error, "no layers"});
    return out;
  }
  for (std::size_t i = 0; i < s.layers.size(); ++i) {
    const Layer& l = s.layers[i];
    if (!(l.thickness > 0.0) || !std::isfinite(l.thickness))
      out.push_back({Sev::error, "layer " + std::to_string(i) + ": thickness must be positive"});
    for (auto& msg : validate_material(l.material))
      out.push_back({Sev::error, "layer " + std::to_string(i) + ": " + msg});
  }
  if (s.piezo_index >= s.layers.size()) {
    out.push_back({Sev::error, "piezo_index " + std::to_string(s.piezo_index) + " out of range"});
  } else if (s.layers[s.piezo_index].material.e33 == 0.0) {
    out.push_back({Sev::warning, "piezo layer has e33 = 0"});
  }
  if (!(s.area > 0.0) || !std::isfinite(s.area)) out.push_back({Sev::error, "area must be positive"});
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::error) return true;
  return false;
}

void require_valid(const Stack& s) {
  const auto diags = validate_stack(s);
  if (!has_errors(diags)) return;
  std::string msg = "invalid stack:";
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::error) msg += " " + d.message + ";";
  throw ValidationError(msg);
}

MaterialTable MaterialTable::builtin() {
  MaterialTable t;
  // Stack-wide structural Q of 50 for every entry.
  constexpr double q = 50.0;
  t.put({"Al", 2700.0, 111e9, 0.0, kEps0, q,
         "Polycrystalline aluminium, longitudinal modulus 111 GPa (v = 6.41 km/s), "
         "rho = 2700 kg/m^3; handbook values (Kaye & Laby). Permittivity unused (eps0)."});
  t.put({"AlN", 3260.0, 395e9, 1.55, 9.2 * kEps0, q,
         "Wurtzite AlN, c33 = 395 GPa, e33 = 1.55 C/m^2, rho = 3260 kg/m^3 "
         "(Tsubouchi & Mikoshiba, IEEE Trans. Sonics Ultrason. SU-32, 1985); eps33_S = 9.2 eps0."});
  t.put({"ScAlN30", 3400.0, 270e9, 2.3, 15.0 * kEps0, q,
         "Sc0.3Al0.7N representative values: c33 = 270 GPa and e33 = 2.3 C/m^2 within the "
         "spread of first-principles and sputtered-film reports for x ~ 0.3 (Tasnadi et al., "
         "PRL 104, 137601, 2010; Caro et al., JPCM 27, 245901, 2015); rho = 3400 kg/m^3; "
         "eps33_S = 15 eps0."});
  t.put({"Si", 2329.0, 165.7e9, 0.0, 11.7 * kEps0, q,
         "Single-crystal Si, c11 = 165.7 GPa along <100>, rho = 2329 kg/m^3 (Hopcroft et al., "
         "JMEMS 19, 2010); eps = 11.7 eps0."});
  t.put({"SiO2", 2200.0, 78.5e9, 0.0, 3.9 * kEps0, q,
         "Amorphous SiO2 (fused silica), c11 = 78.5 GPa, rho = 2200 kg/m^3; eps = 3.9 eps0."});
  t.put({"Pt", 21450.0, 347e9, 0.0, kEps0, q,
         "Polycrystalline platinum, c11 = 347 GPa, rho = 21450 kg/m^3 (Simmons & Wang, "
         "Single Crystal Elastic Constants, 1971). Permittivity unused (eps0)."});
  return t;
}

void MaterialTable::put(MaterialProps m) {
  const auto problems = validate_material(m);
  if (!problems.empty()) throw ValidationError(problems.front());
  std::string key = m.name;
  entries_.insert_or_assign(std::move(key), std::move(m));
}

const MaterialProps& MaterialTable::at(const std::string& name) const {
  const auto it = entries_.find(name);
  if (it != entries_.end()) return it->second;
  std::string known;
  for (const auto& [k, v] : entries_) known += (known.empty() ? "" : ", ") + k;
  throw ValidationError("unknown material '" + name + "' (known: " + known + ")");
}

std::vector<std::string> MaterialTable::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

void MaterialTable::merge(const MaterialTable& overrides) {
  for (const auto& [k, v] : overrides.entries_) entries_.insert_or_assign(k, v);
}

Stack default_stack(const MaterialTable& table) {
  Stack s;
  s.layers = {{table.at("Al"), 37e-9}, {table.at("ScAlN30"), 85e-9}, {table.at("Al"), 37e-9}};
  s.piezo_index = 1;
  s.area = 112e-12;
  return s;
}

}  // namespace fbar
