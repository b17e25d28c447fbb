#include <charconv>
#include <string>

#include "fbar/error.hpp"
#include "fbar/stack_sim.hpp"

namespace fbar {

namespace {

void set_field(Layer& layer, std::string_view field, double value) {
  MaterialProps& m = layer.material;
  if (field == "thickness_nm")
    layer.thickness = value * 1e-9;
  else if (field == "density")
    m.density = value;
  else if (field == "c33_e")
    m.c33_e = value;
  else if (field == "e33")
    m.e33 = value;
  else if (field == "eps33_s")
    m.eps33_s = value;
  else if (field == "mech_q")
    m.mech_q = value;
  else
    throw ValidationError("unknown layer field '" + std::string(field) + "'");
}

[[noreturn]] void bad_path(std::string_view path) {
  throw ValidationError("cannot resolve sweep parameter '" + std::string(path) + "'");
}

}  // namespace

Stack apply_parameter(const Stack& s, std::string_view path, double value) {
  if (!(value >= 0.0)) throw ValidationError("sweep values must be non-negative");
  Stack out = s;
  if (path == "area_um2") {
    if (!(value > 0.0)) throw ValidationError("area must be positive");
    out.area = value * 1e-12;
    return out;
  }
  const auto dot = path.find('.');
  if (dot == std::string_view::npos) bad_path(path);
  const std::string_view selector = path.substr(0, dot);
  const std::string_view field = path.substr(dot + 1);

  std::vector<std::size_t> targets;
  if (selector == "piezo") {
    targets.push_back(s.piezo_index);
  } else if (selector == "electrodes") {
    if (s.piezo_index > 0) targets.push_back(s.piezo_index - 1);
    if (s.piezo_index + 1 < s.layers.size()) targets.push_back(s.piezo_index + 1);
  } else if (selector.starts_with("layers[") && selector.ends_with("]")) {
    const std::string_view num = selector.substr(7, selector.size() - 8);
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), idx);
    if (ec != std::errc{} || ptr != num.data() + num.size() || idx >= s.layers.size()) bad_path(path);
    targets.push_back(idx);
  } else {
    bad_path(path);
  }
  if (targets.empty()) bad_path(path);

  const bool removing = field == "thickness_nm" && value == 0.0;
  if (!removing && !(value > 0.0) && field != "e33")
    throw ValidationError("parameter '" + std::string(path) + "' must be positive");
  for (std::size_t t : targets) {
    if (removing && t == s.piezo_index) throw ValidationError("the piezo layer cannot be removed");
    set_field(out.layers[t], field, value);
  }
  if (removing) {
    // Erase from the back so earlier indices stay valid.
    for (auto it = targets.rbegin(); it != targets.rend(); ++it) {
      out.layers.erase(out.layers.begin() + static_cast<std::ptrdiff_t>(*it));
      if (*it < out.piezo_index) --out.piezo_index;
    }
  }
  return out;
}

std::vector<SweepRow> sweep(const Stack& s, std::string_view path, std::span<const double> values,
                            const FrequencyGrid& g, const ModeFindOptions& opt) {
  std::vector<Stack> stacks;
  for (double v : values) stacks.push_back(apply_parameter(s, path, v));
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < stacks.size(); ++i) rows.push_back({values[i], simulate_modes(stacks[i], g, opt)});
  return rows;
}

}  // namespace fbar
