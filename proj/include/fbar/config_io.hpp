#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fbar/fit.hpp"
#include "fbar/materials.hpp"
#include "fbar/mbvd.hpp"

namespace fbar {

// JSON readers are strict: unknown fields and missing required fields raise
// ValidationError naming the field path (e.g. `layers[1].thickness_nm`).
// Malformed JSON raises ParseError.

/// {"materials": [{name, density_kg_m3, c33_e_pa, e33_c_m2, eps33_s_f_m, mech_q, source_note}]}
/// mech_q = null means lossless.
MaterialTable load_materials(std::string_view json_text);
std::string dump_materials(const MaterialTable& table);

/// {"layers": [{"material", "thickness_nm"}], "piezo_index", "area_um2", "boundary"}
Stack load_stack_config(std::string_view json_text, const MaterialTable& table);
std::string dump_stack_config(const Stack& s);

/// {"mode_windows": [{"lo_hz", "hi_hz", "label"?}], "em_bands"?: [{"lo_hz", "hi_hz"}],
///  "weights"?: {"amplitude", "phase"}, "max_iterations"?, "tolerance"?, "seed"?,
///  "starts"?, "fit_r0"?, "prominence_db"?}
FitConfig load_fit_config(std::string_view json_text);
std::string dump_fit_config(const FitConfig& cfg);

/// {"r_s_ohm", "l_s_h", "c_0_f", "r_0_ohm", "branches": [{"r_m_ohm", "l_m_h", "c_m_f"}]}
MbvdParams load_mbvd(std::string_view json_text);
std::string dump_mbvd(const MbvdParams& p);

std::string read_text_file(const std::filesystem::path& p);

}  // namespace fbar
