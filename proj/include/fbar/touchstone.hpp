#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fbar/network.hpp"
#include "fbar/spectrum.hpp"

namespace fbar {

enum class FreqUnit { hz, khz, mhz, ghz };
enum class DataFormat { ri, ma, db };

/// `# <unit> S <format> R <z0>`; the defaults are those of an absent option line.
struct OptionLine {
  FreqUnit unit = FreqUnit::ghz;
  DataFormat format = DataFormat::ma;
  double z0 = 50.0;

  bool operator==(const OptionLine&) const = default;
};

/// Touchstone v1 S-parameter file contents. Values are held as complex numbers
/// in file order (S11, or S11 S21 S12 S22); the format only matters on output.
struct TouchstoneDocument {
  int ports = 1;
  OptionLine options;
  std::vector<std::string> comments;  // text after '!' of full-line comments, written as a header
  std::vector<double> freq;           // Hz
  std::vector<std::vector<cplx>> rows;
};

double unit_scale(FreqUnit u);

/// `ports` = 0 infers the port count from the first data row (3 or 9 numbers).
/// Throws ParseError with the offending line number.
TouchstoneDocument parse_touchstone(std::string_view text, int ports = 0);
std::string write_touchstone(const TouchstoneDocument& doc);

/// 1 for .s1p, 2 for .s2p (case-insensitive); 0 otherwise.
int ports_from_extension(const std::filesystem::path& p);
TouchstoneDocument read_touchstone_file(const std::filesystem::path& p);

ComplexSpectrum one_port_s11(const TouchstoneDocument& doc);
TwoPortData two_port_data(const TouchstoneDocument& doc);
TouchstoneDocument make_one_port(const ComplexSpectrum& s11, const OptionLine& opt);
TouchstoneDocument make_two_port(const TwoPortData& d, const OptionLine& opt);

}  // namespace fbar
