#include "fbar/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "fbar/error.hpp"

namespace fbar {

namespace {

constexpr double kDeg = kPi / 180.0;

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool parse_number(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size() && std::isfinite(out);
}

OptionLine parse_option_line(std::string_view body, std::size_t line) {
  OptionLine opt;
  const auto toks = split_ws(body);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string t = upper(toks[i]);
    if (t == "HZ") opt.unit = FreqUnit::hz;
    else if (t == "KHZ") opt.unit = FreqUnit::khz;
    else if (t == "MHZ") opt.unit = FreqUnit::mhz;
    else if (t == "GHZ") opt.unit = FreqUnit::ghz;
    else if (t == "S") continue;
    else if (t == "Y" || t == "Z" || t == "H" || t == "G")
      throw ParseError(line, "only S parameters are supported (got " + t + ")");
    else if (t == "RI") opt.format = DataFormat::ri;
    else if (t == "MA") opt.format = DataFormat::ma;
    else if (t == "DB") opt.format = DataFormat::db;
    else if (t == "R") {
      if (i + 1 >= toks.size() || !parse_number(toks[i + 1], opt.z0) || !(opt.z0 > 0.0))
        throw ParseError(line, "option line: R must be followed by a positive reference impedance");
      ++i;
    } else {
      throw ParseError(line, "malformed option line: unexpected token '" + std::string(toks[i]) + "'");
    }
  }
  return opt;
}

cplx decode(double a, double b, DataFormat f) {
  switch (f) {
    case DataFormat::ri: return {a, b};
    case DataFormat::ma: return std::polar(a, b * kDeg);
    case DataFormat::db: return std::polar(std::pow(10.0, a / 20.0), b * kDeg);
  }
  return {a, b};
}

std::pair<double, double> encode(cplx v, DataFormat f) {
  switch (f) {
    case DataFormat::ri: return {v.real(), v.imag()};
    case DataFormat::ma: return {std::abs(v), std::arg(v) / kDeg};
    case DataFormat::db: return {20.0 * std::log10(std::abs(v)), std::arg(v) / kDeg};
  }
  return {v.real(), v.imag()};
}

const char* unit_name(FreqUnit u) {
  switch (u) {
    case FreqUnit::hz: return "HZ";
    case FreqUnit::khz: return "KHZ";
    case FreqUnit::mhz: return "MHZ";
    case FreqUnit::ghz: return "GHZ";
  }
  return "GHZ";
}

const char* format_name(DataFormat f) {
  switch (f) {
    case DataFormat::ri: return "RI";
    case DataFormat::ma: return "MA";
    case DataFormat::db: return "DB";
  }
  return "MA";
}

}  // namespace

double unit_scale(FreqUnit u) {
  switch (u) {
    case FreqUnit::hz: return 1.0;
    case FreqUnit::khz: return 1e3;
    case FreqUnit::mhz: return 1e6;
    case FreqUnit::ghz: return 1e9;
  }
  return 1.0;
}

TouchstoneDocument parse_touchstone(std::string_view text, int ports) {
  if (ports < 0 || ports > 2) throw ParseError(0, "only 1- and 2-port Touchstone files are supported");
  TouchstoneDocument doc;
  doc.ports = ports;
  bool have_options = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = 0;
    while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
    line.remove_prefix(first);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '!') {
      doc.comments.emplace_back(line.substr(1));
      continue;
    }
    if (const auto bang = line.find('!'); bang != std::string_view::npos) line = line.substr(0, bang);
    if (line.front() == '[')
      throw ParseError(line_no, "Touchstone v2 keywords are not supported; only v1 files are accepted");
    if (line.front() == '#') {
      if (!have_options) doc.options = parse_option_line(line.substr(1), line_no);
      have_options = true;
      continue;
    }

    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    std::vector<double> nums;
    nums.reserve(toks.size());
    for (auto t : toks) {
      double v = 0.0;
      if (!parse_number(t, v)) throw ParseError(line_no, "invalid number '" + std::string(t) + "'");
      nums.push_back(v);
    }
    if (doc.ports == 0) {
      if (nums.size() == 3) doc.ports = 1;
      else if (nums.size() == 9) doc.ports = 2;
      else throw ParseError(line_no, "cannot infer port count from a row of " + std::to_string(nums.size()) + " numbers");
    }
    const std::size_t expected = doc.ports == 1 ? 3 : 9;
    if (nums.size() != expected)
      throw ParseError(line_no, fmt::format("expected {} numbers for a {}-port row, got {}", expected, doc.ports, nums.size()));
    const double f = nums[0] * unit_scale(doc.options.unit);
    if (!(f >= 0.0)) throw ParseError(line_no, "negative frequency");
    if (!doc.freq.empty() && !(f > doc.freq.back()))
      throw ParseError(line_no, "frequencies must be strictly increasing");
    std::vector<cplx> row;
    for (std::size_t k = 1; k + 1 < nums.size(); k += 2) {
      const cplx v = decode(nums[k], nums[k + 1], doc.options.format);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ParseError(line_no, "non-finite value");
      row.push_back(v);
    }
    doc.freq.push_back(f);
    doc.rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  if (doc.ports == 0) doc.ports = 1;
  return doc;
}

std::string write_touchstone(const TouchstoneDocument& doc) {
  std::string out;
  for (const auto& c : doc.comments) out += "!" + c + "\n";
  out += fmt::format("# {} S {} R {:.17g}\n", unit_name(doc.options.unit), format_name(doc.options.format), doc.options.z0);
  const double scale = unit_scale(doc.options.unit);
  for (std::size_t i = 0; i < doc.freq.size(); ++i) {
    out += fmt::format("{:.17g}", doc.freq[i] / scale);
    for (const cplx& v : doc.rows[i]) {
      const auto [a, b] = encode(v, doc.options.format);
      out += fmt::format(" {:.17g} {:.17g}", a, b);
    }
    out += "\n";
  }
  return out;
}

int ports_from_extension(const std::filesystem::path& p) {
  const std::string ext = upper(p.extension().string());
  if (ext == ".S1P") return 1;
  if (ext == ".S2P") return 2;
  return 0;
}

TouchstoneDocument read_touchstone_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_touchstone(ss.str(), ports_from_extension(p));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), p.filename().string() + ": " + e.detail());
  }
}

ComplexSpectrum one_port_s11(const TouchstoneDocument& doc) {
  if (doc.ports != 1) throw ValidationError("expected a 1-port document");
  ComplexSpectrum s{doc.freq, {}, Quantity::reflection};
  for (const auto& r : doc.rows) s.values.push_back(r.at(0));
  return s;
}

TwoPortData two_port_data(const TouchstoneDocument& doc) {
  if (doc.ports != 2) throw ValidationError("expected a 2-port document");
  TwoPortData d{doc.freq, {}, {doc.options.z0, doc.options.z0}};
  for (const auto& r : doc.rows) {
    Eigen::Matrix2cd m;
    m << r.at(0), r.at(2), r.at(1), r.at(3);  // file order S11 S21 S12 S22
    d.s.push_back(m);
  }
  return d;
}

TouchstoneDocument make_one_port(const ComplexSpectrum& s11, const OptionLine& opt) {
  TouchstoneDocument doc;
  doc.ports = 1;
  doc.options = opt;
  doc.freq = s11.freq;
  for (const cplx& v : s11.values) doc.rows.push_back({v});
  return doc;
}

TouchstoneDocument make_two_port(const TwoPortData& d, const OptionLine& opt) {
  TouchstoneDocument doc;
  doc.ports = 2;
  doc.options = opt;
  doc.options.z0 = d.z0[0];
  doc.freq = d.freq;
  for (const auto& m : d.s) doc.rows.push_back({m(0, 0), m(1, 0), m(0, 1), m(1, 1)});
  return doc;
}

}  // namespace fbar
