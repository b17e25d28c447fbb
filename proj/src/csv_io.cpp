#include "fbar/csv_io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <json.hpp>

#include "fbar/config_io.hpp"
#include "fbar/error.hpp"

namespace fbar {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view tok, std::size_t line) {
  tok = trim(tok);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size() || tok.empty())
    throw ParseError(line, "not a number: '" + std::string(tok) + "'");
  return v;
}

// Iterates the data lines after the header, skipping blanks.
template <typename Fn>
void for_each_row(std::string_view text, std::string_view header, std::size_t columns, Fn&& fn) {
  std::size_t line_no = 0;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) throw ParseError(line_no, "expected header '" + std::string(header) + "'");
      seen_header = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != columns)
      throw ParseError(line_no, fmt::format("expected {} columns, got {}", columns, cells.size()));
    fn(cells, line_no);
  }
  if (!seen_header) throw ParseError(0, "missing header '" + std::string(header) + "'");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.16e}", v);
}

std::string write_spectrum_csv(const ComplexSpectrum& s) {
  std::string out = "freq_hz,re,im,quantity\n";
  const std::string_view q = to_string(s.quantity);
  for (std::size_t i = 0; i < s.size(); ++i)
    out += fmt::format("{},{},{},{}\n", format_double(s.freq[i]), format_double(s.values[i].real()),
                       format_double(s.values[i].imag()), q);
  return out;
}

ComplexSpectrum parse_spectrum_csv(std::string_view text) {
  ComplexSpectrum s;
  bool first = true;
  for_each_row(text, "freq_hz,re,im,quantity", 4, [&](const auto& c, std::size_t line) {
    Quantity q;
    try {
      q = quantity_from_string(trim(c[3]));
    } catch (const ValidationError& e) {
      throw ParseError(line, e.what());
    }
    if (first) {
      s.quantity = q;
      first = false;
    } else if (q != s.quantity) {
      throw ParseError(line, "mixed quantities in one file");
    }
    const double f = to_double(c[0], line);
    if (!s.freq.empty() && !(f > s.freq.back())) throw ParseError(line, "frequencies must be strictly increasing");
    s.freq.push_back(f);
    s.values.emplace_back(to_double(c[1], line), to_double(c[2], line));
  });
  return s;
}

std::string write_bode_csv(const BodeQSeries& raw, const std::vector<double>& smoothed) {
  if (smoothed.size() != raw.freq.size()) throw ValidationError("smoothed series length mismatch");
  std::string out = "freq_hz,q_raw,q_smoothed\n";
  for (std::size_t i = 0; i < raw.freq.size(); ++i)
    out += fmt::format("{},{},{}\n", format_double(raw.freq[i]), format_double(raw.q[i]), format_double(smoothed[i]));
  return out;
}

std::string write_two_port_csv(const TwoPortData& d) {
  std::string out = "freq_hz,s11_re,s11_im,s21_re,s21_im,s12_re,s12_im,s22_re,s22_im\n";
  for (std::size_t i = 0; i < d.freq.size(); ++i) {
    const auto& m = d.s[i];
    out += format_double(d.freq[i]);
    for (const cplx v : {m(0, 0), m(1, 0), m(0, 1), m(1, 1)})
      out += "," + format_double(v.real()) + "," + format_double(v.imag());
    out += "\n";
  }
  return out;
}

TwoPortData parse_two_port_csv(std::string_view text, double z0) {
  TwoPortData d;
  d.z0 = {z0, z0};
  for_each_row(text, "freq_hz,s11_re,s11_im,s21_re,s21_im,s12_re,s12_im,s22_re,s22_im", 9,
               [&](const auto& c, std::size_t line) {
                 const double f = to_double(c[0], line);
                 if (!d.freq.empty() && !(f > d.freq.back()))
                   throw ParseError(line, "frequencies must be strictly increasing");
                 auto at = [&](std::size_t k) { return cplx(to_double(c[k], line), to_double(c[k + 1], line)); };
                 Eigen::Matrix2cd m;
                 m(0, 0) = at(1);
                 m(1, 0) = at(3);
                 m(0, 1) = at(5);
                 m(1, 1) = at(7);
                 d.freq.push_back(f);
                 d.s.push_back(m);
               });
  return d;
}

std::string write_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "value,label,f_s_hz,f_p_hz,k2,q_p,fom\n";
  for (const auto& r : rows)
    for (const auto& m : r.modes)
      out += fmt::format("{},{},{},{},{},{},{}\n", format_double(r.value), m.label, format_double(m.f_s),
                         format_double(m.f_p), format_double(m.k2), format_double(m.q_p), format_double(m.fom));
  return out;
}

namespace {

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json modes_json(const std::vector<ModeMetrics>& modes) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& m : modes)
    list.push_back({{"label", m.label},
                    {"f_s_hz", number_or_null(m.f_s)},
                    {"f_p_hz", number_or_null(m.f_p)},
                    {"k2", number_or_null(m.k2)},
                    {"q_p", number_or_null(m.q_p)},
                    {"fom", number_or_null(m.fom)}});
  return list;
}

nlohmann::json report_json(const StageReport& r) {
  return {{"residual_rms", number_or_null(r.residual_rms)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"samples", r.samples}};
}

}  // namespace

std::string modes_to_json(const std::vector<ModeMetrics>& modes) {
  return nlohmann::json{{"modes", modes_json(modes)}}.dump(2) + "\n";
}

std::string fit_result_to_json(const FitResult& r) {
  nlohmann::json o;
  o["params"] = nlohmann::json::parse(dump_mbvd(r.params));
  o["derived"] = modes_json(derived_metrics(r.params));
  o["stages"] = {{"em", report_json(r.em_stage.report)},
                 {"motional", report_json(r.motional_stage.report)},
                 {"joint", report_json(r.final_stage)}};
  o["diagnostics"] = r.diagnostics;
  return o.dump(2) + "\n";
}

}  // namespace fbar
