#include "fbar/survey.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <tuple>

#include "fbar/csv_io.hpp"
#include "fbar/error.hpp"

namespace fbar {

double fom(double k2, double q) {
  if (!(k2 > 0.0 && k2 < 1.0)) throw ValidationError(fmt::format("k2 must lie in (0, 1), got {}", k2));
  if (!(q > 0.0) || !std::isfinite(q)) throw ValidationError(fmt::format("q must be positive, got {}", q));
  return k2 * q;
}

double SurveyEntry::fom() const { return fbar::fom(k2, q); }

std::string format_fom(double v) { return fmt::format("{:.2f}", v); }

void validate_entry(const SurveyEntry& e) {
  if (e.label.empty()) throw ValidationError("survey entry needs a label");
  if (!(e.frequency > 0.0) || !std::isfinite(e.frequency))
    throw ValidationError("survey entry '" + e.label + "': frequency must be positive");
  try {
    (void)e.fom();
  } catch (const ValidationError& err) {
    throw ValidationError("survey entry '" + e.label + "': " + err.what());
  }
}

std::vector<SurveyEntry> rank(std::vector<SurveyEntry> entries, double min_frequency) {
  for (const auto& e : entries) validate_entry(e);
  std::erase_if(entries, [&](const SurveyEntry& e) { return e.frequency < min_frequency; });
  std::sort(entries.begin(), entries.end(), [](const SurveyEntry& a, const SurveyEntry& b) {
    const double fa = a.fom(), fb = b.fom();
    if (fa != fb) return fa > fb;
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return std::tie(a.label, a.technology, a.k2, a.q) < std::tie(b.label, b.technology, b.k2, b.q);
  });
  return entries;
}

std::vector<SurveyEntry> builtin_survey() {
  return {
      {"ScAlN85-S1", 21.4e9, 0.070, 62.0, "sputtered-ScAlN"},
      {"ScAlN85-S3", 55.4e9, 0.040, 19.0, "sputtered-ScAlN"},
  };
}

std::vector<SurveyEntry> parse_survey_csv(std::string_view text) {
  std::vector<SurveyEntry> out;
  std::size_t line_no = 0, pos = 0;
  bool header = false;
  auto number = [&](std::string_view tok) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size())
      throw ParseError(line_no, "not a number: '" + std::string(tok) + "'");
    return v;
  };
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header) {
      if (line != "label,frequency_hz,k2,q,technology")
        throw ParseError(line_no, "expected header 'label,frequency_hz,k2,q,technology'");
      header = true;
      continue;
    }
    std::vector<std::string_view> cells;
    std::size_t p = 0;
    while (true) {
      const std::size_t c = line.find(',', p);
      cells.push_back(line.substr(p, c == std::string_view::npos ? std::string_view::npos : c - p));
      if (c == std::string_view::npos) break;
      p = c + 1;
    }
    if (cells.size() != 5) throw ParseError(line_no, fmt::format("expected 5 columns, got {}", cells.size()));
    SurveyEntry e{std::string(cells[0]), number(cells[1]), number(cells[2]), number(cells[3]), std::string(cells[4])};
    try {
      validate_entry(e);
    } catch (const ValidationError& err) {
      throw ParseError(line_no, err.what());
    }
    out.push_back(std::move(e));
  }
  if (!header) throw ParseError(0, "missing header 'label,frequency_hz,k2,q,technology'");
  return out;
}

std::string write_survey_csv(const std::vector<SurveyEntry>& entries) {
  std::string out = "label,frequency_hz,k2,q,technology,fom\n";
  for (const auto& e : entries)
    out += fmt::format("{},{},{},{},{},{}\n", e.label, format_double(e.frequency), format_double(e.k2),
                       format_double(e.q), e.technology, format_fom(e.fom()));
  return out;
}

std::string write_survey_json(const std::vector<SurveyEntry>& entries) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& e : entries)
    list.push_back({{"label", e.label},
                    {"frequency_hz", e.frequency},
                    {"k2", e.k2},
                    {"q", e.q},
                    {"technology", e.technology},
                    {"fom", e.fom()},
                    {"fom_display", format_fom(e.fom())}});
  return nlohmann::json{{"entries", list}}.dump(2) + "\n";
}

}  // namespace fbar
