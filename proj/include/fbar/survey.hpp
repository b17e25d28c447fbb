#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fbar {

struct SurveyEntry {
  std::string label;
  double frequency = 0.0;  // Hz
  double k2 = 0.0;
  double q = 0.0;
  std::string technology;

  double fom() const;
  bool operator==(const SurveyEntry&) const = default;
};

/// k2 * q. Throws ValidationError unless 0 < k2 < 1 and q > 0.
double fom(double k2, double q);
/// Two decimals, the precision FoM values are reported at.
std::string format_fom(double v);

void validate_entry(const SurveyEntry& e);

/// Entries with frequency >= min_frequency, by FoM descending, then frequency
/// descending, then label.
std::vector<SurveyEntry> rank(std::vector<SurveyEntry> entries, double min_frequency);

/// The two measured modes of the 85 nm ScAlN resonator.
std::vector<SurveyEntry> builtin_survey();

/// `label,frequency_hz,k2,q,technology`
std::vector<SurveyEntry> parse_survey_csv(std::string_view text);
/// Same columns plus a trailing `fom` column (2 decimals).
std::string write_survey_csv(const std::vector<SurveyEntry>& entries);
std::string write_survey_json(const std::vector<SurveyEntry>& entries);

}  // namespace fbar
