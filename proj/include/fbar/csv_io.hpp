#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fbar/bode_q.hpp"
#include "fbar/fit.hpp"
#include "fbar/network.hpp"
#include "fbar/spectrum.hpp"
#include "fbar/stack_sim.hpp"

namespace fbar {

// CSV output uses '\n' line endings and %.16e scientific notation, which
// round-trips every double exactly.

/// `freq_hz,re,im,quantity`
std::string write_spectrum_csv(const ComplexSpectrum& s);
/// Reads the format above. All rows must name the same quantity.
ComplexSpectrum parse_spectrum_csv(std::string_view text);

/// `freq_hz,q_raw,q_smoothed`; flagged samples are written as `nan`.
std::string write_bode_csv(const BodeQSeries& raw, const std::vector<double>& smoothed);

/// `freq_hz,s11_re,s11_im,s21_re,s21_im,s12_re,s12_im,s22_re,s22_im`
std::string write_two_port_csv(const TwoPortData& d);
TwoPortData parse_two_port_csv(std::string_view text, double z0 = 50.0);

/// `value,label,f_s_hz,f_p_hz,k2,q_p,fom`, one line per mode.
std::string write_sweep_csv(const std::vector<SweepRow>& rows);

std::string modes_to_json(const std::vector<ModeMetrics>& modes);
std::string fit_result_to_json(const FitResult& r);

std::string format_double(double v);

}  // namespace fbar
