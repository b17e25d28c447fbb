#include <gtest/gtest.h>

#include <cmath>

#include "fbar/csv_io.hpp"
#include "fbar/error.hpp"
#include "fbar/mbvd.hpp"
#include "generators.hpp"

using namespace fbar;

TEST(SpectrumCsv, HeaderAndFormat) {
  ComplexSpectrum s;
  s.freq = {1e9};
  s.values = {cplx(0.5, -0.25)};
  EXPECT_EQ(write_spectrum_csv(s),
            "freq_hz,re,im,quantity\n1.0000000000000000e+09,5.0000000000000000e-01,-2.5000000000000000e-01,admittance\n");
}

TEST(SpectrumCsv, RoundTripIsBitExact) {
  gen::Gen g(91);
  for (int i = 0; i < 100; ++i) {
    const MbvdParams p = g.mbvd();
    auto y = mbvd_admittance(p, FrequencyGrid{1e9, 80e9, 97});
    y.quantity = static_cast<Quantity>(g.integer(0, 2));
    const auto back = parse_spectrum_csv(write_spectrum_csv(y));
    EXPECT_EQ(back.freq, y.freq);
    EXPECT_EQ(back.values, y.values);
    EXPECT_EQ(back.quantity, y.quantity);
  }
}

TEST(SpectrumCsv, Errors) {
  EXPECT_THROW(parse_spectrum_csv("f,re,im\n"), ParseError);
  EXPECT_THROW(parse_spectrum_csv("freq_hz,re,im,quantity\n1,2,3\n"), ParseError);
  EXPECT_THROW(parse_spectrum_csv("freq_hz,re,im,quantity\n1,2,x,admittance\n"), ParseError);
  EXPECT_THROW(parse_spectrum_csv("freq_hz,re,im,quantity\n2,0,0,admittance\n1,0,0,admittance\n"), ParseError);
  EXPECT_THROW(parse_spectrum_csv("freq_hz,re,im,quantity\n1,0,0,admittance\n2,0,0,impedance\n"), ParseError);
  EXPECT_THROW(parse_spectrum_csv("freq_hz,re,im,quantity\n1,0,0,charge\n"), ParseError);
}

TEST(BodeCsv, Layout) {
  BodeQSeries b;
  b.freq = {1e9, 2e9};
  b.q = {1.0, std::nan("")};
  b.flagged = {false, true};
  const std::string text = write_bode_csv(b, {1.0, 1.0});
  EXPECT_EQ(text.substr(0, text.find('\n')), "freq_hz,q_raw,q_smoothed");
  EXPECT_NE(text.find(",nan,"), std::string::npos);
}

TEST(TwoPortCsv, RoundTripIsBitExact) {
  gen::Gen g(92);
  TwoPortData d;
  for (int i = 0; i < 50; ++i) {
    d.freq.push_back(1e9 * (i + 1));
    Eigen::Matrix2cd m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m(r, c) = cplx(g.uniform(-1, 1), g.uniform(-1, 1));
    d.s.push_back(m);
  }
  const auto back = parse_two_port_csv(write_two_port_csv(d));
  EXPECT_EQ(back.freq, d.freq);
  for (std::size_t i = 0; i < d.s.size(); ++i) EXPECT_EQ(back.s[i], d.s[i]);
}
