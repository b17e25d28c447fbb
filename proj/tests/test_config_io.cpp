#include <gtest/gtest.h>

#include "fbar/config_io.hpp"
#include "fbar/error.hpp"
#include "generators.hpp"

using namespace fbar;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

const char* kStack = R"({
  "layers": [
    {"material": "Al", "thickness_nm": 37},
    {"material": "ScAlN30", "thickness_nm": 85},
    {"material": "Al", "thickness_nm": 37}
  ],
  "piezo_index": 1,
  "area_um2": 112,
  "boundary": "traction-free"
})";

bool same_stack(const Stack& a, const Stack& b) {
  if (a.layers.size() != b.layers.size() || a.piezo_index != b.piezo_index || a.area != b.area) return false;
  for (std::size_t i = 0; i < a.layers.size(); ++i)
    if (!(a.layers[i].material == b.layers[i].material) || a.layers[i].thickness != b.layers[i].thickness) return false;
  return true;
}

}  // namespace

TEST(StackConfig, ShippedDefaultMatchesBuiltinStack) {
  const auto table = MaterialTable::builtin();
  const Stack s = load_stack_config(read_text_file(FBAR_DATA_DIR "/default_stack.json"), table);
  EXPECT_TRUE(same_stack(s, default_stack()));
  EXPECT_TRUE(same_stack(load_stack_config(kStack, table), default_stack()));
}

TEST(StackConfig, ZeroThicknessRejected) {
  std::string text = kStack;
  text.replace(text.find("\"thickness_nm\": 85"), 18, "\"thickness_nm\": 0");
  const std::string msg = error_of([&] { load_stack_config(text, MaterialTable::builtin()); });
  EXPECT_NE(msg.find("thickness must be positive"), std::string::npos) << msg;
  EXPECT_NE(msg.find("layers[1].thickness_nm"), std::string::npos) << msg;
}

TEST(StackConfig, UnknownMaterialListsKnownNames) {
  std::string text = kStack;
  text.replace(text.find("ScAlN30"), 7, "ScAlN_40");
  const std::string msg = error_of([&] { load_stack_config(text, MaterialTable::builtin()); });
  EXPECT_NE(msg.find("ScAlN_40"), std::string::npos) << msg;
  for (const char* n : {"Al", "AlN", "ScAlN30", "Si", "SiO2", "Pt"}) EXPECT_NE(msg.find(n), std::string::npos) << n;
}

TEST(StackConfig, StrictFields) {
  std::string extra = kStack;
  extra.replace(extra.find("\"thickness_nm\": 85"), 18, "\"thickness_nm\": 85, \"colour\": \"red\"");
  const std::string msg = error_of([&] { load_stack_config(extra, MaterialTable::builtin()); });
  EXPECT_NE(msg.find("layers[1].colour"), std::string::npos) << msg;

  std::string missing = kStack;
  missing.replace(missing.find("\"piezo_index\": 1,"), 17, "");
  EXPECT_NE(error_of([&] { load_stack_config(missing, MaterialTable::builtin()); }).find("piezo_index"),
            std::string::npos);

  EXPECT_THROW(load_stack_config("{not json", MaterialTable::builtin()), ParseError);
  EXPECT_THROW(load_stack_config("[]", MaterialTable::builtin()), ValidationError);
}

// Stacks whose dimensions come from file units (nm, um^2) survive a write/parse
// cycle exactly; the written text is a fixed point of parse then write.
TEST(StackConfig, RoundTrip) {
  gen::Gen g(81);
  MaterialTable table = MaterialTable::builtin();
  for (int i = 0; i < 200; ++i) {
    Stack s = g.lossy_stack();
    for (std::size_t k = 0; k < s.layers.size(); ++k) {
      s.layers[k].material.name = "m" + std::to_string(i) + "_" + std::to_string(k);
      s.layers[k].thickness = g.log_uniform(1.0, 5000.0) / 1e9;
      table.put(s.layers[k].material);
    }
    s.area = g.log_uniform(1.0, 1e5) / 1e12;
    const std::string text = dump_stack_config(s);
    const Stack back = load_stack_config(text, table);
    EXPECT_TRUE(same_stack(back, s)) << i;
    EXPECT_EQ(dump_stack_config(back), text);
  }
}

TEST(FitConfigIo, LoadsAndRoundTrips) {
  const FitConfig c = load_fit_config(read_text_file(FBAR_DATA_DIR "/two_mode_fit.json"));
  ASSERT_EQ(c.mode_windows.size(), 2u);
  EXPECT_EQ(c.mode_windows[0].lo, 18e9);
  EXPECT_EQ(c.mode_windows[1].hi, 63e9);
  EXPECT_EQ(c.mode_windows[1].label, "S3");
  const FitConfig back = load_fit_config(dump_fit_config(c));
  EXPECT_EQ(dump_fit_config(back), dump_fit_config(c));
}

TEST(FitConfigIo, OptionalFieldsAndErrors) {
  const FitConfig c = load_fit_config(R"({"mode_windows": [{"lo_hz": 1e9, "hi_hz": 2e9}], "seed": 9,
    "em_bands": [{"lo_hz": 3e9, "hi_hz": 4e9}], "weights": {"phase": 0.5}})");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.weight_phase, 0.5);
  EXPECT_EQ(c.weight_amplitude, 1.0);
  ASSERT_EQ(c.em_bands.size(), 1u);
  EXPECT_NE(error_of([] { load_fit_config(R"({"mode_windows": [], "speed": 1})"); }).find("speed"), std::string::npos);
  EXPECT_NE(error_of([] { load_fit_config(R"({"mode_windows": [{"lo_hz": 1e9}]})"); }).find("mode_windows[0].hi_hz"),
            std::string::npos);
  EXPECT_THROW(load_fit_config(R"({"mode_windows": [{"lo_hz": 2e9, "hi_hz": 1e9}]})"), ValidationError);
  EXPECT_THROW(load_fit_config(R"({"mode_windows": [], "seed": -1})"), ValidationError);
}

TEST(MbvdIo, RoundTripIsExact) {
  gen::Gen g(82);
  for (int i = 0; i < 200; ++i) {
    const MbvdParams p = g.mbvd();
    EXPECT_EQ(load_mbvd(dump_mbvd(p)), p);
  }
  EXPECT_THROW(load_mbvd(R"({"c_0_f": 0, "branches": []})"), ValidationError);
  EXPECT_THROW(load_mbvd(R"({"c_0_f": 1e-13, "branches": [], "x": 1})"), ValidationError);
}
