#include <set>
#include <string>

#include <gtest/gtest.h>

#include "phasejump/presets.hpp"

using namespace phasejump;

TEST(Presets, IdsUniqueAndExpectedPresent) {
  std::set<std::string> ids;
  for (const auto& e : preset_registry()) EXPECT_TRUE(ids.insert(e.id).second) << e.id;
  for (const char* id : {"fig3a", "fig3c", "fig3e", "fig4c-red", "fig4f-blue", "fig4i-black", "fig4f-optimize", "fig5"})
    EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Presets, CaptionValuesAppearInNote) {
  for (const auto& e : preset_registry()) {
    ASSERT_FALSE(e.caption_values.empty()) << e.id;
    for (const auto& v : e.caption_values) {
      EXPECT_NE(e.note.find(v.text), std::string::npos) << e.id << ": " << v.text;
      EXPECT_EQ(std::stod(v.text), v.value) << e.id;
    }
    EXPECT_NE(e.note.find(std::string(to_string(e.reading))), std::string::npos) << e.id;
  }
}

TEST(Presets, ParametersFollowRecordedReading) {
  for (const auto& e : preset_registry()) {
    const auto& env = e.config.pulse.envelope;
    if (e.config.is_lambda()) {
      EXPECT_EQ(env.amplitude, e.caption_values[0].value) << e.id;
      EXPECT_EQ(env.width, e.caption_values[1].value) << e.id;
      EXPECT_EQ(e.config.pulse2, e.config.pulse) << e.id;
      continue;
    }
    const auto dim = apply_reading(e.reading, e.caption_values[0].value, e.caption_values[1].value,
                                   e.caption_values[2].value);
    EXPECT_EQ(env.amplitude, dim.amplitude) << e.id;
    EXPECT_EQ(env.width, dim.width) << e.id;
  }
}

TEST(Presets, UnitReadings) {
  const auto angular = apply_reading(UnitReading::Angular, 0.04375, 0.265, 1.25);
  EXPECT_DOUBLE_EQ(angular.width, 0.33125);
  EXPECT_DOUBLE_EQ(angular.amplitude, 0.04375);
  const auto bare = apply_reading(UnitReading::Bare, 0.04375, 0.265, 1.25);
  EXPECT_DOUBLE_EQ(bare.width, 0.265);
  const auto cyclic = apply_reading(UnitReading::Cyclic, 0.04375, 0.265, 1.25);
  EXPECT_DOUBLE_EQ(cyclic.width * 2 * std::numbers::pi, 0.33125);
  EXPECT_DOUBLE_EQ(cyclic.amplitude * 2 * std::numbers::pi, 0.04375);
}

TEST(Presets, Fig4SteepnessMultiples) {
  const struct {
    const char* id;
    PhaseShape shape;
    double k;
  } cases[] = {
      {"fig4c-red", PhaseShape::TanhRise, 5.0},     {"fig4c-black", PhaseShape::TanhRise, 0.5},
      {"fig4f-red", PhaseShape::TanhFall, 5.0},     {"fig4f-blue", PhaseShape::TanhFall, 1.0},
      {"fig4f-black", PhaseShape::TanhFall, 0.5},   {"fig4i-red", PhaseShape::SechSquared, 1.0},
      {"fig4i-black", PhaseShape::SechSquared, 20.0}, {"fig4f-red-bare", PhaseShape::TanhFall, 5.0},
  };
  for (const auto& c : cases) {
    const auto& cfg = find_preset(c.id)->config;
    ASSERT_EQ(cfg.pulse.phase.terms.size(), 1u) << c.id;
    const auto& t = cfg.pulse.phase.terms[0];
    EXPECT_EQ(t.shape, c.shape) << c.id;
    EXPECT_DOUBLE_EQ(t.steepness, c.k * cfg.pulse.envelope.width) << c.id;
    EXPECT_DOUBLE_EQ(t.amplitude, std::numbers::pi / 2) << c.id;
    EXPECT_EQ(cfg.sweep.start, 0.3) << c.id;
  }
}

TEST(Presets, Fig3Composites) {
  const auto& c = find_preset("fig3c")->config.pulse;
  ASSERT_EQ(c.phase.terms.size(), 2u);
  EXPECT_EQ(c.phase.terms[0].shape, PhaseShape::Sech);
  EXPECT_DOUBLE_EQ(c.phase.terms[0].steepness, 10 * c.envelope.width);
  EXPECT_EQ(c.phase.terms[1].shape, PhaseShape::TanhRise);
  const auto& e = find_preset("fig3e")->config.pulse;
  EXPECT_EQ(e.phase.terms[1].shape, PhaseShape::TanhFall);
  EXPECT_DOUBLE_EQ(e.phase.terms[1].steepness, 10 * e.envelope.width);
  EXPECT_EQ(find_preset("fig3a")->config.mode, Mode::Compare);
  EXPECT_EQ(find_preset("fig3a")->config.sweep.start, 0.25);
}

TEST(Presets, EffectiveConfigRoundTrips) {
  for (const auto& e : preset_registry()) EXPECT_EQ(parse_config(serialize_config(e.config)), e.config) << e.id;
}

TEST(Presets, UnknownIdIsNull) { EXPECT_EQ(find_preset("fig9"), nullptr); }
