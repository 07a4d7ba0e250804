#include <numbers>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "phasejump/config.hpp"

using namespace phasejump;

namespace {

std::string message_of(const std::string& doc) {
  try {
    parse_config(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal =
    "mode = simulate\n"
    "envelope.family = gaussian\n"
    "envelope.amplitude = 0.04375\n"
    "envelope.width = 0.33125\n"
    "pulse.carrier = 0.5\n"
    "phase.0.shape = tanh_fall\n"
    "phase.0.steepness = 0.33125\n";

PhaseTerm random_term(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> shape(0, 4);
  std::uniform_real_distribution<double> u(0.01, 10.0), c(-5.0, 5.0);
  PhaseTerm t{static_cast<PhaseShape>(shape(rng)), u(rng), u(rng), c(rng)};
  if (t.shape == PhaseShape::Constant) {
    t.steepness = 1.0;
    t.center = 0.0;
  }
  return t;
}

PulseSpec random_pulse(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0.0, 0.05), w(0.05, 0.5), nu(0.25, 1.5);
  std::uniform_int_distribution<int> fam(0, 1), terms(0, 3);
  PulseSpec p{{fam(rng) ? EnvelopeFamily::Sech : EnvelopeFamily::Gaussian, a(rng), w(rng)}, nu(rng), {}};
  for (int i = terms(rng); i > 0; --i) p.phase.terms.push_back(random_term(rng));
  return p;
}

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mode(0, 4), coin(0, 1), small(1, 16);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RunConfig cfg;
  cfg.mode = static_cast<Mode>(mode(rng));
  cfg.workers = static_cast<std::size_t>(small(rng));
  if (coin(rng)) cfg.output_csv = "out_" + std::to_string(small(rng)) + ".csv";
  if (coin(rng)) cfg.output_plot = "plots/p" + std::to_string(small(rng)) + ".svg";
  if (cfg.mode == Mode::Preset) {
    cfg.preset_id = "fig4f-blue";
    return cfg;
  }
  const bool lambda = cfg.mode != Mode::Optimize && coin(rng);
  cfg.atom = lambda ? AtomSpec::lambda(0.5 + u(rng), 0.5 + u(rng)) : AtomSpec::two_level(0.5 + u(rng));
  cfg.pulse = random_pulse(rng);
  if (lambda) cfg.pulse2 = random_pulse(rng);
  cfg.sim = {1e-12 + u(rng) * 1e-8, 1e-14 + u(rng) * 1e-10, 0.01 + u(rng), -100 * (1 + u(rng)), 100 * (1 + u(rng)),
             static_cast<std::size_t>(small(rng))};
  cfg.tail_fraction = 0.01 + 0.2 * u(rng);
  cfg.n_per_cycle = 8 + static_cast<std::size_t>(small(rng)) * 20;
  cfg.kernel = coin(rng) ? KernelForm::Literal : KernelForm::Corrected;
  if (cfg.mode == Mode::Sweep || cfg.mode == Mode::Compare) {
    cfg.sweep = {0.1 + u(rng), 2.0 + u(rng), 0.001 + 0.1 * u(rng)};
    cfg.solver = cfg.mode == Mode::Compare ? Solver::Both : static_cast<Solver>(mode(rng) % 3);
  }
  if (cfg.mode == Mode::Optimize) {
    cfg.optimize.ratio = 0.25 + u(rng);
    cfg.optimize.shapes = {PhaseShape::TanhFall};
    if (coin(rng)) cfg.optimize.shapes.push_back(PhaseShape::SechSquared);
    cfg.optimize.amplitudes = {u(rng) * 3, 1.0};
    cfg.optimize.steepnesses = {0.1 + u(rng), 2.0, 3.0 + u(rng)};
    cfg.optimize.center = u(rng) - 0.5;
    cfg.optimize.objective = coin(rng) ? Objective::Amplitude : Objective::Population;
  }
  return cfg;
}

}  // namespace

TEST(ParseConfig, MinimalSimulateGetsDefaults) {
  const RunConfig cfg = parse_config(kMinimal);
  EXPECT_EQ(cfg.mode, Mode::Simulate);
  EXPECT_EQ(cfg.atom, AtomSpec::two_level(1.0));
  EXPECT_EQ(cfg.pulse.phase.terms.size(), 1u);
  EXPECT_DOUBLE_EQ(cfg.pulse.phase.terms[0].amplitude, std::numbers::pi / 2);
  EXPECT_EQ(cfg.pulse.phase.terms[0].center, 0.0);
  const SimConfig expect = default_sim_config(cfg.pulse, cfg.atom);
  EXPECT_EQ(cfg.sim, expect);
  EXPECT_EQ(cfg.tail_fraction, 0.05);
  EXPECT_EQ(cfg.n_per_cycle, 200u);
  EXPECT_EQ(cfg.workers, 1u);
  // defaults are echoed
  const std::string text = serialize_config(cfg);
  EXPECT_NE(text.find("sim.rel_tol = 1e-10"), std::string::npos);
  EXPECT_NE(text.find("phase.0.amplitude = 1.5707963267948966"), std::string::npos);
}

TEST(ParseConfig, NegativeWidthNamesKey) {
  std::string doc = kMinimal;
  doc.replace(doc.find("0.33125\npulse"), 7, "-1");
  EXPECT_NE(message_of(doc).find("envelope.width"), std::string::npos);
}

TEST(ParseConfig, EmptyDocument) {
  EXPECT_EQ(message_of(""), "mode is required");
  EXPECT_EQ(message_of("# nothing\n\n"), "mode is required");
}

TEST(ParseConfig, UnknownKeyRejected) {
  const std::string msg = message_of(std::string(kMinimal) + "envelope.colour = red\n");
  EXPECT_NE(msg.find("envelope.colour"), std::string::npos);
}

TEST(ParseConfig, SyntaxErrorsCarryPosition) {
  try {
    parse_config("mode = simulate\n  just words\n");
    FAIL();
  } catch (const ConfigSyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("config:2:3"), std::string::npos);
  }
  try {
    parse_config("mode = simulate\nenv$lope.width = 1\n");
    FAIL();
  } catch (const ConfigSyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 4u);
  }
}

TEST(ParseConfig, SemanticErrors) {
  EXPECT_NE(message_of("mode = dance\n").find("mode"), std::string::npos);
  EXPECT_NE(message_of("mode = simulate\nenvelope.family = gaussian\nenvelope.amplitude = 0.1\nenvelope.width = 1\n")
                .find("pulse.carrier"),
            std::string::npos);
  std::string bad_sweep = kMinimal;
  bad_sweep.replace(0, 15, "mode = sweep");
  EXPECT_NE(message_of(bad_sweep + "sweep.step = 0\n").find("sweep.step"), std::string::npos);
  std::string compare = kMinimal;
  compare.replace(0, 15, "mode = compare");
  EXPECT_NE(message_of(compare + "sweep.solver = exact\n").find("sweep.solver"), std::string::npos);
  EXPECT_NE(message_of(std::string(kMinimal) + "phase.0.amplitude = x\n").find("phase.0.amplitude"), std::string::npos);
  EXPECT_NE(message_of(std::string(kMinimal) + "phase.1.steepness = 2\n").find("phase.1.shape"), std::string::npos);
  EXPECT_NE(message_of(std::string(kMinimal) + "atom.omega_ac = 1\n").find("atom.omega_ac"), std::string::npos);
  EXPECT_NE(message_of(std::string(kMinimal) + "run.workers = 0\n").find("run.workers"), std::string::npos);
  EXPECT_NE(message_of("mode = optimize\nenvelope.family = sech\nenvelope.amplitude = 0.1\nenvelope.width = 1\n")
                .find("optimize.ratio"),
            std::string::npos);
}

TEST(ParseConfig, LambdaNeedsSecondPulse) {
  std::string doc = kMinimal;
  doc += "atom.kind = lambda\natom.omega_ac = 1\n";
  EXPECT_NE(message_of(doc).find("envelope2.family"), std::string::npos);
  doc += "envelope2.family = sech\nenvelope2.amplitude = 0.04\nenvelope2.width = 0.075\npulse2.carrier = 0.5\n";
  const RunConfig cfg = parse_config(doc);
  ASSERT_TRUE(cfg.pulse2.has_value());
  EXPECT_EQ(cfg.pulse2->envelope.family, EnvelopeFamily::Sech);
}

TEST(ParseConfig, PresetMode) {
  const RunConfig cfg = parse_config("mode = preset\npreset.id = fig5\nrun.workers = 3\n");
  EXPECT_EQ(cfg.preset_id, "fig5");
  EXPECT_EQ(cfg.workers, 3u);
  EXPECT_NE(message_of("mode = preset\n").find("preset.id"), std::string::npos);
}

TEST(ParseConfig, RandomRoundTrip) {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 1000; ++i) {
    const RunConfig cfg = random_config(rng);
    const std::string text = serialize_config(cfg);
    RunConfig back;
    ASSERT_NO_THROW(back = parse_config(text)) << text;
    ASSERT_EQ(back, cfg) << text;
    EXPECT_EQ(serialize_config(back), text);
  }
}
