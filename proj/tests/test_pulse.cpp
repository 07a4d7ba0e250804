#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "phasejump/pulse.hpp"

using namespace phasejump;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2;
}  // namespace

TEST(PhaseTerm, TanhRiseCrossesAmplitudeAtCenter) {
  EXPECT_DOUBLE_EQ(eval_phase({PhaseTerm::tanh_rise(kHalfPi, 1.0)}, 0.0), kHalfPi);
}

TEST(PhaseTerm, TanhFallVanishesLate) {
  const PhaseFunction phi{PhaseTerm::tanh_fall(kHalfPi, 0.33125)};
  EXPECT_NEAR(eval_phase(phi, 1e4), 0.0, 1e-15);
  EXPECT_NEAR(eval_phase(phi, -1e4), kPi, 1e-15);
}

TEST(PhaseTerm, SechSquaredPeak) {
  EXPECT_NEAR(eval_phase({PhaseTerm::sech_squared(kHalfPi, 3.3125)}, 0.0), 1.5708, 1e-4);
  EXPECT_DOUBLE_EQ(eval_phase({PhaseTerm::sech(kHalfPi, 2.0, 3.0)}, 3.0), kHalfPi);
}

TEST(PhaseFunction, EmptyIsZero) {
  const PhaseFunction phi;
  EXPECT_EQ(eval_phase(phi, -3.0), 0.0);
  EXPECT_EQ(eval_phase(phi, 12.0), 0.0);
}

TEST(PhaseFunction, TwoTermSumIsLinear) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amp(0.0, kPi), steep(0.01, 20.0), center(-5.0, 5.0), t(-50.0, 50.0);
  std::uniform_int_distribution<int> shape(0, 4);
  for (int i = 0; i < 1000; ++i) {
    const PhaseTerm p{static_cast<PhaseShape>(shape(rng)), amp(rng), steep(rng), center(rng)};
    const PhaseTerm q{static_cast<PhaseShape>(shape(rng)), amp(rng), steep(rng), center(rng)};
    const double x = t(rng);
    const PhaseFunction both{p, q};
    EXPECT_EQ(eval_phase(both, x), eval_phase(PhaseFunction{p}, x) + eval_phase(PhaseFunction{q}, x));
  }
}

TEST(PhaseFunction, RisePlusFallIsConstant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> amp(0.0, kPi), steep(0.01, 20.0), t(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const double a = amp(rng), s = steep(rng), c = t(rng), x = t(rng);
    const PhaseFunction sum{PhaseTerm::tanh_rise(a, s, c), PhaseTerm::tanh_fall(a, s, c)};
    EXPECT_NEAR(eval_phase(sum, x), 2 * a, 4 * std::numeric_limits<double>::epsilon() * a);
  }
}

TEST(PhaseFunction, ValidationRejectsNonPositiveSteepness) {
  EXPECT_THROW(validate(PhaseFunction{PhaseTerm::tanh_rise(1.0, 0.0)}), ValidationError);
  EXPECT_NO_THROW(validate(PhaseFunction{PhaseTerm::constant(2.0)}));
}

TEST(Envelope, Examples) {
  EXPECT_DOUBLE_EQ(eval_envelope({EnvelopeFamily::Gaussian, 0.035, 0.33125}, 0.0), 0.035);
  EXPECT_NEAR(eval_envelope({EnvelopeFamily::Gaussian, 1.0, 1.0}, 1.0), 0.367879, 1e-6);
  EXPECT_DOUBLE_EQ(eval_envelope({EnvelopeFamily::Sech, 0.04, 0.075}, 0.0), 0.04);
}

TEST(Envelope, Symmetric) {
  for (auto family : {EnvelopeFamily::Gaussian, EnvelopeFamily::Sech}) {
    const Envelope env{family, 0.7, 0.3};
    for (double t = 0.0; t < 40.0; t += 0.37) EXPECT_EQ(eval_envelope(env, t), eval_envelope(env, -t));
  }
}

TEST(EffectiveRabi, Examples) {
  const auto atom = AtomSpec::two_level(1.0);
  PulseSpec zero{{EnvelopeFamily::Gaussian, 0.0, 0.3}, 0.75, {PhaseTerm::sech(kHalfPi, 0.3)}};
  EXPECT_EQ(effective_rabi(zero, atom, 1.3), complex(0.0, 0.0));

  PulseSpec plain{{EnvelopeFamily::Gaussian, 0.02, 0.3}, 0.6, {}};
  EXPECT_EQ(effective_rabi(plain, atom, 0.0), complex(0.02, 0.0));

  PulseSpec jump{{EnvelopeFamily::Gaussian, 0.035, 0.33125}, 0.75, {PhaseTerm::sech(kHalfPi, 0.33125)}};
  const complex w = effective_rabi(jump, atom, 0.0);
  EXPECT_NEAR(w.real(), 0.0, 1e-17);
  EXPECT_DOUBLE_EQ(w.imag(), 0.035);

  EXPECT_THROW(effective_rabi(plain, AtomSpec::lambda(1.0, 1.0), 0.0), ValidationError);
}

TEST(EffectiveRabi, BoundedByEnvelope) {
  const auto atom = AtomSpec::two_level(1.0);
  PulseSpec p{{EnvelopeFamily::Sech, 0.05, 0.2}, 0.8, {PhaseTerm::tanh_fall(kHalfPi, 1.0), PhaseTerm::sech(1.0, 3.0)}};
  for (double t = -60.0; t <= 60.0; t += 0.013)
    EXPECT_LE(std::abs(effective_rabi(p, atom, t)), eval_envelope(p.envelope, t) * (1 + 1e-15));
}

TEST(SupportWindow, Examples) {
  PulseSpec g{{EnvelopeFamily::Gaussian, 1.0, 1.0}, 1.0, {}};
  EXPECT_NEAR(support_window(g, std::exp(-16.0)).second, 4.0, 1e-14);
  EXPECT_NEAR(support_window(g.with_amplitude(3.0), std::exp(-16.0)).first, -4.0, 1e-14);
  g.envelope.width = 0.5;
  EXPECT_NEAR(support_window(g, std::exp(-16.0)).second, 8.0, 1e-13);
  PulseSpec s{{EnvelopeFamily::Sech, 1.0, 1.0}, 1.0, {}};
  const double t = support_window(s, 1e-14).second;
  EXPECT_NEAR(t, 32.93, 5e-3);
  EXPECT_NEAR(t, std::log(2.0 / 1e-14), 1e-12);
}

TEST(SupportWindow, FloorHoldsAtEdge) {
  for (auto family : {EnvelopeFamily::Gaussian, EnvelopeFamily::Sech}) {
    for (double alpha : {0.05, 0.33125, 2.0}) {
      for (double floor : {1e-3, 1e-8, 1e-14}) {
        const PulseSpec p{{family, 0.04, alpha}, 1.0, {}};
        const double t = support_window(p, floor).second;
        const double ratio = eval_envelope(p.envelope, t) / p.envelope.amplitude;
        EXPECT_LE(ratio, floor * (1 + 1e-12));
        EXPECT_GE(ratio, floor * (1 - 1e-12));
      }
    }
  }
}

TEST(SupportWindow, RejectsBadFloor) {
  const PulseSpec p{{EnvelopeFamily::Gaussian, 1.0, 1.0}, 1.0, {}};
  EXPECT_THROW(support_window(p, 0.0), ValidationError);
  EXPECT_THROW(support_window(p, 1.0), ValidationError);
  EXPECT_THROW(support_window(p, -0.5), ValidationError);
}

TEST(PhaseShapeNames, RoundTrip) {
  for (auto s : {PhaseShape::TanhRise, PhaseShape::TanhFall, PhaseShape::Sech, PhaseShape::SechSquared,
                 PhaseShape::Constant})
    EXPECT_EQ(parse_phase_shape(to_string(s)), s);
  EXPECT_FALSE(parse_phase_shape("step").has_value());
}
