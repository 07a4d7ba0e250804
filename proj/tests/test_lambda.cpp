#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "phasejump/lambda.hpp"
#include "phasejump/riccati.hpp"

using namespace phasejump;

namespace {

PulseSpec sech_pulse(double a, double alpha, double nu) { return {{EnvelopeFamily::Sech, a, alpha}, nu, {}}; }

const AtomSpec kAtom = AtomSpec::lambda(1.0, 1.0);

}  // namespace

TEST(IntegrateLambda, ZeroDrivesLeaveGroundState) {
  const LambdaDrive d{sech_pulse(0.0, 0.075, 0.9), sech_pulse(0.0, 0.075, 0.9)};
  const auto traj = integrate_lambda(d, kAtom, default_sim_config(d, kAtom));
  for (std::size_t k = 0; k < traj.size(); ++k) {
    EXPECT_EQ(traj.c_a[k], complex(0.0, 0.0));
    EXPECT_EQ(traj.c_b[k], complex(1.0, 0.0));
    EXPECT_EQ(traj.c_c[k], complex(0.0, 0.0));
  }
}

TEST(IntegrateLambda, DecoupledLimitReproducesTwoLevel) {
  const PulseSpec p1 = sech_pulse(0.04, 0.075, 0.8);
  const LambdaDrive d{p1, sech_pulse(0.0, 0.075, 0.8)};
  const SimConfig cfg = default_sim_config(d, kAtom);
  const auto three = integrate_lambda(d, kAtom, cfg);
  const auto two = integrate_tls(p1, AtomSpec::two_level(1.0), cfg);
  for (const auto& c : three.c_c) EXPECT_EQ(c, complex(0.0, 0.0));
  EXPECT_NEAR(std::abs(three.c_a.back()), std::abs(two.c_a.back()), 1e-8);
  EXPECT_NEAR(std::abs(three.c_b.back()), std::abs(two.c_b.back()), 1e-8);
}

TEST(IntegrateLambda, NormConserved) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> amp(0.0, 0.05), width(0.05, 0.5), ratio(0.25, 1.5), wac(0.8, 1.2);
  for (int i = 0; i < 40; ++i) {
    const double alpha = width(rng), nu = ratio(rng);
    const LambdaDrive d{sech_pulse(amp(rng), alpha, nu), sech_pulse(amp(rng), alpha, nu)};
    const AtomSpec atom = AtomSpec::lambda(1.0, wac(rng));
    const auto traj = integrate_lambda(d, atom, default_sim_config(d, atom));
    for (double n : traj.norm) ASSERT_NEAR(n, 1.0, 1e-8) << "draw " << i;
  }
}

TEST(IntegrateLambda, RelabelingSymmetry) {
  const LambdaDrive d{sech_pulse(0.04, 0.075, 0.9), sech_pulse(0.03, 0.1, 0.9)};
  const AtomSpec atom = AtomSpec::lambda(1.0, 1.2);
  const SimConfig cfg = default_sim_config(d, atom);
  const auto ref = integrate_lambda(d, atom, cfg);
  const LambdaDrive swapped{d.pulse2, d.pulse1};
  const AtomSpec swapped_atom = AtomSpec::lambda(1.2, 1.0);
  const auto traj = detail::integrate_lambda_from(swapped, swapped_atom, cfg, {complex{}, complex{}, complex{1.0, 0.0}});
  ASSERT_EQ(traj.size(), ref.size());
  for (std::size_t k = 0; k < ref.size(); ++k) {
    EXPECT_NEAR(traj.times[k], ref.times[k], 1e-6);
    EXPECT_NEAR(std::abs(traj.c_a[k] - ref.c_a[k]), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(traj.c_b[k] - ref.c_c[k]), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(traj.c_c[k] - ref.c_b[k]), 0.0, 1e-9);
  }
}

TEST(IntegrateLambda, GlobalPhaseOnEitherDrive) {
  const LambdaDrive d{sech_pulse(0.04, 0.075, 0.9), sech_pulse(0.04, 0.075, 0.9)};
  const SimConfig cfg = default_sim_config(d, kAtom);
  const auto ref = integrate_lambda(d, kAtom, cfg);
  for (int which : {1, 2}) {
    LambdaDrive q = d;
    auto& p = which == 1 ? q.pulse1 : q.pulse2;
    p.phase = p.phase.plus(PhaseTerm::constant(0.9));
    const auto traj = integrate_lambda(q, kAtom, cfg);
    EXPECT_NEAR(std::abs(traj.c_a.back()), std::abs(ref.c_a.back()), 1e-9);
  }
}

TEST(IntegrateLambda, RequiresLambdaAtom) {
  const LambdaDrive d{sech_pulse(0.04, 0.075, 0.9), sech_pulse(0.04, 0.075, 0.9)};
  EXPECT_THROW(integrate_lambda(d, AtomSpec::two_level(), default_sim_config(d, kAtom)), ValidationError);
}

TEST(LambdaAnalytic, ZeroDrives) {
  const LambdaDrive d{sech_pulse(0.0, 0.075, 0.9), sech_pulse(0.0, 0.075, 0.9)};
  const auto sol = lambda_analytic(d, kAtom);
  for (std::size_t k = 0; k < sol.size(); ++k) {
    EXPECT_EQ(sol.f[k], complex(0.0, 0.0));
    EXPECT_EQ(sol.g[k], complex(0.0, 0.0));
  }
}

TEST(LambdaAnalytic, StartsAtZero) {
  const LambdaDrive d{sech_pulse(0.04, 0.075, 0.9), sech_pulse(0.04, 0.075, 0.9)};
  const auto sol = lambda_analytic(d, kAtom);
  EXPECT_EQ(sol.f1.front(), complex(0.0, 0.0));
  EXPECT_EQ(sol.g1.front(), complex(0.0, 0.0));
  EXPECT_EQ(sol.f.front(), complex(0.0, 0.0));
  EXPECT_EQ(sol.g.front(), complex(0.0, 0.0));
}

TEST(LambdaAnalytic, DecoupledLimitMatchesRiccati) {
  for (double nu : {0.6, 0.9, 1.0, 1.3}) {
    const PulseSpec p1 = sech_pulse(0.005, 0.075, nu);
    const LambdaDrive d{p1, sech_pulse(0.0, 0.075, nu)};
    const auto sol = lambda_analytic(d, kAtom);
    for (const auto& g : sol.g) EXPECT_EQ(g, complex(0.0, 0.0));
    const double two_level = approx_asymptotic_amplitude(riccati_solution(tip_angle(p1, AtomSpec::two_level(1.0))));
    EXPECT_NEAR(sol.asymptotic_amplitude(), two_level, 0.01 * two_level) << nu;
  }
}

TEST(LambdaAnalytic, GridHalvingConvergence) {
  for (double nu : {0.5, 0.8, 1.0, 1.2, 1.5}) {
    const LambdaDrive d{sech_pulse(0.04, 0.075, nu), sech_pulse(0.04, 0.075, nu)};
    const double a = lambda_analytic(d, kAtom, 200).asymptotic_amplitude();
    const double b = lambda_analytic(d, kAtom, 400).asymptotic_amplitude();
    EXPECT_LT(std::abs(a - b), 1e-3 * b) << nu;
  }
}

TEST(LambdaAnalytic, KernelSwitchChangesResult) {
  const LambdaDrive d{sech_pulse(0.04, 0.075, 1.0), sech_pulse(0.04, 0.075, 1.0)};
  const double corrected = lambda_analytic(d, kAtom, 200, KernelForm::Corrected).asymptotic_amplitude();
  const double literal = lambda_analytic(d, kAtom, 200, KernelForm::Literal).asymptotic_amplitude();
  EXPECT_TRUE(std::isfinite(literal));
  EXPECT_NE(corrected, literal);
}
