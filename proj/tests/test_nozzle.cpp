#include <gtest/gtest.h>

#include <cmath>

#include "chemeq/constants.hpp"
#include "chemeq/shock.hpp"
#include "support.hpp"

using namespace chemeq;
using testing_support::air_X;
using testing_support::model;
namespace perfect = testing_support::perfect;

namespace {

GasState perfect_stagnation(double T0, double p0) {
  return make_state_tp(T0, p0, std::vector<double>{1.0 / 0.0280134});
}

double mach(const MixtureModel& m, const GasState& st, double v) { return v / frozen_sound_speed(m, st); }

}  // namespace

TEST(Nozzle, UnitAreaRatioIsSonicThroat) {
  const auto m = testing_support::perfect_gas(3.5);
  const auto noz = nozzle_expansion(m, perfect_stagnation(2000.0, 1e6), 1.0);
  EXPECT_NEAR(mach(m, noz.throat, noz.v_throat), 1.0, 1e-4);
  EXPECT_EQ(noz.exit.p, noz.throat.p);
  EXPECT_EQ(noz.v_exit, noz.v_throat);
}

TEST(Nozzle, AreaMachRelation) {
  const auto m = testing_support::perfect_gas(3.5);
  const auto noz = nozzle_expansion(m, perfect_stagnation(2000.0, 1e6), 10.0);
  const double M = mach(m, noz.exit, noz.v_exit);
  EXPECT_NEAR(M / perfect::supersonic_mach_for_area(1.4, 10.0), 1.0, 5e-3);
  // Isentropic perfect-gas pressure at that Mach number.
  const double p_ratio = std::pow(1.0 + 0.2 * M * M, -3.5);
  EXPECT_NEAR(noz.exit.p / 1e6 / p_ratio, 1.0, 5e-3);
}

TEST(Nozzle, EquilibriumAirConservation) {
  const auto m = model(testing_support::kAir11);
  const auto stag = make_state_tp(4500.0, 2e7, n_from_mole_fractions(air_X(11), m.molar_masses()));
  const auto noz = nozzle_expansion(m, stag, 100.0);
  const double s0 = mixture_props(m, stag).s;
  const double h0 = mixture_props(m, stag).h;
  for (const auto* st : {&noz.throat, &noz.exit}) {
    EXPECT_NEAR(mixture_props(m, *st).s, s0, 1e-9 * std::abs(s0));
  }
  EXPECT_NEAR(mixture_props(m, noz.throat).h + 0.5 * noz.v_throat * noz.v_throat, h0, 1e-8 * std::abs(h0));
  EXPECT_NEAR(mixture_props(m, noz.exit).h + 0.5 * noz.v_exit * noz.v_exit, h0, 1e-8 * std::abs(h0));
  const double throat_flux = noz.throat.rho * noz.v_throat;
  EXPECT_NEAR(throat_flux / (noz.exit.rho * noz.v_exit) / 100.0, 1.0, 1e-8);
  EXPECT_NEAR(noz.mass_flux_throat, throat_flux, 1e-12 * throat_flux);
  EXPECT_GT(noz.v_exit, noz.v_throat);
  EXPECT_LT(noz.exit.T, noz.throat.T);
}

TEST(Nozzle, ThroatMaximisesMassFlux) {
  const auto m = model(testing_support::kAir5);
  const auto stag = make_state_tp(3000.0, 1e6, n_from_mole_fractions(air_X(5), m.molar_masses()));
  const auto noz = nozzle_expansion(m, stag, 4.0);
  const double s0 = mixture_props(m, stag).s, h0 = mixture_props(m, stag).h;
  for (double f : {0.97, 1.03}) {
    const auto eq = solve_ps(m, noz.throat.p * f, s0, air_X(5));
    const double v = std::sqrt(2.0 * (h0 - mixture_props(m, eq.state).h));
    EXPECT_LT(eq.state.rho * v, noz.mass_flux_throat) << f;
  }
}

TEST(Nozzle, AreaRatioBelowOneRejected) {
  const auto m = testing_support::perfect_gas(3.5);
  EXPECT_THROW(nozzle_expansion(m, perfect_stagnation(2000.0, 1e6), 0.5), ShockError);
}

TEST(Nozzle, EffectiveAreaRatio) {
  EXPECT_DOUBLE_EQ(effective_area_ratio(0.01, 0.1), 100.0);
  EXPECT_NEAR(effective_area_ratio(0.0125, 0.1365, 0.006), std::pow(0.1305 / 0.0125, 2), 1e-9);
  EXPECT_THROW(effective_area_ratio(0.05, 0.06, 0.02), std::invalid_argument);
  EXPECT_THROW(effective_area_ratio(0.0, 0.06), std::invalid_argument);
}

TEST(Pitot, RayleighFormula) {
  const auto m = testing_support::perfect_gas(3.5);
  const double T = 300.0, p = 2e3;
  const auto fs = perfect_stagnation(T, p);
  const double v = 4.0 * testing_support::sound_speed_perfect(1.4, 0.0280134, T);
  const auto pit = pitot_pressure(m, fs, v);
  EXPECT_NEAR(pit.pressure / p / perfect::rayleigh_pitot_ratio(1.4, 4.0), 1.0, 5e-3);
  EXPECT_EQ(pit.pressure, pit.stagnation.p);
}

TEST(Pitot, EquilibriumStagnationAtRest) {
  const auto m = model(testing_support::kAir11);
  const auto fs = make_state_tp(800.0, 1.2e4, n_from_mole_fractions(air_X(11), m.molar_masses()));
  const auto pit = pitot_pressure(m, fs, 3200.0);
  const double h2 = mixture_props(m, pit.shock.post).h + 0.5 * pit.shock.v2 * pit.shock.v2;
  EXPECT_NEAR(mixture_props(m, pit.stagnation).h, h2, 1e-8 * std::abs(h2));
  const double s2 = mixture_props(m, pit.shock.post).s;
  EXPECT_NEAR(mixture_props(m, pit.stagnation).s, s2, 1e-9 * std::abs(s2));
  EXPECT_GT(pit.pressure, pit.shock.post.p);
}

TEST(Pitot, SubsonicRejected) {
  const auto m = testing_support::perfect_gas(3.5);
  EXPECT_THROW(pitot_pressure(m, perfect_stagnation(300.0, 1e5), 100.0), ShockError);
}
