#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "chemeq/constants.hpp"
#include "chemeq/mixture.hpp"
#include "support.hpp"

using namespace chemeq;
using testing_support::database;
using testing_support::model;

TEST(MixtureModel, ElementRowsAndCharge) {
  const auto m = model(testing_support::kAir11);
  const auto& names = m.element_names();
  ASSERT_EQ(names.size(), 3u);
  EXPECT_EQ(names[0], "N");
  EXPECT_EQ(names[1], "O");
  EXPECT_EQ(names[2], kChargeElement);
  EXPECT_TRUE(m.is_charge_row(2));
  EXPECT_EQ(m.a(0, m.index_of("N2")), 2.0);
  EXPECT_EQ(m.a(1, m.index_of("NO")), 1.0);
  EXPECT_EQ(m.a(2, m.index_of("e-")), -1.0);
  EXPECT_EQ(m.a(2, m.index_of("NO+")), 1.0);
  EXPECT_EQ(m.a(0, m.index_of("e-")), 0.0);
}

TEST(MixtureModel, NoChargeRowForNeutrals) {
  const auto m = model(testing_support::kAir5);
  EXPECT_EQ(m.num_elements(), 2u);
}

TEST(MixtureModel, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(MixtureModel(std::vector<SpeciesRecord>{}), std::invalid_argument);
  EXPECT_THROW(model({"N2", "N2"}), std::invalid_argument);
}

TEST(MixtureModel, RejectsEmptyColumn) {
  auto rec = database().at("N2");
  rec.name = "Nothing";
  rec.elements.clear();
  EXPECT_THROW(MixtureModel(std::vector<SpeciesRecord>{rec}), std::invalid_argument);
}

TEST(Composition, PureSpecies) {
  const auto m = model({"N2"});
  const auto n = n_from_mole_fractions(std::vector<double>{1.0}, m.molar_masses());
  EXPECT_DOUBLE_EQ(n[0], 1.0 / 0.0280134);
}

TEST(Composition, MassFractionsNormalize) {
  const auto m = model(testing_support::kAir5);
  const std::vector<double> X{0.76, 0.23, 0, 0, 0.01};
  const auto n = n_from_mole_fractions(X, m.molar_masses());
  const auto Y = mass_fractions_from_n(n, m.molar_masses());
  EXPECT_NEAR(std::accumulate(Y.begin(), Y.end(), 0.0), 1.0, 1e-14);
}

TEST(Composition, RoundTrips) {
  const auto m = model(testing_support::kAir5);
  const std::vector<double> X{0.747849, 0.209004, 7.93101e-7, 0.0207964, 0.0223493};
  const auto Xn = normalized(X);
  const auto back = mole_fractions_from_n(n_from_mole_fractions(Xn, m.molar_masses()));
  for (std::size_t i = 0; i < X.size(); ++i) EXPECT_NEAR(back[i], Xn[i], 1e-14);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> Y(5);
    for (auto& y : Y) y = u(rng);
    const auto Yn = normalized(Y);
    const auto n = n_from_mass_fractions(Yn, m.molar_masses());
    const auto Yb = mass_fractions_from_n(n, m.molar_masses());
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(Yb[i], Yn[i], 1e-14);
  }
}

TEST(Composition, RejectsNegative) {
  const auto m = model({"N2", "O2"});
  EXPECT_THROW(n_from_mole_fractions(std::vector<double>{1.0, -0.1}, m.molar_masses()), std::invalid_argument);
  EXPECT_THROW(mole_fractions_from_n(std::vector<double>{-1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(normalized(std::vector<double>{0.0, 0.0}), std::invalid_argument);
}

TEST(GasStateTest, IdealGasConsistency) {
  const auto m = model(testing_support::kAir5);
  const auto n = n_from_mole_fractions(std::vector<double>{0.7, 0.2, 0.01, 0.04, 0.05}, m.molar_masses());
  const auto st = make_state_tp(2500.0, 1e4, n);
  EXPECT_NEAR(st.p, st.rho * st.n * kGasConstant * st.T, 1e-10 * st.p);
  const auto X = st.mole_fractions();
  EXPECT_NEAR(std::accumulate(X.begin(), X.end(), 0.0), 1.0, 1e-12);
  const auto st2 = make_state_trho(st.T, st.rho, st.ns);
  EXPECT_NEAR(st2.p, st.p, 1e-12 * st.p);
}

TEST(MixtureProps, SingleSpeciesEntropy) {
  const auto m = model({"N2"});
  const auto st = make_state_tp(300.0, kStandardPressure, std::vector<double>{1.0 / 0.0280134});
  const auto pr = mixture_props(m, st);
  EXPECT_DOUBLE_EQ(pr.s, st.n * s0(database().at("N2"), 300.0).value);
  EXPECT_DOUBLE_EQ(pr.M_mix, 0.0280134);
}

TEST(MixtureProps, AirEnergyIndependentSum) {
  const auto m = model(testing_support::kAir5);
  const std::vector<double> ns{26.1, 7.3, 2.8e-5, 0.73, 0.78};
  const auto st = make_state_tp(2500.0, 10135.0, ns);
  const auto pr = mixture_props(m, st);
  // Sum E_s = H_s - R T per species straight from the polynomial forms.
  double e = 0.0, cp = 0.0;
  for (std::size_t s = 0; s < ns.size(); ++s) {
    const auto& seg = m.species(s).segments[1];
    ASSERT_TRUE(seg.t_low <= 2500.0 && 2500.0 <= seg.t_high);
    const double T = 2500.0;
    const auto& a = seg.a;
    const double h_RT = -a[0] / (T * T) + a[1] * std::log(T) / T + a[2] + a[3] * T / 2 + a[4] * T * T / 3 +
                        a[5] * T * T * T / 4 + a[6] * T * T * T * T / 5 + seg.b[0] / T;
    const double cp_R = a[0] / (T * T) + a[1] / T + a[2] + a[3] * T + a[4] * T * T + a[5] * T * T * T +
                        a[6] * T * T * T * T;
    e += ns[s] * (h_RT - 1.0) * kGasConstant * T;
    cp += ns[s] * cp_R * kGasConstant;
  }
  EXPECT_NEAR(pr.e, e, 1e-10 * std::abs(e));
  EXPECT_NEAR(pr.h, pr.e + st.n * kGasConstant * st.T, 1e-10 * std::abs(pr.h));
  EXPECT_NEAR(pr.cp, cp, 1e-10 * cp);
  EXPECT_NEAR(pr.cv, cp - st.n * kGasConstant, 1e-10 * cp);
}

TEST(MixtureProps, AbsentSpeciesSkipped) {
  const auto m = model(testing_support::kAir5);
  const auto st = make_state_tp(1000.0, 1e5, std::vector<double>{30.0, 5.0, 0.0, 0.0, 0.0});
  const auto pr = mixture_props(m, st);
  EXPECT_TRUE(std::isfinite(pr.s));
}

TEST(MixtureProps, FrozenSoundSpeedPerfectGas) {
  const auto m = testing_support::perfect_gas(3.5);
  const auto st = make_state_tp(400.0, 1e5, std::vector<double>{1.0 / 0.0280134});
  EXPECT_NEAR(frozen_sound_speed(m, st), testing_support::sound_speed_perfect(1.4, 0.0280134, 400.0), 1e-9);
}
