#pragma once

#include <array>

#include <boost/multiprecision/cpp_int.hpp>

namespace chemeq::oracles {

/// Single-reaction check CO2 <=> CO + 1/2 O2 with reaction progress alpha.
struct Co2Problem {
  double T = 0.0;
  double p = 0.0;
  double Kp = 0.0;
  double alpha = 0.0;
};

/// exp[(G_CO2 - G_CO - G_O2/2) / (R_u T)], molar G° in J/mol.
double co2_kp(double T, double g0_co2, double g0_co, double g0_o2);

/// Root in [0, 1] of alpha^3 (1 - (p/p°)/Kp^2) - 3 alpha + 2 = 0.
double co2_alpha(double Kp, double p);

/// (X_CO2, X_CO, X_O2); the three add to exactly 1 in floating point.
std::array<double, 3> co2_mole_fractions(double alpha);

/// Ways n six-sided dice can total S; 0 outside [n, 6n].
boost::multiprecision::cpp_int dice_microstates(unsigned n, long long S);

}  // namespace chemeq::oracles
