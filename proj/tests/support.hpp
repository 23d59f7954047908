#pragma once

#include <string>
#include <vector>

#include "chemeq/equilibrium.hpp"
#include "chemeq/mixture.hpp"
#include "chemeq/thermo.hpp"

namespace testing_support {

const chemeq::ThermoDatabase& database();
chemeq::MixtureModel model(const std::vector<std::string>& names);

inline const std::vector<std::string> kAir5{"N2", "O2", "N", "O", "NO"};
inline const std::vector<std::string> kAir11{"N2", "O2", "N", "O", "NO", "NO+", "N2+", "O+", "N+", "O-", "e-"};
std::vector<double> air_X(std::size_t species_count, double x_n2 = 0.767, double x_o2 = 0.233);

/// One NASA-9 record with constant cp = cp_R * R over [t_low, t_high].
std::string constant_cp_record(const std::string& name, const std::string& element, int atoms, double molar_mass_g,
                               double cp_R, double t_low = 10.0, double t_high = 20000.0);
/// Single-species model with constant cp (frozen perfect gas).
chemeq::MixtureModel perfect_gas(double cp_R, double molar_mass_g = 28.0134);

// Textbook perfect-gas relations.
namespace perfect {
double shock_pressure_ratio(double gamma, double M);
double shock_density_ratio(double gamma, double M);
double area_ratio(double gamma, double M);
double supersonic_mach_for_area(double gamma, double area_ratio);
double rayleigh_pitot_ratio(double gamma, double M);  // p02 / p1
/// Shock-frame Mach number of the reflected shock for a gas moving at u
/// toward a wall with sound speed a.
double reflected_mach(double gamma, double u, double a);
}  // namespace perfect

double sound_speed_perfect(double gamma, double molar_mass, double T);

}  // namespace testing_support
