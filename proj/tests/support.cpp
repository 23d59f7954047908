#include "support.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "chemeq/constants.hpp"

namespace testing_support {

const chemeq::ThermoDatabase& database() {
  static const auto db = chemeq::ThermoDatabase::from_file(CHEMEQ_DEFAULT_THERMO);
  return db;
}

chemeq::MixtureModel model(const std::vector<std::string>& names) {
  return chemeq::MixtureModel(database().select(names));
}

std::vector<double> air_X(std::size_t species_count, double x_n2, double x_o2) {
  std::vector<double> X(species_count, 0.0);
  X[0] = x_n2;
  X[1] = x_o2;
  return X;
}

std::string constant_cp_record(const std::string& name, const std::string& element, int atoms, double molar_mass_g,
                               double cp_R, double t_low, double t_high) {
  char buf[128];
  std::string rec;
  std::snprintf(buf, sizeof buf, "%-80s\n", name.c_str());
  rec += buf;
  std::snprintf(buf, sizeof buf, " 1 test   %-2s%6.2f%8s%8s%8s%8s 0%13.7f%15.3f\n", element.c_str(),
                static_cast<double>(atoms), "", "", "", "", molar_mass_g, 0.0);
  rec += buf;
  std::snprintf(buf, sizeof buf, "%11.3f%11.3f7 -2.0 -1.0  0.0  1.0  2.0  3.0  4.0  0.0  %15.3f\n", t_low, t_high, 0.0);
  rec += buf;
  std::snprintf(buf, sizeof buf, "%16.9E%16.9E%16.9E%16.9E%16.9E\n", 0.0, 0.0, cp_R, 0.0, 0.0);
  rec += buf;
  std::snprintf(buf, sizeof buf, "%16.9E%16.9E%16s%16.9E%16.9E\n", 0.0, 0.0, "", 0.0, 0.0);
  rec += buf;
  return rec;
}

chemeq::MixtureModel perfect_gas(double cp_R, double molar_mass_g) {
  std::istringstream in(constant_cp_record("PG", "N", 2, molar_mass_g, cp_R));
  return chemeq::MixtureModel(chemeq::parse_thermo_db(in));
}

namespace perfect {

double shock_pressure_ratio(double g, double M) { return 1.0 + 2.0 * g / (g + 1.0) * (M * M - 1.0); }

double shock_density_ratio(double g, double M) { return (g + 1.0) * M * M / ((g - 1.0) * M * M + 2.0); }

double area_ratio(double g, double M) {
  const double base = 2.0 / (g + 1.0) * (1.0 + 0.5 * (g - 1.0) * M * M);
  return std::pow(base, (g + 1.0) / (2.0 * (g - 1.0))) / M;
}

double supersonic_mach_for_area(double g, double A) {
  double lo = 1.0, hi = 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (area_ratio(g, mid) < A ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double rayleigh_pitot_ratio(double g, double M) {
  const double M2 = M * M;
  const double a = std::pow((g + 1.0) * (g + 1.0) * M2 / (4.0 * g * M2 - 2.0 * (g - 1.0)), g / (g - 1.0));
  return a * (1.0 - g + 2.0 * g * M2) / (g + 1.0);
}

double reflected_mach(double g, double u, double a) {
  const double k = u * (g + 1.0) / (4.0 * a);
  return k + std::sqrt(k * k + 1.0);
}

}  // namespace perfect

double sound_speed_perfect(double gamma, double molar_mass, double T) {
  return std::sqrt(gamma * chemeq::kGasConstant / molar_mass * T);
}

}  // namespace testing_support
