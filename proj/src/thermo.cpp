#include "chemeq/thermo.hpp"

#include <cmath>

#include "chemeq/constants.hpp"

namespace chemeq {

SpeciesThermo evaluate(const SpeciesRecord& species, double T) {
  if (!(T > 0.0)) throw std::domain_error("temperature must be positive");
  SpeciesThermo out;
  const auto& segs = species.segments;
  if (T < segs.front().t_low) {
    T = segs.front().t_low;
    out.out_of_range = true;
  } else if (T > segs.back().t_high) {
    T = segs.back().t_high;
    out.out_of_range = true;
  }
  const ThermoSegment* seg = &segs.back();
  for (const auto& s : segs) {
    if (T <= s.t_high) {
      seg = &s;
      break;
    }
  }
  const auto& a = seg->a;
  const double lnT = std::log(T);
  const double T2 = T * T, T3 = T2 * T, T4 = T3 * T;
  const double Ti = 1.0 / T, Ti2 = Ti * Ti;

  const double cp_R = a[0] * Ti2 + a[1] * Ti + a[2] + a[3] * T + a[4] * T2 + a[5] * T3 + a[6] * T4;
  const double h_RT = -a[0] * Ti2 + a[1] * lnT * Ti + a[2] + a[3] * T / 2.0 + a[4] * T2 / 3.0 + a[5] * T3 / 4.0 +
                      a[6] * T4 / 5.0 + seg->b[0] * Ti;
  const double s_R = -a[0] * Ti2 / 2.0 - a[1] * Ti + a[2] * lnT + a[3] * T + a[4] * T2 / 2.0 + a[5] * T3 / 3.0 +
                     a[6] * T4 / 4.0 + seg->b[1];

  out.cp = kGasConstant * cp_R;
  out.h = kGasConstant * T * h_RT;
  out.s = kGasConstant * s_R;
  out.g = out.h - T * out.s;
  return out;
}

ThermoValue cp0(const SpeciesRecord& species, double T) {
  const auto t = evaluate(species, T);
  return {t.cp, t.out_of_range};
}

ThermoValue h0(const SpeciesRecord& species, double T) {
  const auto t = evaluate(species, T);
  return {t.h, t.out_of_range};
}

ThermoValue s0(const SpeciesRecord& species, double T) {
  const auto t = evaluate(species, T);
  return {t.s, t.out_of_range};
}

ThermoValue g0(const SpeciesRecord& species, double T) {
  const auto t = evaluate(species, T);
  return {t.g, t.out_of_range};
}

double species_entropy(const SpeciesRecord& species, double T, double p, double mole_fraction) {
  if (!(p > 0.0)) throw std::domain_error("pressure must be positive");
  if (!(mole_fraction > 0.0) || mole_fraction > 1.0) {
    throw std::domain_error("entropy of species '" + species.name + "' needs a mole fraction in (0, 1]");
  }
  return s0(species, T).value - kGasConstant * std::log(mole_fraction) -
         kGasConstant * std::log(p / kStandardPressure);
}

}  // namespace chemeq
