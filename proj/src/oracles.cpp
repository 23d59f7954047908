#include "chemeq/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "chemeq/constants.hpp"

namespace chemeq::oracles {

double co2_kp(double T, double g0_co2, double g0_co, double g0_o2) {
  if (!(T > 0.0)) throw std::invalid_argument("temperature must be positive");
  return std::exp((g0_co2 - g0_co - 0.5 * g0_o2) / (kGasConstant * T));
}

double co2_alpha(double Kp, double p) {
  if (!(Kp > 0.0) || !(p > 0.0)) throw std::invalid_argument("Kp and p must be positive");
  const double c = 1.0 - (p / kStandardPressure) / (Kp * Kp);
  auto f = [c](double a) { return (c * a * a - 3.0) * a + 2.0; };
  auto df = [c](double a) { return 3.0 * c * a * a - 3.0; };

  // f(0) = 2 > 0; f(1) = c - 1 < 0 for any finite Kp.
  double lo = 0.0, hi = 1.0;
  if (f(hi) > 0.0) throw std::domain_error("no reaction progress root in [0, 1]");
  if (f(hi) == 0.0) return hi;
  double a = 0.5;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double fa = f(a);
    if (fa == 0.0) return a;
    (fa > 0.0 ? lo : hi) = a;
    const double d = df(a);
    double next = d != 0.0 ? a - fa / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - a) < 1e-16) return next;
    a = next;
  }
  return a;
}

std::array<double, 3> co2_mole_fractions(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must lie in [0, 1]");
  // On the 2^-53 grid every partial sum below 1 is exact, so the three
  // fractions add to 1 in any order (absolute error <= 2^-53 per entry).
  auto grid = [](double x) { return std::ldexp(std::round(std::ldexp(x, 53)), -53); };
  const double d = 2.0 + alpha;
  const double x_co = grid(2.0 * alpha / d);
  const double x_o2 = grid(alpha / d);
  return {1.0 - x_co - x_o2, x_co, x_o2};
}

boost::multiprecision::cpp_int dice_microstates(unsigned n, long long S) {
  using boost::multiprecision::cpp_int;
  if (n == 0) throw std::invalid_argument("need at least one die");
  if (S < static_cast<long long>(n) || S > 6LL * n) return 0;

  auto binom = [](long long top, long long k) {
    cpp_int r = 1;
    if (k < 0 || k > top) return cpp_int(0);
    for (long long i = 1; i <= k; ++i) {
      r *= top - k + i;
      r /= i;
    }
    return r;
  };
  cpp_int total = 0;
  const long long M = (S - n) / 6;
  for (long long k = 0; k <= M; ++k) {
    const cpp_int term = binom(n, k) * binom(S - 6 * k - 1, n - 1);
    if (k % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace chemeq::oracles
