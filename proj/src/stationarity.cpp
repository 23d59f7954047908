#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "chemeq/constants.hpp"
#include "chemeq/equilibrium.hpp"

namespace chemeq {

namespace {

// 113-bit mantissa: the central difference of a ~1e7 J/kg Lagrangian over
// steps of 1e-11 mol/kg would otherwise be rounding noise.
using Quad = boost::multiprecision::cpp_bin_float_quad;

Quad lagrangian_q(const MixtureModel& model, double T, double p, const std::vector<Quad>& ns,
                  std::span<const double> n0, std::span<const double> lambda) {
  const Quad RT = Quad(kGasConstant) * T;
  const Quad lp = log(Quad(p) / kStandardPressure);
  Quad n = 0;
  for (const auto& v : ns) n += v;
  Quad L = 0;
  for (std::size_t s = 0; s < ns.size(); ++s) {
    if (ns[s] <= 0) continue;
    const Quad g = evaluate(model.species(s), T).g;
    L += ns[s] * (g + RT * log(ns[s] / n) + RT * lp);
  }
  for (std::size_t j = 0; j < model.num_elements(); ++j) {
    if (lambda[j] == 0.0) continue;
    Quad c = 0;
    for (std::size_t s = 0; s < ns.size(); ++s) c += model.a(j, s) * (ns[s] - Quad(n0[s]));
    L += lambda[j] * c;
  }
  return L;
}

}  // namespace

double lagrangian_value(const MixtureModel& model, double T, double p, std::span<const double> ns,
                        std::span<const double> n0, std::span<const double> lambda) {
  for (double v : ns) {
    if (!(v > 0.0)) throw std::domain_error("lagrangian needs strictly positive specific molarities");
  }
  std::vector<Quad> v(ns.begin(), ns.end());
  return static_cast<double>(lagrangian_q(model, T, p, v, n0, lambda));
}

StationarityCheck verify_stationarity(const MixtureModel& model, const Equilibrium& eq, double rel_step) {
  if (!(rel_step > 0.0 && rel_step < 1.0)) throw std::invalid_argument("rel_step must lie in (0, 1)");
  const double T = eq.state.T;
  const double p = eq.state.p;
  std::vector<double> lambda(eq.element_potentials.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) lambda[j] = -eq.element_potentials[j] * kGasConstant * T;

  std::vector<Quad> ns(eq.state.ns.begin(), eq.state.ns.end());
  StationarityCheck out;
  out.lagrangian = static_cast<double>(lagrangian_q(model, T, p, ns, eq.n0, lambda));
  out.dL_dns.assign(ns.size(), 0.0);
  double sum = 0.0;
  for (std::size_t s = 0; s < ns.size(); ++s) {
    const Quad base = ns[s];
    if (base <= 0) continue;
    const Quad h = rel_step * base;
    ns[s] = base + h;
    const Quad up = lagrangian_q(model, T, p, ns, eq.n0, lambda);
    ns[s] = base - h;
    const Quad down = lagrangian_q(model, T, p, ns, eq.n0, lambda);
    ns[s] = base;
    out.dL_dns[s] = static_cast<double>((up - down) / (2 * h));
    sum += out.dL_dns[s] * out.dL_dns[s];
  }
  out.norm = std::sqrt(sum);
  return out;
}

}  // namespace chemeq
