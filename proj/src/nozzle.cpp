#include <cmath>
#include <cstdio>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "chemeq/shock.hpp"
#include "roots.hpp"

namespace chemeq {

namespace {

// Equilibrium states along the isentrope through a stagnation point.
struct Isentrope {
  const MixtureModel& model;
  const SolverConfig& config;
  std::vector<double> X;
  double h0 = 0.0;
  double s0 = 0.0;
  std::optional<WarmStart> warm;

  struct Point {
    GasState state;
    double h = 0.0;
    double v = 0.0;
  };

  Point at(double p) {
    auto eq = solve_ps(model, p, s0, X, config, std::nullopt, warm ? &*warm : nullptr);
    if (!eq.report.converged) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "isentropic (p, s) solve did not converge at p = %.9g Pa", p);
      throw SolverError(buf);
    }
    warm = WarmStart{eq.state.T, eq.state.mole_fractions()};
    Point pt;
    pt.h = mixture_props(model, eq.state).h;
    pt.v = std::sqrt(std::max(0.0, 2.0 * (h0 - pt.h)));
    pt.state = std::move(eq.state);
    return pt;
  }

  double mass_flux(double p) {
    const auto pt = at(p);
    return pt.state.rho * pt.v;
  }
};

}  // namespace

NozzleSolution nozzle_expansion(const MixtureModel& model, const GasState& stagnation, double area_ratio,
                                const SolverConfig& config) {
  if (!(area_ratio >= 1.0)) throw ShockError("nozzle area ratio must be at least 1");
  const auto props = mixture_props(model, stagnation);
  Isentrope ise{model, config, stagnation.mole_fractions(), props.h, props.s, std::nullopt};
  ise.warm = WarmStart{stagnation.T, ise.X};
  const double p0 = stagnation.p;

  auto neg_flux = [&](double lnp) {
    try {
      return -ise.mass_flux(std::exp(lnp));
    } catch (const SolverError& err) {
      throw ShockError(std::string("nozzle throat search: ") + err.what());
    }
  };
  std::uintmax_t max_iter = 200;
  const auto best = boost::math::tools::brent_find_minima(neg_flux, std::log(0.05 * p0), std::log(0.99 * p0),
                                                          std::numeric_limits<double>::digits, max_iter);
  const double p_throat = std::exp(best.first);

  NozzleSolution out;
  out.area_ratio = area_ratio;
  out.stagnation_h = props.h;
  out.stagnation_s = props.s;
  auto throat = ise.at(p_throat);
  out.throat = throat.state;
  out.v_throat = throat.v;
  out.mass_flux_throat = throat.state.rho * throat.v;

  if (area_ratio == 1.0) {
    out.exit = out.throat;
    out.v_exit = out.v_throat;
    return out;
  }

  const double G_target = out.mass_flux_throat / area_ratio;
  auto f = [&](double lnp) { return std::log(ise.mass_flux(std::exp(lnp)) / G_target); };
  std::vector<double> scan;
  double lo = std::log(p_throat);
  for (int k = 0; k < 60; ++k) {
    lo -= std::log(2.0);
    scan.push_back(lo);
    auto v = detail::try_eval(f, lo);
    if (v && *v < 0.0) break;
  }
  ise.warm = WarmStart{throat.state.T, throat.state.mole_fractions()};
  const double lnp_exit =
      detail::bracketed_root(f, scan.back(), std::log(p_throat) - 1e-9, scan, "nozzle exit");
  auto exit = ise.at(std::exp(lnp_exit));
  out.exit = exit.state;
  out.v_exit = exit.v;
  return out;
}

double effective_area_ratio(double throat_radius, double exit_radius, double displacement_thickness) {
  if (!(throat_radius > 0.0)) throw std::invalid_argument("throat radius must be positive");
  const double r = exit_radius - displacement_thickness;
  if (!(r >= throat_radius)) throw std::invalid_argument("effective exit radius is smaller than the throat");
  return (r / throat_radius) * (r / throat_radius);
}

PitotSolution pitot_pressure(const MixtureModel& model, const GasState& freestream, double velocity,
                             const SolverConfig& config) {
  PitotSolution out;
  out.shock = normal_shock(model, freestream.p, freestream.T, velocity, freestream.mole_fractions(), config);
  const auto& s2 = out.shock.post;
  const auto props = mixture_props(model, s2);
  const double h_total = props.h + 0.5 * out.shock.v2 * out.shock.v2;

  Isentrope ise{model, config, s2.mole_fractions(), h_total, props.s, WarmStart{s2.T, s2.mole_fractions()}};
  auto f = [&](double lnp) { return (ise.at(std::exp(lnp)).h - h_total) / h_total; };
  const double lo = std::log(s2.p);
  double hi = lo;
  std::vector<double> scan;
  for (int k = 0; k < 40; ++k) {
    hi += 0.25;
    scan.push_back(hi);
    auto v = detail::try_eval(f, hi);
    if (v && *v > 0.0) break;
  }
  const double lnp = detail::bracketed_root(f, lo, scan.back(), scan, "pitot compression");
  out.stagnation = ise.at(std::exp(lnp)).state;
  out.pressure = out.stagnation.p;
  return out;
}

RstSolution reflected_shock_tunnel(const MixtureModel& model, const RstConditions& c, const SolverConfig& config) {
  RstSolution out;
  out.incident = normal_shock(model, c.p1, c.T1, c.shock_speed, c.X1, config);
  out.state1 = out.incident.pre;
  const double u2 = c.shock_speed - out.incident.v2;
  out.reflected = reflected_shock(model, out.incident.post, u2, config);
  out.stagnation = out.reflected.post;

  if (c.supply_pressure) {
    const auto& s5 = out.reflected.post;
    const auto props = mixture_props(model, s5);
    WarmStart warm{s5.T, s5.mole_fractions()};
    auto eq = solve_ps(model, *c.supply_pressure, props.s, warm.X, config, std::nullopt, &warm);
    if (!eq.report.converged) throw ShockError("relaxation to the supply pressure did not converge");
    out.stagnation = eq.state;
  }

  out.nozzle = nozzle_expansion(model, out.stagnation, c.area_ratio, config);
  out.pitot = pitot_pressure(model, out.nozzle.exit, out.nozzle.v_exit, config);
  out.pitot_to_stagnation_ratio = out.pitot.pressure / out.stagnation.p;
  return out;
}

}  // namespace chemeq
