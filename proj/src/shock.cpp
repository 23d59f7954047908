#include "chemeq/shock.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "roots.hpp"

namespace chemeq {

namespace {

// Jump conditions for a trial velocity ratio x = v2/v1 with the downstream
// state taken from an equilibrium (rho, e) solve.
struct Hugoniot {
  const MixtureModel& model;
  const SolverConfig& config;
  std::vector<double> X_in;
  double rho1, p1, h1;
  double v1 = 0.0;
  std::optional<WarmStart> warm;
  Equilibrium last;
  int solves = 0;
  int iterations = 0;

  double operator()(double x) {
    const double v2 = x * v1;
    const double rho2 = rho1 / x;
    const double p2 = rho1 * v1 * v1 + p1 - rho2 * v2 * v2;
    const double h2 = h1 + 0.5 * (v1 * v1 - v2 * v2);
    const double e2 = h2 - p2 / rho2;
    auto eq = solve_rhoe(model, rho2, e2, X_in, config, std::nullopt, warm ? &*warm : nullptr);
    ++solves;
    iterations += eq.report.iterations;
    if (!eq.report.converged) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "inner (rho, e) solve did not converge at v2 = %.9g m/s", v2);
      throw SolverError(buf);
    }
    warm = WarmStart{eq.state.T, eq.state.mole_fractions()};
    const double p_eos = eq.state.p;
    last = std::move(eq);
    return (p2 - p_eos) / p2;
  }
};

std::vector<double> ratio_scan(double lo) {
  std::vector<double> pts;
  for (double d = 1.0 - lo; d > 1e-9; d *= 0.7) {
    const double x = 1.0 - d;
    if (x > 0.0) pts.push_back(x);
  }
  for (double x = lo; x > 1e-3; x *= 0.7) pts.push_back(x);
  return pts;
}

ShockSolution finish(Hugoniot& hg, double x, const GasState& pre) {
  // Re-evaluate at the root so the stored state is exactly the accepted one.
  hg(x);
  ShockSolution out;
  out.pre = pre;
  out.v1 = hg.v1;
  out.post = hg.last.state;
  out.v2 = x * hg.v1;
  out.report = hg.last.report;
  out.inner_solves = hg.solves;
  out.inner_iterations = hg.iterations;
  return out;
}

}  // namespace

ShockSolution normal_shock(const MixtureModel& model, double p1, double T1, double v1, std::span<const double> X0,
                           const SolverConfig& config) {
  if (!(p1 > 0.0) || !(T1 > 0.0)) throw std::invalid_argument("preshock pressure and temperature must be positive");
  if (X0.size() != model.num_species()) throw std::invalid_argument("composition does not match the mixture");
  const GasState pre = make_state_tp(T1, p1, n_from_mole_fractions(X0, model.molar_masses()));
  const double a1 = frozen_sound_speed(model, pre);
  if (!(v1 > a1)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "shock speed %.6g m/s does not exceed the preshock sound speed %.6g m/s", v1, a1);
    throw ShockError(buf);
  }

  if (v1 / a1 - 1.0 < 1e-6) {
    ShockSolution out;
    out.pre = pre;
    out.post = pre;
    out.v1 = out.v2 = out.wave_speed = v1;
    out.report.converged = true;
    return out;
  }

  const auto props = mixture_props(model, pre);
  Hugoniot hg{model, config, pre.mole_fractions(), pre.rho, pre.p, props.h, v1, std::nullopt, {}};
  const double x = detail::bracketed_root(hg, 1.0 / 20.0, 0.99, ratio_scan(1.0 / 20.0), "normal shock");
  auto out = finish(hg, x, pre);
  out.wave_speed = v1;
  return out;
}

ShockSolution reflected_shock(const MixtureModel& model, const GasState& incoming, double v_lab,
                              const SolverConfig& config) {
  if (!(v_lab > 0.0)) throw ShockError("no reflected shock exists for a gas that is not moving toward the wall");
  const auto props = mixture_props(model, incoming);
  Hugoniot hg{model, config, incoming.mole_fractions(), incoming.rho, incoming.p, props.h, 0.0, std::nullopt, {}};

  // Trial x = rho_in/rho_5 fixes the shock frame: v1 = v_lab/(1 - x), v_r = x v1.
  auto f = [&](double x) {
    hg.v1 = v_lab / (1.0 - x);
    return hg(x);
  };
  std::vector<double> scan;
  for (double x = 0.01; x < 0.999; x += 0.02) scan.push_back(x);
  const double x = detail::bracketed_root(f, 0.05, 0.95, scan, "reflected shock");
  hg.v1 = v_lab / (1.0 - x);
  auto out = finish(hg, x, incoming);
  out.wave_speed = out.v2;
  return out;
}

}  // namespace chemeq
