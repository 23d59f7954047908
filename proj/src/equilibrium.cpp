#include "chemeq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numeric>

#include "chemeq/constants.hpp"

namespace chemeq {

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!(relax_fraction > 0.0 && relax_fraction <= 1.0)) {
    throw std::invalid_argument("relax_fraction must lie in (0, 1]");
  }
  if (!(trace_floor_fraction > 0.0)) throw std::invalid_argument("trace_floor_fraction must be positive");
}

double SolverWorkspace::T() const { return std::exp(lnT); }

double Relaxation::smallest() const {
  double m = std::min(total, temperature);
  for (double l : species) m = std::min(m, l);
  return m;
}

namespace {

constexpr double kR = kGasConstant;

// Per-species nondimensional standard-state terms at one temperature.
struct SpeciesTerms {
  std::vector<double> g_RT, h_RT, cp_R, s_R;
  bool out_of_range = false;
};

SpeciesTerms species_terms(const MixtureModel& model, const SolverWorkspace& ws, double T) {
  const std::size_t n = model.num_species();
  SpeciesTerms t;
  t.g_RT.assign(n, 0.0);
  t.h_RT.assign(n, 0.0);
  t.cp_R.assign(n, 0.0);
  t.s_R.assign(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    if (!ws.active_species[s]) continue;
    const auto th = evaluate(model.species(s), T);
    t.g_RT[s] = th.g / (kR * T);
    t.h_RT[s] = th.h / (kR * T);
    t.cp_R[s] = th.cp / kR;
    t.s_R[s] = th.s / kR;
    t.out_of_range = t.out_of_range || th.out_of_range;
  }
  return t;
}

bool has_total_unknown(Mode m) { return m == Mode::pt || m == Mode::ps; }
bool has_temperature_unknown(Mode m) { return m == Mode::rhoe || m == Mode::ps; }

double active_sum(const SolverWorkspace& ws) {
  double sum = 0.0;
  for (std::size_t s = 0; s < ws.ns.size(); ++s) {
    if (ws.active_species[s]) sum += ws.ns[s];
  }
  return sum;
}

// ln of the pressure-like factor in the species potential: ln(p/p°) for
// Gibbs modes, ln(ρ R T/p°) for the Helmholtz mode.
double log_pressure_term(const Problem& pr, double T) {
  if (pr.mode == Mode::rhoe) return std::log(pr.rho * kR * T / kStandardPressure);
  return std::log(pr.p / kStandardPressure);
}

// μ_s / RT at the current iterate, evaluated from lnns (never log(ns)).
std::vector<double> potentials(const Problem& pr, const SolverWorkspace& ws, const SpeciesTerms& t, double T) {
  const double lp = log_pressure_term(pr, T);
  std::vector<double> mu(ws.lnns.size(), 0.0);
  for (std::size_t s = 0; s < mu.size(); ++s) {
    if (!ws.active_species[s]) continue;
    mu[s] = t.g_RT[s] + ws.lnns[s] + lp;
    if (has_total_unknown(pr.mode)) mu[s] -= ws.lnn;
  }
  return mu;
}

double mixture_energy(const SolverWorkspace& ws, const SpeciesTerms& t, double T) {
  double e = 0.0;
  for (std::size_t s = 0; s < ws.ns.size(); ++s) {
    if (ws.active_species[s]) e += ws.ns[s] * (t.h_RT[s] - 1.0) * kR * T;
  }
  return e;
}

// Nondimensional partial molar entropy S_s/R with the mixing and pressure terms.
double entropy_R(const Problem& pr, const SolverWorkspace& ws, const SpeciesTerms& t, std::size_t s) {
  return t.s_R[s] - (ws.lnns[s] - ws.lnn) - std::log(pr.p / kStandardPressure);
}

double mixture_entropy(const Problem& pr, const SolverWorkspace& ws, const SpeciesTerms& t) {
  double sum = 0.0;
  for (std::size_t s = 0; s < ws.ns.size(); ++s) {
    if (ws.active_species[s]) sum += ws.ns[s] * entropy_R(pr, ws, t, s);
  }
  return kR * sum;
}

void require_composition(const MixtureModel& model, std::span<const double> X0) {
  if (X0.size() != model.num_species()) {
    throw std::invalid_argument("composition has " + std::to_string(X0.size()) + " entries, mixture has " +
                                std::to_string(model.num_species()) + " species");
  }
}

std::vector<double> floored_guess(const MixtureModel& model, std::span<const double> X, double floor_fraction,
                                  const std::vector<char>& active, double& n_out) {
  const auto Xn = normalized(X);
  double M0 = 0.0;
  for (std::size_t s = 0; s < Xn.size(); ++s) M0 += Xn[s] * model.species(s).molar_mass;
  const double n = 1.0 / M0;
  std::vector<double> ns(Xn.size(), 0.0);
  for (std::size_t s = 0; s < Xn.size(); ++s) {
    if (active[s]) ns[s] = std::max(Xn[s] / M0, n * floor_fraction);
  }
  n_out = n;
  return ns;
}

}  // namespace

InitialGuess initial_guess(const MixtureModel& model, std::span<const double> X0, const SolverConfig& config) {
  require_composition(model, X0);
  std::vector<char> active(model.num_species(), 1);
  double n = 0.0;
  const auto ns = floored_guess(model, X0, config.trace_floor_fraction, active, n);
  InitialGuess g;
  g.lnns.resize(ns.size());
  for (std::size_t s = 0; s < ns.size(); ++s) g.lnns[s] = std::log(ns[s]);
  g.lnn = std::log(n);
  return g;
}

SolverWorkspace make_workspace(const MixtureModel& model, const Problem& problem, std::span<const double> X0,
                               const SolverConfig& config, double T_start,
                               std::optional<std::span<const double>> start_X) {
  config.validate();
  require_composition(model, X0);
  if (problem.n0.size() != model.num_species()) throw std::invalid_argument("n0 does not match the mixture");

  const std::size_t nsp = model.num_species();
  const std::size_t nel = model.num_elements();
  SolverWorkspace ws;
  ws.b0 = model.element_totals(problem.n0);
  ws.active_species.assign(nsp, 1);

  // Elements with no atoms in the budget: drop the row and freeze out every
  // species that carries the element.
  std::vector<char> keep(nel, 1);
  for (std::size_t j = 0; j < nel; ++j) {
    if (model.is_charge_row(j) || ws.b0[j] > 0.0) continue;
    keep[j] = 0;
    for (std::size_t s = 0; s < nsp; ++s) {
      if (model.a(j, s) != 0.0) ws.active_species[s] = 0;
    }
  }
  for (std::size_t j = 0; j < nel; ++j) {
    if (!keep[j]) continue;
    if (model.is_charge_row(j)) {
      bool any = false;
      for (std::size_t s = 0; s < nsp; ++s) any = any || (ws.active_species[s] && model.a(j, s) != 0.0);
      if (!any) continue;
    }
    ws.rows.push_back(j);
  }
  if (std::none_of(ws.active_species.begin(), ws.active_species.end(), [](char c) { return c != 0; })) {
    throw SolverError("no species can be formed from the initial composition");
  }

  double n = 0.0;
  ws.ns = floored_guess(model, start_X ? *start_X : X0, config.trace_floor_fraction, ws.active_species, n);
  ws.lnns.assign(nsp, -std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < nsp; ++s) {
    if (ws.active_species[s]) ws.lnns[s] = std::log(ws.ns[s]);
  }
  ws.lnn = std::log(n);
  ws.lnT = std::log(std::clamp(T_start, model.t_min(), model.t_max()));
  ws.pi.assign(nel, 0.0);
  return ws;
}

Residuals residuals(const MixtureModel& model, const Problem& pr, const SolverWorkspace& ws) {
  const double T = ws.T();
  const auto t = species_terms(model, ws, T);
  const auto mu = potentials(pr, ws, t, T);
  const std::size_t nsp = model.num_species();

  Residuals r;
  r.species.assign(nsp, 0.0);
  for (std::size_t s = 0; s < nsp; ++s) {
    if (!ws.active_species[s]) continue;
    double f = mu[s];
    for (std::size_t j : ws.rows) f -= model.a(j, s) * ws.pi[j];
    r.species[s] = f;
  }
  for (std::size_t j : ws.rows) {
    double b = 0.0;
    for (std::size_t s = 0; s < nsp; ++s) {
      if (ws.active_species[s]) b += model.a(j, s) * ws.ns[s];
    }
    r.elements.push_back(b - ws.b0[j]);
  }
  if (has_total_unknown(pr.mode)) r.total = active_sum(ws) - std::exp(ws.lnn);
  if (pr.mode == Mode::rhoe) r.closure = (pr.e - mixture_energy(ws, t, T)) / (kR * T);
  if (pr.mode == Mode::ps) r.closure = (pr.s - mixture_entropy(pr, ws, t)) / kR;
  return r;
}

Residuals residuals_pt(const MixtureModel& model, double T, double p, std::span<const double> lnns,
                       std::span<const double> ns, double lnn, std::span<const double> pi,
                       std::span<const double> n0) {
  Problem pr;
  pr.mode = Mode::pt;
  pr.T = T;
  pr.p = p;
  pr.n0.assign(n0.begin(), n0.end());
  SolverWorkspace ws;
  ws.lnns.assign(lnns.begin(), lnns.end());
  ws.ns.assign(ns.begin(), ns.end());
  ws.lnn = lnn;
  ws.lnT = std::log(T);
  ws.pi.assign(pi.begin(), pi.end());
  ws.active_species.assign(model.num_species(), 1);
  ws.b0 = model.element_totals(n0);
  for (std::size_t j = 0; j < model.num_elements(); ++j) ws.rows.push_back(j);
  return residuals(model, pr, ws);
}

double residual_norm(const Residuals& r, std::span<const double> ns) {
  double sum = 0.0;
  for (std::size_t s = 0; s < r.species.size(); ++s) {
    const double w = ns[s] * r.species[s];
    sum += w * w;
  }
  for (double f : r.elements) sum += f * f;
  sum += r.total * r.total + r.closure * r.closure;
  return std::sqrt(sum);
}

DenseSystem assemble_reduced_system(const MixtureModel& model, const Problem& pr, const SolverWorkspace& ws) {
  const double T = ws.T();
  const auto t = species_terms(model, ws, T);
  const auto mu = potentials(pr, ws, t, T);
  const std::size_t m = ws.rows.size();
  const bool with_n = has_total_unknown(pr.mode);
  const bool with_T = has_temperature_unknown(pr.mode);
  const std::size_t in = m;
  const std::size_t iT = with_n ? m + 1 : m;
  DenseSystem sys(m + (with_n ? 1 : 0) + (with_T ? 1 : 0));

  std::vector<double> ar(m);
  double sum_n = 0.0;
  for (std::size_t s = 0; s < model.num_species(); ++s) {
    if (!ws.active_species[s]) continue;
    const double w = ws.ns[s];
    sum_n += w;
    if (w == 0.0) continue;
    for (std::size_t k = 0; k < m; ++k) ar[k] = model.a(ws.rows[k], s);
    const double e_RT = t.h_RT[s] - 1.0;
    // Temperature coupling of F_s: E_s/RT at fixed density, H_s/RT at fixed pressure.
    const double dT = pr.mode == Mode::rhoe ? e_RT : t.h_RT[s];

    for (std::size_t k = 0; k < m; ++k) {
      if (ar[k] == 0.0) continue;
      for (std::size_t l = 0; l < m; ++l) sys(k, l) += ar[k] * ar[l] * w;
      if (with_n) sys(k, in) += ar[k] * w;
      if (with_T) sys(k, iT) += ar[k] * w * dT;
      sys.rhs[k] += ar[k] * w * mu[s];
    }
    if (with_n) {
      for (std::size_t l = 0; l < m; ++l) sys(in, l) += ar[l] * w;
      sys(in, in) += w;
      if (with_T) sys(in, iT) += w * t.h_RT[s];
      sys.rhs[in] += w * mu[s];
    }
    if (pr.mode == Mode::rhoe) {
      for (std::size_t l = 0; l < m; ++l) sys(iT, l) += ar[l] * w * e_RT;
      sys(iT, iT) += w * (t.cp_R[s] - 1.0) + w * e_RT * e_RT;
      sys.rhs[iT] += w * e_RT * mu[s];
    } else if (pr.mode == Mode::ps) {
      const double sig = entropy_R(pr, ws, t, s);
      for (std::size_t l = 0; l < m; ++l) sys(iT, l) += ar[l] * w * sig;
      sys(iT, in) += w * sig;
      sys(iT, iT) += w * t.cp_R[s] + w * t.h_RT[s] * sig;
      sys.rhs[iT] += w * sig * mu[s];
    }
  }

  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = ws.rows[k];
    double b = 0.0;
    for (std::size_t s = 0; s < model.num_species(); ++s) {
      if (ws.active_species[s]) b += model.a(j, s) * ws.ns[s];
    }
    sys.rhs[k] += ws.b0[j] - b;
  }
  if (with_n) {
    const double n = std::exp(ws.lnn);
    sys(in, in) -= n;
    sys.rhs[in] += n - sum_n;
  }
  if (pr.mode == Mode::rhoe) sys.rhs[iT] += (pr.e - mixture_energy(ws, t, T)) / (kR * T);
  if (pr.mode == Mode::ps) {
    sys.rhs[iT] += (pr.s - mixture_entropy(pr, ws, t)) / kR + std::exp(ws.lnn) - sum_n;
  }
  return sys;
}

NewtonStep newton_step(const MixtureModel& model, const Problem& pr, const SolverWorkspace& ws) {
  const auto sys = assemble_reduced_system(model, pr, ws);
  const std::size_t m = ws.rows.size();
  std::vector<double> x;
  try {
    x = solve_dense(sys);
  } catch (const SingularMatrixError& err) {
    std::string what = err.column() < m ? "element '" + model.element_names()[ws.rows[err.column()]] + "'"
                       : (has_total_unknown(pr.mode) && err.column() == m) ? std::string("total molarity")
                                                                           : std::string("temperature");
    throw SolverError("singular reduced system at the row for " + what);
  }

  NewtonStep step;
  step.pi.assign(model.num_elements(), 0.0);
  for (std::size_t k = 0; k < m; ++k) step.pi[ws.rows[k]] = x[k];
  const bool with_n = has_total_unknown(pr.mode);
  if (with_n) step.dlnn = x[m];
  if (has_temperature_unknown(pr.mode)) step.dlnT = x[with_n ? m + 1 : m];

  const double T = ws.T();
  const auto t = species_terms(model, ws, T);
  const auto mu = potentials(pr, ws, t, T);
  step.dlnns.assign(model.num_species(), 0.0);
  for (std::size_t s = 0; s < model.num_species(); ++s) {
    if (!ws.active_species[s]) continue;
    double d = -mu[s] + step.dlnn;
    for (std::size_t k = 0; k < m; ++k) d += model.a(ws.rows[k], s) * x[k];
    if (pr.mode == Mode::rhoe) d += (t.h_RT[s] - 1.0) * step.dlnT;
    if (pr.mode == Mode::ps) d += t.h_RT[s] * step.dlnT;
    step.dlnns[s] = d;
  }
  return step;
}

double relaxation_factor(double delta, double ln_reference, double fraction) {
  const double mag = std::abs(delta);
  if (mag == 0.0) return 1.0;
  return std::min(1.0, fraction * std::abs(ln_reference) / mag);
}

Relaxation apply_relaxation(SolverWorkspace& ws, const NewtonStep& step, const Problem& pr,
                            const MixtureModel& model, const SolverConfig& config) {
  const std::size_t nsp = ws.lnns.size();
  const double lnn_ref = has_total_unknown(pr.mode) ? ws.lnn : std::log(active_sum(ws));
  const double f = config.relax_fraction;

  Relaxation lam;
  lam.species.assign(nsp, 1.0);
  if (config.under_relax) {
    for (std::size_t s = 0; s < nsp; ++s) {
      if (ws.active_species[s]) lam.species[s] = relaxation_factor(step.dlnns[s], lnn_ref, f);
    }
    lam.total = relaxation_factor(step.dlnn, lnn_ref, f);
    lam.temperature = relaxation_factor(step.dlnT, ws.lnT, f);
  }

  for (std::size_t s = 0; s < nsp; ++s) {
    if (!ws.active_species[s]) continue;
    ws.lnns[s] += lam.species[s] * step.dlnns[s];
  }
  if (has_total_unknown(pr.mode)) ws.lnn += lam.total * step.dlnn;
  if (has_temperature_unknown(pr.mode)) {
    ws.lnT = std::clamp(ws.lnT + lam.temperature * step.dlnT, std::log(model.t_min()), std::log(model.t_max()));
  }
  for (std::size_t s = 0; s < nsp; ++s) {
    if (ws.active_species[s]) ws.ns[s] = std::exp(ws.lnns[s]);
  }
  ws.pi = step.pi;
  return lam;
}

namespace {

void print_trace(std::ostream& os, const MixtureModel& model, const SolverWorkspace& before, const NewtonStep& step,
                 const Relaxation& lam, int iter, double eps) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "iter %2d: [%.2f]", iter, active_sum(before));
  os << buf;
  for (double v : before.ns) {
    std::snprintf(buf, sizeof buf, " %.2f", v);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "  (%.3e)\n", eps);
  os << buf;
  for (std::size_t s = 0; s < model.num_species(); ++s) {
    if (!before.active_species[s]) continue;
    std::snprintf(buf, sizeof buf, " sp: %-3s lnns: %8.4f dlnns: %9.6f  lambda: %7.4f\n",
                  model.species(s).name.c_str(), before.lnns[s], step.dlnns[s], lam.species[s]);
    os << buf;
  }
}

}  // namespace

Equilibrium solve(const MixtureModel& model, const Problem& problem, std::span<const double> X0,
                  const SolverConfig& config, double T_start, const WarmStart* warm) {
  std::optional<std::span<const double>> start_X;
  if (warm != nullptr) {
    start_X = std::span<const double>(warm->X);
    T_start = warm->T;
  }
  SolverWorkspace ws = make_workspace(model, problem, X0, config, T_start, start_X);
  std::ostream& trace = config.trace != nullptr ? *config.trace : std::cerr;

  SolveReport report;
  const bool variable_T = has_temperature_unknown(problem.mode);
  const double lnT_lo = std::log(model.t_min());
  const double lnT_hi = std::log(model.t_max());
  int pinned = 0;

  for (int iter = 0;; ++iter) {
    const auto res = residuals(model, problem, ws);
    const double eps = residual_norm(res, ws.ns);
    report.residual_history.push_back(eps);
    report.final_residual = eps;
    if (!std::isfinite(eps)) {
      report.message = "residual became non-finite";
      break;
    }
    if (eps < config.tol) {
      report.converged = true;
      break;
    }
    if (iter >= config.max_iter) {
      report.message = "maximum iteration count reached";
      break;
    }

    const auto step = newton_step(model, problem, ws);
    const SolverWorkspace before = config.verbose ? ws : SolverWorkspace{};
    const auto lam = apply_relaxation(ws, step, problem, model, config);
    report.lambda_history.push_back(lam.smallest());
    report.iterations = iter + 1;
    if (config.verbose) print_trace(trace, model, before, step, lam, iter, eps);

    if (variable_T) {
      const bool at_lo = ws.lnT <= lnT_lo && step.dlnT < 0.0;
      const bool at_hi = ws.lnT >= lnT_hi && step.dlnT > 0.0;
      pinned = (at_lo || at_hi) ? pinned + 1 : 0;
      if (pinned >= 5) {
        const char* target = problem.mode == Mode::rhoe ? "internal energy" : "entropy";
        throw SolverError(std::string("target ") + target + " is unreachable: temperature pinned at the " +
                          (at_lo ? "lower" : "upper") + " database bound of " +
                          std::to_string(at_lo ? model.t_min() : model.t_max()) + " K");
      }
    }
  }

  Equilibrium out;
  const double T = ws.T();
  out.report = std::move(report);
  out.report.out_of_range = species_terms(model, ws, T).out_of_range;
  if (problem.mode == Mode::rhoe) {
    out.state = make_state_trho(T, problem.rho, ws.ns);
  } else {
    out.state = make_state_tp(T, problem.p, ws.ns);
  }
  out.element_potentials = ws.pi;
  out.lnns = ws.lnns;
  out.n0 = problem.n0;
  return out;
}

namespace {
Problem base_problem(const MixtureModel& model, Mode mode, std::span<const double> X0) {
  require_composition(model, X0);
  Problem pr;
  pr.mode = mode;
  pr.n0 = n_from_mole_fractions(X0, model.molar_masses());
  return pr;
}
}  // namespace

Equilibrium solve_pt(const MixtureModel& model, double p, double T, std::span<const double> X0,
                     const SolverConfig& config) {
  if (!(p > 0.0) || !(T > 0.0)) throw std::invalid_argument("pressure and temperature must be positive");
  Problem pr = base_problem(model, Mode::pt, X0);
  pr.p = p;
  pr.T = T;
  return solve(model, pr, X0, config, T);
}

Equilibrium solve_rhoe(const MixtureModel& model, double rho, double e, std::span<const double> X0,
                       const SolverConfig& config, std::optional<double> T_guess, const WarmStart* warm) {
  if (!(rho > 0.0)) throw std::invalid_argument("density must be positive");
  if (!std::isfinite(e)) throw std::invalid_argument("internal energy must be finite");
  Problem pr = base_problem(model, Mode::rhoe, X0);
  pr.rho = rho;
  pr.e = e;
  return solve(model, pr, X0, config, T_guess.value_or(kDefaultTemperatureGuess), warm);
}

Equilibrium solve_ps(const MixtureModel& model, double p, double s, std::span<const double> X0,
                     const SolverConfig& config, std::optional<double> T_guess, const WarmStart* warm) {
  if (!(p > 0.0)) throw std::invalid_argument("pressure must be positive");
  if (!std::isfinite(s)) throw std::invalid_argument("entropy must be finite");
  Problem pr = base_problem(model, Mode::ps, X0);
  pr.p = p;
  pr.s = s;
  return solve(model, pr, X0, config, T_guess.value_or(kDefaultTemperatureGuess), warm);
}

}  // namespace chemeq
