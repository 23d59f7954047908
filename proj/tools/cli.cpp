#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "chemeq/constants.hpp"
#include "chemeq/equilibrium.hpp"
#include "chemeq/oracles.hpp"
#include "chemeq/shock.hpp"
#include "chemeq/thermo.hpp"

namespace chemeq::cli {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string exact(double v) { return fmt("%.17g", v); }

std::string join_exact(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + exact(v[i]);
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string canonical_list(const std::string& s) {
  std::string out;
  for (const auto& item : split_list(s)) out += (out.empty() ? "" : ",") + item;
  return out;
}

std::vector<double> parse_numbers(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw std::invalid_argument(std::string("bad number '") + item + "' in " + what);
    out.push_back(v);
  }
  return out;
}

struct Options {
  std::string db;
  std::string species;
  std::string X;
  std::string Y;
  double tol = 1e-11;
  int max_iter = 200;
  double relax = 0.5;
  bool verbose = false;
  std::string format = "text";

  // Mode inputs; which ones apply depends on the subcommand.
  double p = 0, T = 0, rho = 0, e = 0, s = 0, v = 0;
  double p1 = 0, T1 = 0, v1 = 0, vs = 0;
  double p0 = 0, T0 = 0;
  double area_ratio = 0, throat_radius = 0, exit_radius = 0, displacement = 0;
  std::optional<double> T_guess;
};

void add_common(CLI::App* sub, Options& o, bool with_species = true) {
  sub->add_option("--db", o.db, "thermo.inp path (default: $CHEMEQ_THERMO, then the bundled file)");
  if (with_species) {
    sub->add_option("--species", o.species, "comma-separated species names")->required();
    auto* x = sub->add_option("--X", o.X, "mole fractions (normalized)");
    auto* y = sub->add_option("--Y", o.Y, "mass fractions (normalized)");
    x->excludes(y);
  }
  sub->add_option("--tol", o.tol, "residual tolerance");
  sub->add_option("--max-iter", o.max_iter, "Newton iteration limit");
  sub->add_option("--relax", o.relax, "relaxation fraction");
  sub->add_flag("--verbose", o.verbose, "iteration trace on stderr");
  sub->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
}

// Canonical argument echo: re-running it reproduces the same inputs exactly.
struct Echo {
  std::string words;
  void add(const std::string& flag, const std::string& value) { words += " " + flag + " " + value; }
  void add(const std::string& flag, double value) { add(flag, exact(value)); }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  Options& o;
  std::string mode;
  Echo echo;
  bool structured = false;
  SolverConfig config;

  void kv(const std::string& key, const std::string& value) { out << key << " = " << value << '\n'; }
  void kv(const std::string& key, double value) { kv(key, exact(value)); }
};

ThermoDatabase load_database(const Options& o) {
  const auto path = resolve_database_path(o.db.empty() ? std::nullopt : std::optional<std::filesystem::path>(o.db));
  try {
    return ThermoDatabase::from_file(path);
  } catch (const ThermoParseError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string(e.what()) + " (search order: --db, $CHEMEQ_THERMO, bundled " +
                             CHEMEQ_DEFAULT_THERMO + ")");
  }
}

struct Setup {
  ThermoDatabase db;
  MixtureModel model;
  std::vector<double> X;
};

Setup setup_mixture(Context& c, std::vector<std::string> names, std::optional<std::vector<double>> fixed_X = {}) {
  auto db = load_database(c.o);
  MixtureModel model(db.select(names));
  std::vector<double> X;
  if (fixed_X) {
    X = *fixed_X;
  } else if (!c.o.X.empty()) {
    const auto raw = parse_numbers(c.o.X, "--X");
    if (raw.size() != names.size()) throw std::invalid_argument("--X needs one value per species");
    c.echo.add("--X", join_exact(raw));
    X = normalized(raw);
  } else if (!c.o.Y.empty()) {
    const auto raw = parse_numbers(c.o.Y, "--Y");
    if (raw.size() != names.size()) throw std::invalid_argument("--Y needs one value per species");
    c.echo.add("--Y", join_exact(raw));
    X = mole_fractions_from_n(n_from_mass_fractions(raw, model.molar_masses()));
  } else {
    throw std::invalid_argument("composition required: give --X or --Y");
  }
  return {std::move(db), std::move(model), std::move(X)};
}

void prepare(Context& c) {
  c.structured = c.o.format == "structured";
  c.config.tol = c.o.tol;
  c.config.max_iter = c.o.max_iter;
  c.config.relax_fraction = c.o.relax;
  c.config.verbose = c.o.verbose;
  c.config.trace = &c.err;
  c.config.validate();
  if (!c.o.db.empty()) c.echo.add("--db", c.o.db);
  c.echo.add("--tol", c.o.tol);
  c.echo.add("--max-iter", std::to_string(c.o.max_iter));
  c.echo.add("--relax", c.o.relax);
}

void begin(Context& c) {
  if (!c.structured) return;
  c.out << "# chemical equilibrium result\n";
  c.kv("schema_version", std::to_string(kSchemaVersion));
  c.kv("mode", c.mode);
  c.kv("command", c.mode + c.echo.words);
}

void emit_state(Context& c, const MixtureModel& model, const GasState& st, const std::string& prefix,
                std::optional<double> velocity = {}) {
  const auto props = mixture_props(model, st);
  const auto X = st.mole_fractions();
  const auto Y = mass_fractions_from_n(st.ns, model.molar_masses());
  if (c.structured) {
    const std::string p = prefix.empty() ? "" : prefix + ".";
    c.kv(p + "T", st.T);
    c.kv(p + "p", st.p);
    c.kv(p + "rho", st.rho);
    c.kv(p + "e", props.e);
    c.kv(p + "h", props.h);
    c.kv(p + "s", props.s);
    c.kv(p + "cp", props.cp);
    c.kv(p + "M_mix", props.M_mix);
    if (velocity) c.kv(p + "v", *velocity);
    for (std::size_t i = 0; i < model.num_species(); ++i) {
      const auto& name = model.species(i).name;
      c.kv(p + "X." + name, X[i]);
      c.kv(p + "Y." + name, Y[i]);
      c.kv(p + "ns." + name, st.ns[i]);
    }
    return;
  }
  auto& o = c.out;
  if (!prefix.empty()) o << prefix << ":\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "  %-10s %14s %14s %14s\n", "species", "X", "Y", "n_s (mol/kg)");
  o << buf;
  for (std::size_t i = 0; i < model.num_species(); ++i) {
    std::snprintf(buf, sizeof buf, "  %-10s %14.6e %14.6e %14.6e\n", model.species(i).name.c_str(), X[i], Y[i],
                  st.ns[i]);
    o << buf;
  }
  std::snprintf(buf, sizeof buf, "  T = %.4f K  p = %.6g Pa  rho = %.6g kg/m^3\n", st.T, st.p, st.rho);
  o << buf;
  std::snprintf(buf, sizeof buf, "  e = %.6g J/kg  h = %.6g J/kg  s = %.6g J/(kg K)  M_mix = %.6g kg/mol\n", props.e,
                props.h, props.s, props.M_mix);
  o << buf;
  if (velocity) {
    std::snprintf(buf, sizeof buf, "  v = %.6g m/s\n", *velocity);
    o << buf;
  }
}

void emit_report(Context& c, const SolveReport& r, const std::string& prefix = "solver") {
  if (c.structured) {
    c.kv(prefix + ".converged", r.converged ? "true" : "false");
    c.kv(prefix + ".iterations", std::to_string(r.iterations));
    c.kv(prefix + ".final_residual", r.final_residual);
    c.kv(prefix + ".out_of_range", r.out_of_range ? "true" : "false");
    if (!r.message.empty()) c.kv(prefix + ".message", r.message);
    return;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %s after %d iterations, residual %.3e%s\n", prefix.c_str(),
                r.converged ? "converged" : "NOT converged", r.iterations, r.final_residual,
                r.out_of_range ? " (thermo fit range exceeded)" : "");
  c.out << buf;
  if (!r.message.empty()) c.out << "  " << r.message << '\n';
}

int finish_equilibrium(Context& c, const Setup& s, const Equilibrium& eq) {
  begin(c);
  emit_state(c, s.model, eq.state, c.structured ? "state" : "");
  emit_report(c, eq.report);
  return eq.report.converged ? kExitConverged : kExitNotConverged;
}

int cmd_pt(Context& c) {
  c.echo.add("--species", canonical_list(c.o.species));
  auto s = setup_mixture(c, split_list(c.o.species));
  c.echo.add("--p", c.o.p);
  c.echo.add("--T", c.o.T);
  return finish_equilibrium(c, s, solve_pt(s.model, c.o.p, c.o.T, s.X, c.config));
}

int cmd_rhoe(Context& c) {
  c.echo.add("--species", canonical_list(c.o.species));
  auto s = setup_mixture(c, split_list(c.o.species));
  c.echo.add("--rho", c.o.rho);
  c.echo.add("--e", c.o.e);
  if (c.o.T_guess) c.echo.add("--T-guess", *c.o.T_guess);
  return finish_equilibrium(c, s, solve_rhoe(s.model, c.o.rho, c.o.e, s.X, c.config, c.o.T_guess));
}

int cmd_ps(Context& c) {
  c.echo.add("--species", canonical_list(c.o.species));
  auto s = setup_mixture(c, split_list(c.o.species));
  c.echo.add("--p", c.o.p);
  c.echo.add("--s", c.o.s);
  if (c.o.T_guess) c.echo.add("--T-guess", *c.o.T_guess);
  return finish_equilibrium(c, s, solve_ps(s.model, c.o.p, c.o.s, s.X, c.config, c.o.T_guess));
}

void emit_shock_table(Context& c, const MixtureModel& model, const ShockSolution& sh, const std::string& title) {
  const auto X1 = sh.pre.mole_fractions();
  const auto X2 = sh.post.mole_fractions();
  char buf[160];
  c.out << "Preshock Gas State (";
  bool first = true;
  for (std::size_t i = 0; i < model.num_species(); ++i) {
    if (X1[i] <= 0.0) continue;
    std::snprintf(buf, sizeof buf, "%s%.4g%% %s", first ? "" : ", ", 100.0 * X1[i], model.species(i).name.c_str());
    c.out << buf;
    first = false;
  }
  c.out << ")\n";
  std::snprintf(buf, sizeof buf, " p=%.6g Pa  T=%.6g K  v= %.6g m/s\n\n", sh.pre.p, sh.pre.T, sh.v1);
  c.out << buf << title << ":\n";
  c.out << "-------------------------\n";
  std::snprintf(buf, sizeof buf, " v (m/s)|  %.1f\n T (K)  |  %.1f\n p (Pa) |  %.1f\n", sh.v2, sh.post.T, sh.post.p);
  c.out << buf;
  std::vector<std::size_t> order(model.num_species());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return X2[a] > X2[b]; });
  for (auto i : order) {
    std::snprintf(buf, sizeof buf, " X %-5s|  %.3e\n", model.species(i).name.c_str(), X2[i]);
    c.out << buf;
  }
  std::snprintf(buf, sizeof buf, "(%d inner solves, %d Newton iterations)\n", sh.inner_solves, sh.inner_iterations);
  c.out << buf;
}

void emit_shock_kv(Context& c, const MixtureModel& model, const ShockSolution& sh, const std::string& prefix) {
  emit_state(c, model, sh.pre, prefix + ".pre", sh.v1);
  emit_state(c, model, sh.post, prefix + ".post", sh.v2);
  c.kv(prefix + ".wave_speed", sh.wave_speed);
  c.kv(prefix + ".inner_solves", std::to_string(sh.inner_solves));
  c.kv(prefix + ".inner_iterations", std::to_string(sh.inner_iterations));
}

int cmd_shock(Context& c) {
  c.echo.add("--species", canonical_list(c.o.species));
  auto s = setup_mixture(c, split_list(c.o.species));
  c.echo.add("--p1", c.o.p1);
  c.echo.add("--T1", c.o.T1);
  c.echo.add("--v1", c.o.v1);
  const auto sh = normal_shock(s.model, c.o.p1, c.o.T1, c.o.v1, s.X, c.config);
  begin(c);
  if (c.structured) {
    emit_shock_kv(c, s.model, sh, "shock");
  } else {
    emit_shock_table(c, s.model, sh, "Postshock Gas State");
  }
  return kExitConverged;
}

int cmd_reflect(Context& c) {
  c.echo.add("--species", canonical_list(c.o.species));
  auto s = setup_mixture(c, split_list(c.o.species));
  c.echo.add("--p1", c.o.p1);
  c.echo.add("--T1", c.o.T1);
  c.echo.add("--vs", c.o.vs);
  const auto inc = normal_shock(s.model, c.o.p1, c.o.T1, c.o.vs, s.X, c.config);
  const double u2 = c.o.vs - inc.v2;
  const auto ref = reflected_shock(s.model, inc.post, u2, c.config);
  begin(c);
  if (c.structured) {
    emit_shock_kv(c, s.model, inc, "incident");
    c.kv("incident.lab_velocity", u2);
    emit_shock_kv(c, s.model, ref, "reflected");
  } else {
    emit_shock_table(c, s.model, inc, "Incident Shock, Postshock Gas State");
    char buf[96];
    std::snprintf(buf, sizeof buf, "\nLab-frame gas velocity behind the incident shock: %.2f m/s\n", u2);
    c.out << buf;
    std::snprintf(buf, sizeof buf, "Reflected shock speed (lab frame): %.2f m/s\n\n", ref.wave_speed);
    c.out << buf;
    emit_state(c, s.model, ref.post, "Reflected Shock Gas State (at rest)");
  }
  return kExitConverged;
}

int cmd_nozzle(Context& c) {
  c.echo.add("--species", canonical_list(c.o.species));
  auto s = setup_mixture(c, split_list(c.o.species));
  c.echo.add("--p0", c.o.p0);
  c.echo.add("--T0", c.o.T0);
  double ar = c.o.area_ratio;
  if (ar > 0.0) {
    c.echo.add("--area-ratio", ar);
  } else if (c.o.throat_radius > 0.0 && c.o.exit_radius > 0.0) {
    c.echo.add("--throat-radius", c.o.throat_radius);
    c.echo.add("--exit-radius", c.o.exit_radius);
    c.echo.add("--displacement", c.o.displacement);
    ar = effective_area_ratio(c.o.throat_radius, c.o.exit_radius, c.o.displacement);
  } else {
    throw std::invalid_argument("give --area-ratio or --throat-radius with --exit-radius");
  }
  const auto stag = solve_pt(s.model, c.o.p0, c.o.T0, s.X, c.config);
  if (!stag.report.converged) {
    begin(c);
    emit_report(c, stag.report);
    return kExitNotConverged;
  }
  const auto nz = nozzle_expansion(s.model, stag.state, ar, c.config);
  begin(c);
  if (c.structured) c.kv("area_ratio", ar);
  if (!c.structured) c.out << "Area ratio: " << fmt("%.6g", ar) << "\n";
  emit_state(c, s.model, stag.state, "stagnation", 0.0);
  emit_state(c, s.model, nz.throat, "throat", nz.v_throat);
  emit_state(c, s.model, nz.exit, "exit", nz.v_exit);
  if (c.structured) c.kv("mass_flux_throat", nz.mass_flux_throat);
  return kExitConverged;
}

int cmd_pitot(Context& c) {
  c.echo.add("--species", canonical_list(c.o.species));
  auto s = setup_mixture(c, split_list(c.o.species));
  c.echo.add("--p", c.o.p);
  c.echo.add("--T", c.o.T);
  c.echo.add("--v", c.o.v);
  const auto fs = make_state_tp(c.o.T, c.o.p, n_from_mole_fractions(s.X, s.model.molar_masses()));
  const auto pt = pitot_pressure(s.model, fs, c.o.v, c.config);
  begin(c);
  if (c.structured) {
    c.kv("pitot_pressure", pt.pressure);
    emit_shock_kv(c, s.model, pt.shock, "shock");
    emit_state(c, s.model, pt.stagnation, "stagnation", 0.0);
  } else {
    c.out << "Pitot pressure: " << fmt("%.6g", pt.pressure) << " Pa\n";
    emit_state(c, s.model, pt.stagnation, "Stagnation state behind the shock");
  }
  return kExitConverged;
}

int cmd_co2(Context& c) {
  c.echo.add("--T", c.o.T);
  c.echo.add("--p", c.o.p);
  const std::vector<std::string> names{"CO2", "CO", "O2"};
  auto s = setup_mixture(c, names, std::vector<double>{1.0, 0.0, 0.0});
  const double T = c.o.T;
  const auto g = [&](std::size_t i) { return g0(s.model.species(i), T).value; };
  const double Kp = oracles::co2_kp(T, g(0), g(1), g(2));
  const double alpha = oracles::co2_alpha(Kp, c.o.p);
  const auto Xo = oracles::co2_mole_fractions(alpha);
  const auto eq = solve_pt(s.model, c.o.p, T, s.X, c.config);
  const auto Xs = eq.state.mole_fractions();
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(Xs[i] - Xo[i]));

  begin(c);
  if (c.structured) {
    c.kv("Kp", Kp);
    c.kv("alpha", alpha);
    for (std::size_t i = 0; i < 3; ++i) {
      c.kv("oracle.X." + names[i], Xo[i]);
      c.kv("solver.X." + names[i], Xs[i]);
    }
    c.kv("max_abs_dX", worst);
    emit_report(c, eq.report);
  } else {
    char buf[160];
    std::snprintf(buf, sizeof buf, "T = %.6g K  p = %.6g Pa  Kp = %.6e  alpha = %.9f\n", T, c.o.p, Kp, alpha);
    c.out << buf;
    std::snprintf(buf, sizeof buf, "  %-6s %16s %16s %12s\n", "", "oracle", "solver", "|dX|");
    c.out << buf;
    for (std::size_t i = 0; i < 3; ++i) {
      std::snprintf(buf, sizeof buf, "  %-6s %16.10e %16.10e %12.3e\n", names[i].c_str(), Xo[i], Xs[i],
                    std::abs(Xs[i] - Xo[i]));
      c.out << buf;
    }
    std::snprintf(buf, sizeof buf, "max |dX| = %.3e\n", worst);
    c.out << buf;
    emit_report(c, eq.report);
  }
  return eq.report.converged ? kExitConverged : kExitNotConverged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chemical equilibrium solver: fixed (T,p), (rho,e) and (p,s) states, shocks and nozzles", "chemeq"};
  app.require_subcommand(1);
  Options o;

  auto* pt = app.add_subcommand("pt", "equilibrium at fixed temperature and pressure");
  add_common(pt, o);
  pt->add_option("--p", o.p, "pressure, Pa")->required();
  pt->add_option("--T", o.T, "temperature, K")->required();

  auto* rhoe = app.add_subcommand("rhoe", "equilibrium at fixed density and internal energy");
  add_common(rhoe, o);
  rhoe->add_option("--rho", o.rho, "density, kg/m^3")->required();
  rhoe->add_option("--e", o.e, "internal energy, J/kg")->required();
  rhoe->add_option("--T-guess", o.T_guess, "starting temperature, K");

  auto* ps = app.add_subcommand("ps", "equilibrium at fixed pressure and entropy");
  add_common(ps, o);
  ps->add_option("--p", o.p, "pressure, Pa")->required();
  ps->add_option("--s", o.s, "entropy, J/(kg K)")->required();
  ps->add_option("--T-guess", o.T_guess, "starting temperature, K");

  auto* shock = app.add_subcommand("shock", "equilibrium normal shock");
  add_common(shock, o);
  shock->add_option("--p1", o.p1, "preshock pressure, Pa")->required();
  shock->add_option("--T1", o.T1, "preshock temperature, K")->required();
  shock->add_option("--v1", o.v1, "shock speed relative to the preshock gas, m/s")->required();

  auto* reflect = app.add_subcommand("reflect", "incident and reflected shock in a shock tube");
  add_common(reflect, o);
  reflect->add_option("--p1", o.p1, "fill pressure, Pa")->required();
  reflect->add_option("--T1", o.T1, "fill temperature, K")->required();
  reflect->add_option("--vs", o.vs, "incident shock speed, m/s")->required();

  auto* nozzle = app.add_subcommand("nozzle", "isentropic nozzle expansion from a stagnation state");
  add_common(nozzle, o);
  nozzle->add_option("--p0", o.p0, "stagnation pressure, Pa")->required();
  nozzle->add_option("--T0", o.T0, "stagnation temperature, K")->required();
  nozzle->add_option("--area-ratio", o.area_ratio, "exit/throat area ratio");
  nozzle->add_option("--throat-radius", o.throat_radius, "m");
  nozzle->add_option("--exit-radius", o.exit_radius, "m");
  nozzle->add_option("--displacement", o.displacement, "boundary layer displacement thickness at the exit, m");

  auto* pitot = app.add_subcommand("pitot", "pitot pressure of a supersonic stream");
  add_common(pitot, o);
  pitot->add_option("--p", o.p, "static pressure, Pa")->required();
  pitot->add_option("--T", o.T, "static temperature, K")->required();
  pitot->add_option("--v", o.v, "velocity, m/s")->required();

  auto* co2 = app.add_subcommand("co2-verify", "CO2 dissociation: solver against the analytic single-reaction oracle");
  add_common(co2, o, false);
  co2->add_option("--T", o.T, "temperature, K")->required();
  co2->add_option("--p", o.p, "pressure, Pa")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Context c{out, err, o, sub->get_name(), {}, false, {}};
  try {
    prepare(c);
    if (sub == pt) return cmd_pt(c);
    if (sub == rhoe) return cmd_rhoe(c);
    if (sub == ps) return cmd_ps(c);
    if (sub == shock) return cmd_shock(c);
    if (sub == reflect) return cmd_reflect(c);
    if (sub == nozzle) return cmd_nozzle(c);
    if (sub == pitot) return cmd_pitot(c);
    return cmd_co2(c);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const ShockError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const ThermoParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

std::vector<std::pair<std::string, std::string>> parse_structured(const std::string& document) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(document);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out.emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return out;
}

}  // namespace chemeq::cli
