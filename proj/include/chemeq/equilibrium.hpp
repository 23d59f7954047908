#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemeq/linalg.hpp"
#include "chemeq/mixture.hpp"

namespace chemeq {

struct SolverConfig {
  double tol = 1e-11;                  // on the n_s-weighted residual norm
  int max_iter = 200;
  double relax_fraction = 0.5;         // Λ = min(1, f |ln n| / |Δ|)
  double trace_floor_fraction = 1e-4;  // initial n_s >= n * fraction
  bool under_relax = true;             // false forces Λ = 1
  bool verbose = false;
  std::ostream* trace = nullptr;       // verbose sink, std::cerr when null

  void validate() const;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;  // Newton steps taken
  std::vector<double> residual_history;
  double final_residual = 0.0;
  std::vector<double> lambda_history;  // smallest Λ applied per step
  bool out_of_range = false;           // some species evaluated outside its fit
  std::string message;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { pt, rhoe, ps };

/// What is held fixed, plus the element budget as initial specific molarities.
struct Problem {
  Mode mode = Mode::pt;
  double T = 0.0;    // pt
  double p = 0.0;    // pt, ps
  double rho = 0.0;  // rhoe
  double e = 0.0;    // rhoe, J/kg
  double s = 0.0;    // ps, J/(kg K)
  std::vector<double> n0;
};

/// Iteration state. `lnns` is the first-class unknown; `ns` is only ever
/// written as exp(lnns).
struct SolverWorkspace {
  std::vector<double> lnns;
  std::vector<double> ns;
  double lnn = 0.0;
  double lnT = 0.0;
  std::vector<double> pi;              // one per model element row; 0 on pruned rows
  std::vector<char> active_species;    // 0 when frozen out by a pruned element
  std::vector<std::size_t> rows;       // element rows kept in the reduced system
  std::vector<double> b0;              // element totals of n0, one per model row

  [[nodiscard]] double T() const;
};

struct InitialGuess {
  std::vector<double> lnns;
  double lnn = 0.0;
};

/// ns[s] = max(X0[s] n, n * floor), n = 1/M0; the only place a log is taken.
InitialGuess initial_guess(const MixtureModel& model, std::span<const double> X0, const SolverConfig& config);

/// Sets up pruning, the element budget and the starting point for `problem`.
/// `start_X` overrides X0 as the composition guess (warm starts).
SolverWorkspace make_workspace(const MixtureModel& model, const Problem& problem, std::span<const double> X0,
                               const SolverConfig& config, double T_start,
                               std::optional<std::span<const double>> start_X = std::nullopt);

struct Residuals {
  std::vector<double> species;   // F_s, NaN-free for active species, 0 for frozen ones
  std::vector<double> elements;  // F_j for the kept rows
  double total = 0.0;            // F_n (pt, ps)
  double closure = 0.0;          // energy (rhoe) or entropy (ps) mismatch, scaled by RT or R
};

Residuals residuals(const MixtureModel& model, const Problem& problem, const SolverWorkspace& ws);

/// Fixed (T,p) residual families with λ_j = -π_j R T.
Residuals residuals_pt(const MixtureModel& model, double T, double p, std::span<const double> lnns,
                       std::span<const double> ns, double lnn, std::span<const double> pi,
                       std::span<const double> n0);

/// ε = sqrt(Σ (n_s F_s)^2 + Σ F_j^2 + F_n^2 + closure^2)
double residual_norm(const Residuals& r, std::span<const double> ns);

/// Reduced iteration matrix: unknowns are π over the kept rows, then Δln n
/// (pt, ps), then Δln T (rhoe, ps).
DenseSystem assemble_reduced_system(const MixtureModel& model, const Problem& problem, const SolverWorkspace& ws);

struct NewtonStep {
  std::vector<double> dlnns;
  double dlnn = 0.0;
  double dlnT = 0.0;
  std::vector<double> pi;  // one per model element row
};

/// Solves the reduced system and back-substitutes Δln n_s.
NewtonStep newton_step(const MixtureModel& model, const Problem& problem, const SolverWorkspace& ws);

/// min(1, fraction |ln_reference| / |delta|); 1 when delta is zero.
double relaxation_factor(double delta, double ln_reference, double fraction);

struct Relaxation {
  std::vector<double> species;  // Λ per species
  double total = 1.0;           // Λ on Δln n
  double temperature = 1.0;     // Λ on Δln T
  [[nodiscard]] double smallest() const;
};

/// Applies the damped update and refreshes ns = exp(lnns); also stores π.
Relaxation apply_relaxation(SolverWorkspace& ws, const NewtonStep& step, const Problem& problem,
                            const MixtureModel& model, const SolverConfig& config);

struct Equilibrium {
  GasState state;
  SolveReport report;
  std::vector<double> element_potentials;  // π_j per model row
  std::vector<double> lnns;
  std::vector<double> n0;
};

/// Composition guess for a warm start.
struct WarmStart {
  double T = 0.0;
  std::vector<double> X;
};

Equilibrium solve(const MixtureModel& model, const Problem& problem, std::span<const double> X0,
                  const SolverConfig& config, double T_start, const WarmStart* warm = nullptr);

Equilibrium solve_pt(const MixtureModel& model, double p, double T, std::span<const double> X0,
                     const SolverConfig& config = {});
Equilibrium solve_rhoe(const MixtureModel& model, double rho, double e, std::span<const double> X0,
                       const SolverConfig& config = {}, std::optional<double> T_guess = std::nullopt,
                       const WarmStart* warm = nullptr);
Equilibrium solve_ps(const MixtureModel& model, double p, double s, std::span<const double> X0,
                     const SolverConfig& config = {}, std::optional<double> T_guess = std::nullopt,
                     const WarmStart* warm = nullptr);

inline constexpr double kDefaultTemperatureGuess = 3000.0;

// Verification of the converged point against the Lagrangian itself.

/// Σ n_s [G°_s + RT ln(n_s/n) + RT ln(p/p°)] + Σ_j λ_j (Σ_s a_js n_s - a_js n0_s), J/kg.
double lagrangian_value(const MixtureModel& model, double T, double p, std::span<const double> ns,
                        std::span<const double> n0, std::span<const double> lambda);

struct StationarityCheck {
  std::vector<double> dL_dns;  // central differences; 0 for absent species
  double norm = 0.0;
  double lagrangian = 0.0;
};

/// Central finite differences of the Lagrangian at a converged fixed-(T,p)
/// state, λ_j = -π_j R T. The step on species s is rel_step * n_s.
StationarityCheck verify_stationarity(const MixtureModel& model, const Equilibrium& eq, double rel_step = 1e-6);

}  // namespace chemeq
