#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "chemeq/equilibrium.hpp"
#include "chemeq/mixture.hpp"

namespace chemeq {

class ShockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Both sides of a stationary shock. v1/v2 are in the shock frame.
struct ShockSolution {
  GasState pre;
  double v1 = 0.0;
  GasState post;
  double v2 = 0.0;
  double wave_speed = 0.0;  // lab frame; equals v1 for an incident shock into still gas
  SolveReport report;       // last inner (rho, e) solve
  int inner_solves = 0;
  int inner_iterations = 0;
};

/// Equilibrium normal shock into a frozen preshock gas at (p1, T1, X0).
/// v2 is the root of (p2 - p_eos)/p2 with p2 from the momentum balance
/// and p_eos from the ideal-gas law at the inner equilibrium state.
ShockSolution normal_shock(const MixtureModel& model, double p1, double T1, double v1, std::span<const double> X0,
                           const SolverConfig& config = {});

/// Shock reflected off a closed end. `incoming` moves toward the wall at
/// `v_lab`; the processed gas ends at rest. In the result, v1 = v_lab + v_r,
/// v2 = v_r and wave_speed = v_r.
ShockSolution reflected_shock(const MixtureModel& model, const GasState& incoming, double v_lab,
                              const SolverConfig& config = {});

struct NozzleSolution {
  GasState throat;
  double v_throat = 0.0;
  GasState exit;
  double v_exit = 0.0;
  double mass_flux_throat = 0.0;  // kg/(m^2 s)
  double area_ratio = 1.0;
  double stagnation_h = 0.0;
  double stagnation_s = 0.0;
};

/// Steady isentropic expansion from a stagnation state, equilibrium chemistry
/// along the way. The exit is on the supersonic branch.
NozzleSolution nozzle_expansion(const MixtureModel& model, const GasState& stagnation, double area_ratio,
                                const SolverConfig& config = {});

/// Exit-to-throat area ratio with the exit radius reduced by a boundary
/// layer displacement thickness.
double effective_area_ratio(double throat_radius, double exit_radius, double displacement_thickness = 0.0);

struct PitotSolution {
  ShockSolution shock;
  GasState stagnation;
  double pressure = 0.0;
};

/// Normal shock followed by isentropic compression to rest.
PitotSolution pitot_pressure(const MixtureModel& model, const GasState& freestream, double velocity,
                             const SolverConfig& config = {});

struct RstConditions {
  double p1 = 0.0;  // shock tube fill
  double T1 = 0.0;
  std::vector<double> X1;
  double shock_speed = 0.0;
  std::optional<double> supply_pressure;  // measured nozzle supply pressure, if any
  double area_ratio = 1.0;
};

struct RstSolution {
  GasState state1;
  ShockSolution incident;
  ShockSolution reflected;
  GasState stagnation;  // state 5, or state 5 relaxed to the supply pressure
  NozzleSolution nozzle;
  PitotSolution pitot;
  double pitot_to_stagnation_ratio = 0.0;
};

/// Incident shock, reflection, optional isentropic relaxation to the supply
/// pressure, nozzle expansion and pitot pressure.
RstSolution reflected_shock_tunnel(const MixtureModel& model, const RstConditions& conditions,
                                   const SolverConfig& config = {});

}  // namespace chemeq
