#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chemeq/thermo.hpp"

namespace chemeq {

/// Name of the pseudo-element row that carries species charge.
inline constexpr std::string_view kChargeElement = "charge";

/// An ordered species set with its element-by-species constraint matrix.
///
/// Rows are elements in order of first appearance, followed by the charge
/// row when any species is charged. Entry (j, s) is the number of atoms of
/// element j in species s; the charge row holds the signed species charge.
class MixtureModel {
 public:
  explicit MixtureModel(std::vector<SpeciesRecord> species);

  [[nodiscard]] std::size_t num_species() const { return species_.size(); }
  [[nodiscard]] std::size_t num_elements() const { return element_names_.size(); }
  [[nodiscard]] const std::vector<SpeciesRecord>& species() const { return species_; }
  [[nodiscard]] const SpeciesRecord& species(std::size_t s) const { return species_[s]; }
  [[nodiscard]] const std::vector<std::string>& element_names() const { return element_names_; }
  [[nodiscard]] double a(std::size_t element, std::size_t species) const {
    return matrix_[element * species_.size() + species];
  }
  [[nodiscard]] bool is_charge_row(std::size_t element) const {
    return element_names_[element] == kChargeElement;
  }
  [[nodiscard]] std::size_t index_of(std::string_view name) const;
  [[nodiscard]] std::span<const double> molar_masses() const { return molar_masses_; }

  /// Temperature interval covered by at least one species fit.
  [[nodiscard]] double t_min() const { return t_min_; }
  [[nodiscard]] double t_max() const { return t_max_; }

  /// Element totals A·ns, one per row.
  [[nodiscard]] std::vector<double> element_totals(std::span<const double> ns) const;

 private:
  std::vector<SpeciesRecord> species_;
  std::vector<std::string> element_names_;
  std::vector<double> matrix_;
  std::vector<double> molar_masses_;
  double t_min_ = 0.0;
  double t_max_ = 0.0;
};

/// Thermodynamic state with composition held as specific molarities
/// (mol of species per kg of mixture).
struct GasState {
  double T = 0.0;    // K
  double p = 0.0;    // Pa
  double rho = 0.0;  // kg/m^3
  std::vector<double> ns;
  double n = 0.0;    // sum of ns = 1 / M_mix

  [[nodiscard]] std::vector<double> mole_fractions() const;
};

/// Builds a state from (T, p, ns), filling n and rho from the ideal-gas law.
GasState make_state_tp(double T, double p, std::vector<double> ns);
/// Builds a state from (T, rho, ns), filling n and p from the ideal-gas law.
GasState make_state_trho(double T, double rho, std::vector<double> ns);

std::vector<double> mole_fractions_from_n(std::span<const double> ns);
std::vector<double> mass_fractions_from_n(std::span<const double> ns, std::span<const double> molar_masses);
std::vector<double> n_from_mole_fractions(std::span<const double> X, std::span<const double> molar_masses);
std::vector<double> n_from_mass_fractions(std::span<const double> Y, std::span<const double> molar_masses);
std::vector<double> normalized(std::span<const double> values);

struct MixtureProperties {
  double e = 0.0;      // J/kg
  double h = 0.0;      // J/kg
  double s = 0.0;      // J/(kg K)
  double cp = 0.0;     // J/(kg K), frozen
  double cv = 0.0;     // J/(kg K), frozen
  double M_mix = 0.0;  // kg/mol
  bool out_of_range = false;
};

MixtureProperties mixture_props(const MixtureModel& model, const GasState& state);

/// sqrt(gamma R T) with frozen composition.
double frozen_sound_speed(const MixtureModel& model, const GasState& state);

}  // namespace chemeq
