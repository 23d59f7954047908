#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chemeq {

/// One temperature interval of a NASA 9-coefficient fit.
///
/// Cp/R  = a1 T^-2 + a2 T^-1 + a3 + a4 T + a5 T^2 + a6 T^3 + a7 T^4
/// H/RT  = -a1 T^-2 + a2 ln(T)/T + a3 + a4 T/2 + a5 T^2/3 + a6 T^3/4 + a7 T^4/5 + b1/T
/// S/R   = -a1 T^-2/2 - a2/T + a3 ln(T) + a4 T + a5 T^2/2 + a6 T^3/3 + a7 T^4/4 + b2
struct ThermoSegment {
  double t_low = 0.0;
  double t_high = 0.0;
  std::array<double, 7> a{};
  std::array<double, 2> b{};
};

struct SpeciesRecord {
  std::string name;
  double molar_mass = 0.0;               // kg/mol
  std::map<std::string, double> elements;  // nuclei only, electrons live in `charge`
  int charge = 0;
  std::vector<ThermoSegment> segments;    // ascending, contiguous

  [[nodiscard]] double t_min() const { return segments.front().t_low; }
  [[nodiscard]] double t_max() const { return segments.back().t_high; }
};

class ThermoParseError : public std::runtime_error {
 public:
  ThermoParseError(std::string species, std::size_t line, const std::string& what);

  [[nodiscard]] const std::string& species() const noexcept { return species_; }
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::string species_;
  std::size_t line_;
};

/// Reads a NASA Glenn `thermo.inp` file (gas-phase records only; condensed
/// records are skipped). Throws ThermoParseError on malformed or duplicate records.
std::vector<SpeciesRecord> parse_thermo_db(std::istream& source);

/// Result of a property evaluation. `out_of_range` is set when T lies outside
/// the fitted range and the polynomial was evaluated at the nearest bound.
struct ThermoValue {
  double value = 0.0;
  bool out_of_range = false;
};

/// All standard-state molar properties of one species at one temperature.
struct SpeciesThermo {
  double cp = 0.0;  // J/(mol K)
  double h = 0.0;   // J/mol
  double s = 0.0;   // J/(mol K), at the standard pressure
  double g = 0.0;   // J/mol, h - T s
  bool out_of_range = false;
};

SpeciesThermo evaluate(const SpeciesRecord& species, double T);

ThermoValue cp0(const SpeciesRecord& species, double T);
ThermoValue h0(const SpeciesRecord& species, double T);
ThermoValue s0(const SpeciesRecord& species, double T);
ThermoValue g0(const SpeciesRecord& species, double T);

/// Molar entropy at partial state: S = S°(T) - R ln(X) - R ln(p/p°).
double species_entropy(const SpeciesRecord& species, double T, double p, double mole_fraction);

/// Name-indexed, immutable collection of species records.
class ThermoDatabase {
 public:
  ThermoDatabase() = default;
  explicit ThermoDatabase(std::vector<SpeciesRecord> records);

  static ThermoDatabase from_stream(std::istream& source);
  static ThermoDatabase from_file(const std::filesystem::path& path);

  [[nodiscard]] const SpeciesRecord* find(std::string_view name) const;
  [[nodiscard]] const SpeciesRecord& at(std::string_view name) const;
  [[nodiscard]] std::vector<SpeciesRecord> select(std::span<const std::string> names) const;
  [[nodiscard]] std::vector<std::string> names() const;
  [[nodiscard]] std::size_t size() const { return records_.size(); }

 private:
  std::vector<SpeciesRecord> records_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Path resolution: explicit path, then the CHEMEQ_THERMO environment
/// variable, then the bundled database.
std::filesystem::path resolve_database_path(const std::optional<std::filesystem::path>& explicit_path);

}  // namespace chemeq
