#include "chemeq/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chemeq/constants.hpp"

namespace chemeq {

MixtureModel::MixtureModel(std::vector<SpeciesRecord> species) : species_(std::move(species)) {
  if (species_.empty()) throw std::invalid_argument("mixture needs at least one species");

  bool charged = false;
  for (const auto& sp : species_) {
    if (sp.segments.empty()) throw std::invalid_argument("species '" + sp.name + "' has no thermo data");
    for (const auto& [el, count] : sp.elements) {
      if (count != 0.0 && std::find(element_names_.begin(), element_names_.end(), el) == element_names_.end()) {
        element_names_.push_back(el);
      }
    }
    charged = charged || sp.charge != 0;
  }
  if (charged) element_names_.emplace_back(kChargeElement);

  const std::size_t ns = species_.size();
  matrix_.assign(element_names_.size() * ns, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    const auto& sp = species_[s];
    for (std::size_t j = 0; j < element_names_.size(); ++j) {
      if (is_charge_row(j)) {
        matrix_[j * ns + s] = sp.charge;
      } else if (auto it = sp.elements.find(element_names_[j]); it != sp.elements.end()) {
        matrix_[j * ns + s] = it->second;
      }
    }
    bool any = false;
    for (std::size_t j = 0; j < element_names_.size(); ++j) any = any || matrix_[j * ns + s] != 0.0;
    if (!any) throw std::invalid_argument("species '" + sp.name + "' contains no tracked element or charge");
    for (std::size_t t = 0; t < s; ++t) {
      if (species_[t].name == sp.name) throw std::invalid_argument("species '" + sp.name + "' listed twice");
    }
    molar_masses_.push_back(sp.molar_mass);
  }

  t_min_ = species_.front().t_min();
  t_max_ = species_.front().t_max();
  for (const auto& sp : species_) {
    t_min_ = std::min(t_min_, sp.t_min());
    t_max_ = std::max(t_max_, sp.t_max());
  }
}

std::size_t MixtureModel::index_of(std::string_view name) const {
  for (std::size_t s = 0; s < species_.size(); ++s) {
    if (species_[s].name == name) return s;
  }
  throw std::out_of_range("species '" + std::string(name) + "' is not in the mixture");
}

std::vector<double> MixtureModel::element_totals(std::span<const double> ns) const {
  std::vector<double> b(num_elements(), 0.0);
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t s = 0; s < species_.size(); ++s) b[j] += a(j, s) * ns[s];
  }
  return b;
}

std::vector<double> GasState::mole_fractions() const { return mole_fractions_from_n(ns); }

GasState make_state_tp(double T, double p, std::vector<double> ns) {
  GasState st;
  st.T = T;
  st.p = p;
  st.n = std::accumulate(ns.begin(), ns.end(), 0.0);
  st.ns = std::move(ns);
  st.rho = p / (st.n * kGasConstant * T);
  return st;
}

GasState make_state_trho(double T, double rho, std::vector<double> ns) {
  GasState st;
  st.T = T;
  st.rho = rho;
  st.n = std::accumulate(ns.begin(), ns.end(), 0.0);
  st.ns = std::move(ns);
  st.p = rho * st.n * kGasConstant * T;
  return st;
}

namespace {
void require_nonnegative(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0)) throw std::invalid_argument(std::string(what) + " must be non-negative");
  }
}
}  // namespace

std::vector<double> normalized(std::span<const double> values) {
  require_nonnegative(values, "composition values");
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("composition values sum to zero");
  std::vector<double> out(values.begin(), values.end());
  for (double& x : out) x /= total;
  return out;
}

std::vector<double> mole_fractions_from_n(std::span<const double> ns) { return normalized(ns); }

std::vector<double> mass_fractions_from_n(std::span<const double> ns, std::span<const double> molar_masses) {
  require_nonnegative(ns, "specific molarities");
  std::vector<double> Y(ns.size());
  for (std::size_t s = 0; s < ns.size(); ++s) Y[s] = molar_masses[s] * ns[s];
  return Y;
}

std::vector<double> n_from_mole_fractions(std::span<const double> X, std::span<const double> molar_masses) {
  const auto Xn = normalized(X);
  double M = 0.0;
  for (std::size_t s = 0; s < Xn.size(); ++s) M += Xn[s] * molar_masses[s];
  std::vector<double> ns(Xn.size());
  for (std::size_t s = 0; s < Xn.size(); ++s) ns[s] = Xn[s] / M;
  return ns;
}

std::vector<double> n_from_mass_fractions(std::span<const double> Y, std::span<const double> molar_masses) {
  const auto Yn = normalized(Y);
  std::vector<double> ns(Yn.size());
  for (std::size_t s = 0; s < Yn.size(); ++s) ns[s] = Yn[s] / molar_masses[s];
  return ns;
}

MixtureProperties mixture_props(const MixtureModel& model, const GasState& state) {
  MixtureProperties out;
  const double R = kGasConstant;
  const double T = state.T;
  const double ln_p = std::log(state.p / kStandardPressure);
  const double ln_n = std::log(state.n);
  for (std::size_t s = 0; s < model.num_species(); ++s) {
    const double ns = state.ns[s];
    const auto t = evaluate(model.species(s), T);
    out.out_of_range = out.out_of_range || t.out_of_range;
    if (ns <= 0.0) continue;
    out.h += ns * t.h;
    out.e += ns * (t.h - R * T);
    out.cp += ns * t.cp;
    out.s += ns * (t.s - R * (std::log(ns) - ln_n) - R * ln_p);
  }
  out.cv = out.cp - state.n * R;
  out.M_mix = 1.0 / state.n;
  return out;
}

double frozen_sound_speed(const MixtureModel& model, const GasState& state) {
  const auto props = mixture_props(model, state);
  const double gamma = props.cp / props.cv;
  return std::sqrt(gamma * state.n * kGasConstant * state.T);
}

}  // namespace chemeq
