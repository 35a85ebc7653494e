#pragma once

#include <cmath>
#include <optional>

#include "trimer/errors.hpp"
#include "trimer/model.hpp"
#include "trimer/thermo.hpp"

namespace trimer {

// CODATA 2018 derived conversions.
namespace constants {
// hc/k_B: kelvin per wavenumber (second radiation constant c2, in cm K).
inline constexpr double kelvin_per_wavenumber = 1.438776877;
// mu_B/(hc): wavenumber per tesla for one Bohr magneton.
inline constexpr double wavenumber_per_tesla = 0.46686447783;
}  // namespace constants

struct PhysicalParams {
  double J_cm = 0.0;     // exchange, cm^-1
  double D_cm = 0.0;     // single-ion anisotropy, cm^-1
  double g_factor = 2.0;
  double B_tesla = 0.0;
  double T_kelvin = 0.0;

  void validate() const {
    if (!std::isfinite(J_cm) || !(J_cm > 0.0)) throw ConfigError("PhysicalParams: J must be finite and positive");
    if (!std::isfinite(D_cm) || !std::isfinite(B_tesla)) throw ConfigError("PhysicalParams: D and B must be finite");
    if (!std::isfinite(g_factor) || !(g_factor > 0.0)) throw ConfigError("PhysicalParams: g must be positive");
    if (!std::isfinite(T_kelvin) || T_kelvin < 0.0) throw ConfigError("PhysicalParams: T must be finite and >= 0");
  }
};

// Reduced point: J = 1, D/J, g mu_B B / J, k_B T / J.
inline ThermalPoint to_reduced(const PhysicalParams& p) {
  p.validate();
  ThermalPoint pt;
  pt.params = {1.0, p.D_cm / p.J_cm, p.g_factor * constants::wavenumber_per_tesla * p.B_tesla / p.J_cm};
  pt.T = p.T_kelvin / (constants::kelvin_per_wavenumber * p.J_cm);
  return pt;
}

// Inverse of to_reduced for a given J (cm^-1) and g. The reduced point may
// carry any J; all ratios are taken relative to it.
inline PhysicalParams to_physical(const ThermalPoint& pt, double J_cm, double g_factor) {
  pt.validate();
  PhysicalParams p;
  p.J_cm = J_cm;
  p.g_factor = g_factor;
  p.D_cm = pt.params.D / pt.params.J * J_cm;
  p.B_tesla = pt.params.h / pt.params.J * J_cm / (g_factor * constants::wavenumber_per_tesla);
  p.T_kelvin = pt.T / pt.params.J * constants::kelvin_per_wavenumber * J_cm;
  p.validate();
  return p;
}

inline double kelvin_to_reduced(double T_kelvin, double J_cm) {
  return T_kelvin / (constants::kelvin_per_wavenumber * J_cm);
}
inline double reduced_to_kelvin(double t, double J_cm) { return t * constants::kelvin_per_wavenumber * J_cm; }
inline double tesla_to_reduced(double B, double J_cm, double g) { return g * constants::wavenumber_per_tesla * B / J_cm; }
inline double reduced_to_tesla(double h, double J_cm, double g) { return h * J_cm / (g * constants::wavenumber_per_tesla); }

// CuNiCu: J = 22.8 cm^-1, D = 0.05 cm^-1, g = 2.227; B and T left at zero.
inline PhysicalParams cunicu_preset() { return {22.8, 0.05, 2.227, 0.0, 0.0}; }

}  // namespace trimer
