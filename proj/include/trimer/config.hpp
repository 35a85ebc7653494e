#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trimer/entanglement.hpp"
#include "trimer/errors.hpp"
#include "trimer/report.hpp"
#include "trimer/units.hpp"

namespace trimer {

// Run configuration, stored as JSON. Layout (schema_version 1):
//
//   {
//     "schema_version": 1,
//     "command": "sweep" | "threshold" | "husimi" | "phase",
//     "units": "reduced" | "physical",
//     "model": { "J": 1 } | { "preset": "CuNiCu" } | { "J_cm": 22.8, "g": 2.227 },
//     "grid": { "D": AXIS, "h": AXIS, "T": AXIS }          (reduced)
//             { "D_cm": AXIS, "B": AXIS, "T": AXIS }       (physical: cm^-1, tesla, kelvin)
//     "quantities": ["M", "N_ab", ...],
//     "threshold": { "quantity": "N_abc", "t_max": 5, "steps": 500 },
//     "husimi": { "n_theta": 41, "n_phi": 72 },
//     "format": "csv", "workers": 1
//   }
//
// AXIS is a number, an array of numbers, or { "min", "max", "count" }
// (inclusive linear grid).

inline constexpr int kConfigSchemaVersion = 1;

enum class Units { Reduced, Physical };

inline Units parse_units(const std::string& s) {
  if (s == "reduced") return Units::Reduced;
  if (s == "physical") return Units::Physical;
  throw ConfigError("unknown units: " + s + " (expected reduced or physical)");
}

enum class Command { Sweep, Threshold, Husimi, Phase };

inline Command parse_command(const std::string& s) {
  if (s == "sweep") return Command::Sweep;
  if (s == "threshold") return Command::Threshold;
  if (s == "husimi") return Command::Husimi;
  if (s == "phase") return Command::Phase;
  throw ConfigError("unknown command: " + s);
}

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Sweep: return "sweep";
    case Command::Threshold: return "threshold";
    case Command::Husimi: return "husimi";
    case Command::Phase: return "phase";
  }
  return "?";
}

enum class Quantity { M, N_ab, N_ac, N_abc, C_ab, C_ac, C_abc, xi2, phase, Z, G };

struct QuantityInfo {
  Quantity q;
  const char* key;     // config selector
  const char* column;  // output column
};

inline constexpr QuantityInfo kQuantities[] = {
    {Quantity::M, "M", "M_over_Ms"},     {Quantity::N_ab, "N_ab", "N_ab"},   {Quantity::N_ac, "N_ac", "N_ac"},
    {Quantity::N_abc, "N_abc", "N_abc"}, {Quantity::C_ab, "C_ab", "C_ab"},   {Quantity::C_ac, "C_ac", "C_ac"},
    {Quantity::C_abc, "C_abc", "C_abc"}, {Quantity::xi2, "xi2", "xi2"},      {Quantity::phase, "phase", "phase"},
    {Quantity::Z, "Z", "ln_Z"},          {Quantity::G, "G", "G"},
};

inline Quantity parse_quantity(const std::string& s) {
  for (const auto& info : kQuantities)
    if (s == info.key) return info.q;
  throw ConfigError("unknown quantity: " + s);
}

inline const char* quantity_column(Quantity q) {
  for (const auto& info : kQuantities)
    if (info.q == q) return info.column;
  return "?";
}

inline NegativityQuantity parse_negativity_quantity(const std::string& s) {
  if (s == "N_ab") return NegativityQuantity::N_ab;
  if (s == "N_ac") return NegativityQuantity::N_ac;
  if (s == "N_abc") return NegativityQuantity::N_abc;
  throw ConfigError("threshold quantity must be N_ab, N_ac or N_abc, got " + s);
}

struct Axis {
  std::vector<double> values;

  static Axis single(double v) { return Axis{{v}}; }

  static Axis linear(double lo, double hi, std::size_t count) {
    if (count < 1) throw ConfigError("axis count must be >= 1");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("axis bounds must be finite");
    if (count == 1) {
      if (lo != hi) throw ConfigError("axis with count 1 needs min == max");
      return single(lo);
    }
    Axis a;
    a.values.resize(count);
    for (std::size_t i = 0; i < count; ++i)
      a.values[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    a.values.back() = hi;
    return a;
  }

  std::size_t size() const { return values.size(); }
};

struct SweepConfig {
  Command command = Command::Sweep;
  Units units = Units::Reduced;
  double J = 1.0;  // reduced: energy unit; physical: J in cm^-1
  double g = 2.0;  // physical only
  Axis D = Axis::single(0.0);      // D/J, or D in cm^-1
  Axis field = Axis::single(0.0);  // h = g mu_B B (same unit as J), or B in tesla
  Axis T = Axis::single(0.0);      // k_B T (same unit as J), or kelvin
  std::vector<Quantity> quantities;
  NegativityQuantity threshold_quantity = NegativityQuantity::N_abc;
  double threshold_t_max = 5.0;  // in the temperature unit of `units`
  std::size_t threshold_steps = 500;
  std::size_t n_theta = 41, n_phi = 72;
  OutputFormat format = OutputFormat::Csv;
  std::size_t workers = 1;

  std::size_t grid_points() const { return D.size() * field.size() * T.size(); }

  const char* D_column() const { return units == Units::Reduced ? "D" : "D_cm"; }
  const char* field_column() const { return units == Units::Reduced ? "h" : "B_T"; }
  const char* T_column() const { return units == Units::Reduced ? "T" : "T_K"; }

  // Map a grid point to the reduced model point.
  ThermalPoint reduced_point(double d, double f, double t) const {
    if (units == Units::Reduced) {
      ThermalPoint pt{{J, d, f}, t};
      pt.validate();
      return pt;
    }
    return to_reduced(PhysicalParams{J, d, g, f, t});
  }

  double temperature_to_reduced(double t) const { return units == Units::Reduced ? t / J : kelvin_to_reduced(t, J); }
  double temperature_from_reduced(double t) const { return units == Units::Reduced ? t * J : reduced_to_kelvin(t, J); }

  void validate() const {
    if (!std::isfinite(J) || !(J > 0.0)) throw ConfigError("config: J must be positive");
    if (units == Units::Physical && !(g > 0.0)) throw ConfigError("config: g must be positive");
    for (const Axis* a : {&D, &field, &T})
      if (a->values.empty()) throw ConfigError("config: empty axis");
    for (double t : T.values)
      if (!std::isfinite(t) || t < 0.0) throw ConfigError("config: temperatures must be finite and >= 0");
    if (workers < 1) throw ConfigError("config: workers must be >= 1");
    if (command == Command::Sweep && quantities.empty()) throw ConfigError("config: sweep needs at least one quantity");
    if (command == Command::Husimi && grid_points() != 1)
      throw ConfigError("config: husimi takes exactly one (D, field, T) point");
    if (command == Command::Husimi && (n_theta < 2 || n_phi < 1)) throw ConfigError("config: bad husimi grid size");
    if (command == Command::Threshold && (!(threshold_t_max > 0.0) || threshold_steps < 2))
      throw ConfigError("config: bad threshold scan");
  }
};

namespace detail {

inline Axis parse_axis(const nlohmann::json& j, const std::string& name) {
  if (j.is_number()) return Axis::single(j.get<double>());
  if (j.is_array()) {
    Axis a;
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError("axis " + name + ": non-numeric value");
      a.values.push_back(v.get<double>());
    }
    if (a.values.empty()) throw ConfigError("axis " + name + ": empty list");
    return a;
  }
  if (j.is_object()) {
    for (const char* k : {"min", "max", "count"})
      if (!j.contains(k)) throw ConfigError("axis " + name + ": missing " + k);
    const auto count = j.at("count").get<long long>();
    if (count < 1) throw ConfigError("axis " + name + ": count must be >= 1");
    return Axis::linear(j.at("min").get<double>(), j.at("max").get<double>(), static_cast<std::size_t>(count));
  }
  throw ConfigError("axis " + name + ": expected number, array or {min, max, count}");
}

inline void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

}  // namespace detail

// Build a config from JSON. `units_override` is the --units flag; it must
// agree with the file when both are given, and one of them is required.
// `command` is the requested subcommand, which must match the file's if set.
inline SweepConfig parse_config(const nlohmann::json& j, std::optional<Units> units_override = std::nullopt,
                                std::optional<Command> command = std::nullopt) {
  try {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    detail::reject_unknown_keys(j,
                                {"schema_version", "command", "units", "model", "grid", "quantities", "threshold",
                                 "husimi", "format", "workers", "description"},
                                "config");
    if (j.value("schema_version", 0) != kConfigSchemaVersion)
      throw ConfigError("config: schema_version must be " + std::to_string(kConfigSchemaVersion));

    SweepConfig c;
    if (j.contains("command")) c.command = parse_command(j.at("command").get<std::string>());
    if (command) {
      if (j.contains("command") && c.command != *command)
        throw ConfigError(std::string("config is for '") + command_name(c.command) + "', not '" + command_name(*command) + "'");
      c.command = *command;
    }

    std::optional<Units> file_units;
    if (j.contains("units")) file_units = parse_units(j.at("units").get<std::string>());
    if (file_units && units_override && *file_units != *units_override)
      throw ConfigError("config: --units disagrees with the units stated in the config");
    if (!file_units && !units_override) throw ConfigError("config: units must be given (reduced or physical)");
    c.units = file_units ? *file_units : *units_override;
    const bool physical = c.units == Units::Physical;

    double default_D = 0.0;
    const nlohmann::json model = j.value("model", nlohmann::json::object());
    detail::reject_unknown_keys(model, {"J", "J_cm", "g", "preset", "D", "D_cm"}, "model");
    if (physical) {
      if (model.contains("J")) throw ConfigError("model: physical units take J_cm, not J");
      if (model.contains("preset")) {
        if (model.at("preset").get<std::string>() != "CuNiCu") throw ConfigError("model: unknown preset");
        const PhysicalParams p = cunicu_preset();
        c.J = p.J_cm;
        c.g = p.g_factor;
        default_D = p.D_cm;
      }
      c.J = model.value("J_cm", c.J);
      c.g = model.value("g", c.g);
      default_D = model.value("D_cm", default_D);
      if (!model.contains("preset") && !model.contains("J_cm")) throw ConfigError("model: physical units need J_cm or a preset");
    } else {
      if (model.contains("J_cm") || model.contains("g") || model.contains("preset"))
        throw ConfigError("model: reduced units take J and D only");
      c.J = model.value("J", 1.0);
      default_D = model.value("D", 0.0);
    }
    c.D = Axis::single(default_D);

    const nlohmann::json grid = j.value("grid", nlohmann::json::object());
    const char* d_key = physical ? "D_cm" : "D";
    const char* f_key = physical ? "B" : "h";
    detail::reject_unknown_keys(grid, {d_key, f_key, "T"}, std::string("grid (") + (physical ? "physical" : "reduced") + ")");
    if (grid.contains(d_key)) c.D = detail::parse_axis(grid.at(d_key), d_key);
    if (grid.contains(f_key)) c.field = detail::parse_axis(grid.at(f_key), f_key);
    if (grid.contains("T")) c.T = detail::parse_axis(grid.at("T"), "T");

    if (j.contains("quantities"))
      for (const auto& q : j.at("quantities")) c.quantities.push_back(parse_quantity(q.get<std::string>()));

    if (j.contains("threshold")) {
      const auto& t = j.at("threshold");
      detail::reject_unknown_keys(t, {"quantity", "t_max", "steps"}, "threshold");
      if (t.contains("quantity")) c.threshold_quantity = parse_negativity_quantity(t.at("quantity").get<std::string>());
      c.threshold_t_max = t.value("t_max", physical ? reduced_to_kelvin(5.0, c.J) : 5.0);
      const long long steps = t.value("steps", 500LL);
      if (steps < 2) throw ConfigError("threshold: steps must be >= 2");
      c.threshold_steps = static_cast<std::size_t>(steps);
    } else if (physical) {
      c.threshold_t_max = reduced_to_kelvin(5.0, c.J);
    }

    if (j.contains("husimi")) {
      const auto& h = j.at("husimi");
      detail::reject_unknown_keys(h, {"n_theta", "n_phi"}, "husimi");
      const long long nt = h.value("n_theta", 41LL), np = h.value("n_phi", 72LL);
      if (nt < 2 || np < 1) throw ConfigError("husimi: need n_theta >= 2 and n_phi >= 1");
      c.n_theta = static_cast<std::size_t>(nt);
      c.n_phi = static_cast<std::size_t>(np);
    }
    if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
    if (j.contains("workers")) {
      const long long w = j.at("workers").get<long long>();
      if (w < 1) throw ConfigError("config: workers must be >= 1");
      c.workers = static_cast<std::size_t>(w);
    }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// Presets file: { "schema_version": 1, "presets": { name: config, ... } }.
inline nlohmann::json load_preset(const std::string& recipes_path, const std::string& name) {
  const nlohmann::json all = load_json_file(recipes_path);
  if (all.value("schema_version", 0) != kConfigSchemaVersion)
    throw ConfigError(recipes_path + ": unsupported schema_version");
  const auto& presets = all.at("presets");
  if (!presets.contains(name)) throw ConfigError("unknown preset: " + name);
  return presets.at(name);
}

}  // namespace trimer
