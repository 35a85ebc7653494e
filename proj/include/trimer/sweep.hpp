#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "trimer/coherence.hpp"
#include "trimer/config.hpp"
#include "trimer/entanglement.hpp"
#include "trimer/husimi.hpp"
#include "trimer/model.hpp"
#include "trimer/report.hpp"
#include "trimer/squeezing.hpp"
#include "trimer/thermo.hpp"

namespace trimer {

// Evaluate f(0..n-1) on `workers` threads. Results land at their own index,
// so the output order never depends on scheduling. If any call throws, the
// exception of the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t n, std::size_t workers, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct GridPoint {
  double D, field, T;  // in the config's units
};

// D slowest, T fastest.
inline std::vector<GridPoint> grid_points(const SweepConfig& c) {
  std::vector<GridPoint> pts;
  pts.reserve(c.grid_points());
  for (double d : c.D.values)
    for (double f : c.field.values)
      for (double t : c.T.values) pts.push_back({d, f, t});
  return pts;
}

// All quantities of one grid point, in reduced units.
inline std::vector<Cell> evaluate_quantities(const ThermalPoint& pt, const std::vector<Quantity>& qs) {
  const ThermalState st = thermal_state(pt);
  const bool need_neg = std::any_of(qs.begin(), qs.end(), [](Quantity q) {
    return q == Quantity::N_ab || q == Quantity::N_ac || q == Quantity::N_abc;
  });
  const NegativityReport neg = need_neg ? negativity_report(st) : NegativityReport{};
  const bool need_coh = std::any_of(qs.begin(), qs.end(), [](Quantity q) {
    return q == Quantity::C_ab || q == Quantity::C_ac || q == Quantity::C_abc;
  });
  const CoherenceReport coh = need_coh ? coherence_report(st) : CoherenceReport{};

  std::vector<Cell> row;
  for (Quantity q : qs) {
    switch (q) {
      case Quantity::M:
        row.emplace_back(pt.zero_temperature() ? zero_T_magnetization(pt.params).fraction
                                               : magnetization(pt) / kSaturationSz);
        break;
      case Quantity::N_ab: row.emplace_back(neg.N_ab); break;
      case Quantity::N_ac: row.emplace_back(neg.N_ac); break;
      case Quantity::N_abc: row.emplace_back(neg.N_abc); break;
      case Quantity::C_ab: row.emplace_back(coh.C_ab); break;
      case Quantity::C_ac: row.emplace_back(coh.C_ac); break;
      case Quantity::C_abc: row.emplace_back(coh.C_abc); break;
      case Quantity::xi2: row.emplace_back(squeezing_parameter(st)); break;
      case Quantity::phase: row.emplace_back(ground_state(pt.params).label()); break;
      case Quantity::Z:
        if (pt.zero_temperature()) throw ConfigError("ln_Z is undefined at T = 0");
        row.emplace_back(log_partition_function_closed(pt));
        break;
      case Quantity::G: {
        if (pt.zero_temperature()) {
          const auto e = closed_energies(pt.params);
          row.emplace_back(*std::min_element(e.begin(), e.end()));
        } else {
          row.emplace_back(gibbs_free_energy(pt));
        }
        break;
      }
    }
  }
  for (const Cell& c : row)
    if (const double* d = std::get_if<double>(&c); d && !std::isfinite(*d))
      throw NumericalError("non-finite result at T = " + format_number(pt.T));
  return row;
}

inline Table run_sweep(const SweepConfig& c) {
  c.validate();
  Table t;
  t.schema = "trimer-sweep";
  t.meta.emplace_back("units", c.units == Units::Reduced ? "reduced" : "physical");
  if (c.units == Units::Physical) {
    t.meta.emplace_back("J_cm", c.J);
    t.meta.emplace_back("g", c.g);
  } else {
    t.meta.emplace_back("J", c.J);
  }
  t.columns = {c.D_column(), c.field_column(), c.T_column()};
  for (Quantity q : c.quantities) t.columns.emplace_back(quantity_column(q));

  const auto pts = grid_points(c);
  auto rows = parallel_map(pts.size(), c.workers, [&](std::size_t i) {
    const GridPoint& g = pts[i];
    std::vector<Cell> row{g.D, g.field, g.T};
    auto qs = evaluate_quantities(c.reduced_point(g.D, g.field, g.T), c.quantities);
    row.insert(row.end(), qs.begin(), qs.end());
    return row;
  });
  t.rows = std::move(rows);
  return t;
}

inline std::string format_windows(const std::vector<TemperatureWindow>& ws, const SweepConfig& c) {
  std::string s;
  for (const auto& w : ws) {
    if (!s.empty()) s += ';';
    s += '[' + format_number(c.temperature_from_reduced(w.lower)) + ':' + format_number(c.temperature_from_reduced(w.upper)) + ']';
  }
  return s;
}

// Threshold temperature of the selected negativity at every (D, field)
// point; the T axis is ignored.
inline Table run_threshold(const SweepConfig& c) {
  c.validate();
  Table t;
  t.schema = "trimer-threshold";
  t.meta.emplace_back("units", c.units == Units::Reduced ? "reduced" : "physical");
  t.meta.emplace_back("quantity", quantity_name(c.threshold_quantity));
  t.columns = {c.D_column(), c.field_column(), std::string(c.T_column()) + "_threshold", "reentrant", "windows"};

  std::vector<std::pair<double, double>> pts;
  for (double d : c.D.values)
    for (double f : c.field.values) pts.emplace_back(d, f);

  ThresholdOptions opts;
  opts.steps = c.threshold_steps;
  t.rows = parallel_map(pts.size(), c.workers, [&](std::size_t i) {
    const auto [d, f] = pts[i];
    const ThermalPoint pt = c.reduced_point(d, f, 0.0);
    ThresholdOptions o = opts;
    o.t_max = c.temperature_to_reduced(c.threshold_t_max);
    const ThresholdResult r = threshold_temperature(pt.params, c.threshold_quantity, o);
    return std::vector<Cell>{d, f, c.temperature_from_reduced(r.temperature),
                             std::string(r.reentrant() ? "yes" : "no"), format_windows(r.windows, c)};
  });
  return t;
}

// Ground-state phase and plateau magnetization at T = 0 on the (D, field)
// grid, with both analytic boundaries for each D.
inline Table run_phase(const SweepConfig& c) {
  c.validate();
  Table t;
  t.schema = "trimer-phase";
  t.meta.emplace_back("units", c.units == Units::Reduced ? "reduced" : "physical");
  const std::string fc = c.field_column();
  t.columns = {c.D_column(), fc, "phase", "M_over_Ms", fc + "_c1", fc + "_c2"};

  std::vector<std::pair<double, double>> pts;
  for (double d : c.D.values)
    for (double f : c.field.values) pts.emplace_back(d, f);

  t.rows = parallel_map(pts.size(), c.workers, [&](std::size_t i) {
    const auto [d, f] = pts[i];
    const TrimerParams p = c.reduced_point(d, f, 0.0).params;
    double h1 = boundary_singlet_to_half(p.J, p.D);
    double h2 = boundary_half_to_saturated(p.J, p.D);
    if (c.units == Units::Physical) {
      h1 = reduced_to_tesla(h1, c.J, c.g);
      h2 = reduced_to_tesla(h2, c.J, c.g);
    }
    return std::vector<Cell>{d, f, ground_state(p).label(), zero_T_magnetization(p).fraction, h1, h2};
  });
  return t;
}

// Husimi Q on a (theta, phi) grid for the single configured point.
inline Table run_husimi(const SweepConfig& c) {
  c.validate();
  const GridPoint g = grid_points(c).front();
  const ThermalState st = thermal_state(c.reduced_point(g.D, g.field, g.T));

  SphereGrid grid(c.n_theta, c.n_phi);
  const auto values = parallel_map(c.n_theta * c.n_phi, c.workers, [&](std::size_t k) {
    return husimi_q(st.rho, grid.theta(k / c.n_phi), grid.phi(k % c.n_phi));
  });
  grid.values = values;
  const HusimiMoments m = husimi_moments(grid);

  Table t;
  t.schema = "trimer-husimi";
  t.meta.emplace_back("units", c.units == Units::Reduced ? "reduced" : "physical");
  t.meta.emplace_back(c.D_column(), g.D);
  t.meta.emplace_back(c.field_column(), g.field);
  t.meta.emplace_back(c.T_column(), g.T);
  t.meta.emplace_back("integral", m.integral);
  t.meta.emplace_back("nx2", m.xx);
  t.meta.emplace_back("ny2", m.yy);
  t.meta.emplace_back("nz2", m.zz);
  t.meta.emplace_back("transverse_anisotropy", m.transverse_anisotropy());
  t.columns = {"theta", "phi", "Q"};
  for (std::size_t i = 0; i < c.n_theta; ++i)
    for (std::size_t j = 0; j < c.n_phi; ++j) t.rows.push_back({grid.theta(i), grid.phi(j), grid.at(i, j)});
  return t;
}

inline Table run(const SweepConfig& c) {
  switch (c.command) {
    case Command::Sweep: return run_sweep(c);
    case Command::Threshold: return run_threshold(c);
    case Command::Husimi: return run_husimi(c);
    case Command::Phase: return run_phase(c);
  }
  throw ConfigError("unknown command");
}

}  // namespace trimer
