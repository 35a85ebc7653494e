#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "trimer/errors.hpp"
#include "trimer/linalg.hpp"
#include "trimer/model.hpp"
#include "trimer/thermo.hpp"

namespace trimer {

// Total spin J = s_a + S_b + s_c on the 12-dimensional space.
struct CollectiveOperators {
  Matrix Jx, Jy, Jz;
  static constexpr int L_prime = 4;  // spin-1 counted as two spin-1/2

  Matrix raising() const { return Jx + cplx(0.0, 1.0) * Jy; }
  Matrix lowering() const { return Jx - cplx(0.0, 1.0) * Jy; }

  static const CollectiveOperators& get() {
    static const CollectiveOperators ops = [] {
      const auto& s = TrimerOperators::get().site;
      return CollectiveOperators{s[0].x + s[1].x + s[2].x, s[0].y + s[1].y + s[2].y, s[0].z + s[1].z + s[2].z};
    }();
    return ops;
  }
};

// J_n = cos(theta) Jx + sin(theta) Jy, perpendicular to the z-axis mean spin.
inline Matrix transverse_operator(double theta) {
  const auto& J = CollectiveOperators::get();
  return std::cos(theta) * J.Jx + std::sin(theta) * J.Jy;
}

inline double transverse_variance(const Matrix& rho, double theta) {
  const Matrix jn = transverse_operator(theta);
  const double mean = expectation(rho, jn);
  return expectation(rho, jn * jn) - mean * mean;
}

inline double transverse_variance(const ThermalState& st, double theta) { return transverse_variance(st.rho, theta); }

struct SqueezingMoments {
  double sum_sq;      // <Jx^2 + Jy^2>
  double diff_sq;     // <Jx^2 - Jy^2>
  double anticomm;    // <{Jx, Jy}>
};

inline SqueezingMoments squeezing_moments(const Matrix& rho) {
  const auto& J = CollectiveOperators::get();
  const Matrix xx = J.Jx * J.Jx;
  const Matrix yy = J.Jy * J.Jy;
  return {expectation(rho, xx + yy), expectation(rho, xx - yy), expectation(rho, anticommutator(J.Jx, J.Jy))};
}

inline double squeezing_parameter(const Matrix& rho) {
  const SqueezingMoments m = squeezing_moments(rho);
  return (2.0 / CollectiveOperators::L_prime) * (m.sum_sq - std::hypot(m.diff_sq, m.anticomm));
}

inline double squeezing_parameter(const ThermalState& st) { return squeezing_parameter(st.rho); }

inline double squeezing_parameter(const ThermalPoint& pt) { return squeezing_parameter(thermal_state(pt)); }

struct SqueezingMinimum {
  double h;
  std::optional<double> T_min;  // empty when xi^2(T) has no interior minimum
  double xi2_min;               // value at T_min, or the smallest scanned value

  bool monotone() const { return !T_min.has_value(); }
};

struct LocusOptions {
  double t_max = 3.0;       // in units of J
  std::size_t steps = 300;  // uniform scan intervals on [0, t_max]
  double tolerance = 1e-4;  // in units of J
};

// Golden-section refinement of a bracketed minimum of f on [a, b].
inline double golden_section_min(const auto& f, double a, double b, double tol) {
  const double inv_phi = 1.0 / std::numbers::phi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// For each field, the temperature minimising xi^2(T) at fixed J and D.
inline std::vector<SqueezingMinimum> squeezing_minimum_locus(double J, double D, std::span<const double> fields,
                                                             const LocusOptions& opts = {}) {
  if (!(opts.t_max > 0.0) || opts.steps < 2 || !(opts.tolerance > 0.0))
    throw ConfigError("squeezing_minimum_locus: invalid scan options");
  std::vector<SqueezingMinimum> out;
  for (double h : fields) {
    const TrimerParams p{J, D, h};
    p.validate();
    auto xi2 = [&](double T) { return squeezing_parameter(ThermalPoint{p, T}); };

    std::size_t best = 0;
    const double at_zero = xi2(0.0);
    double best_val = at_zero;
    for (std::size_t k = 1; k <= opts.steps; ++k) {
      const double v = xi2(opts.t_max * static_cast<double>(k) / static_cast<double>(opts.steps));
      if (v < best_val) {
        best_val = v;
        best = k;
      }
    }
    // A dip below the T = 0 value at rounding level is a flat plateau, not a minimum.
    if (best == 0 || best == opts.steps || at_zero - best_val <= 1e-9 * std::max(1.0, at_zero)) {
      out.push_back({h, std::nullopt, best_val});
      continue;
    }
    const double dt = opts.t_max / static_cast<double>(opts.steps);
    const double lo = dt * static_cast<double>(best - 1);
    const double hi = dt * static_cast<double>(best + 1);
    const double t = golden_section_min(xi2, lo, hi, opts.tolerance * J);
    out.push_back({h, t, xi2(t)});
  }
  return out;
}

}  // namespace trimer
