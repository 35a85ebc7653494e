#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "trimer/errors.hpp"
#include "trimer/linalg.hpp"
#include "trimer/model.hpp"
#include "trimer/thermo.hpp"

namespace trimer {

// Sites: a = 0, b = 1, c = 2.
inline Matrix reduced_ab(const Matrix& rho) { return partial_trace(rho, trimer_dims(), {0, 1}); }
inline Matrix reduced_ac(const Matrix& rho) { return partial_trace(rho, trimer_dims(), {0, 2}); }
inline Matrix reduced_bc(const Matrix& rho) { return partial_trace(rho, trimer_dims(), {1, 2}); }

inline Matrix reduced_ab(const ThermalState& st) { return reduced_ab(st.rho); }
inline Matrix reduced_ac(const ThermalState& st) { return reduced_ac(st.rho); }
inline Matrix reduced_bc(const ThermalState& st) { return reduced_bc(st.rho); }

// Below this, a negativity is reported as exactly zero.
inline constexpr double kNegativityFloor = 1e-12;

inline double clamp_negativity(double n) { return n < kNegativityFloor ? 0.0 : n; }

// Negativity of `m` with respect to `site` of the given layout.
inline double negativity(const Matrix& m, const SiteDims& dims, std::size_t site) {
  const auto ev = eigvals_hermitian(partial_transpose(m, dims, site));
  return clamp_negativity(negative_part(ev));
}

// Zero if any factor is zero.
inline double geometric_mean3(double x, double y, double z) {
  if (x <= 0.0 || y <= 0.0 || z <= 0.0) return 0.0;
  return std::cbrt(x * y * z);
}

struct BipartiteNegativity {
  double N_ab = 0.0, N_ac = 0.0;
};

struct TripartiteNegativity {
  double N_a_bc = 0.0, N_b_ac = 0.0, N_c_ab = 0.0, N_abc = 0.0;
};

inline BipartiteNegativity negativity_bipartite(const Matrix& rho) {
  return {negativity(reduced_ab(rho), SiteDims{2, 3}, 1), negativity(reduced_ac(rho), SiteDims{2, 2}, 1)};
}

inline double negativity_bc(const Matrix& rho) { return negativity(reduced_bc(rho), SiteDims{3, 2}, 0); }

inline TripartiteNegativity negativity_tripartite(const Matrix& rho) {
  const SiteDims dims = trimer_dims();
  TripartiteNegativity t;
  t.N_a_bc = negativity(rho, dims, 0);
  t.N_b_ac = negativity(rho, dims, 1);
  t.N_c_ab = negativity(rho, dims, 2);
  t.N_abc = geometric_mean3(t.N_a_bc, t.N_b_ac, t.N_c_ab);
  return t;
}

inline BipartiteNegativity negativity_bipartite(const ThermalState& st) { return negativity_bipartite(st.rho); }
inline TripartiteNegativity negativity_tripartite(const ThermalState& st) { return negativity_tripartite(st.rho); }

struct NegativityReport {
  double N_ab = 0.0, N_ac = 0.0, N_abc = 0.0;
  double N_a_bc = 0.0, N_b_ac = 0.0, N_c_ab = 0.0;
};

inline NegativityReport negativity_report(const Matrix& rho) {
  const auto bi = negativity_bipartite(rho);
  const auto tri = negativity_tripartite(rho);
  return {bi.N_ab, bi.N_ac, tri.N_abc, tri.N_a_bc, tri.N_b_ac, tri.N_c_ab};
}

inline NegativityReport negativity_report(const ThermalState& st) { return negativity_report(st.rho); }

// ---------------------------------------------------------------------------
// Closed-form eigenvalues of the partially transposed two-site states,
// written in the 1-based elements of the full 12x12 thermal state.

inline std::array<double, 6> lambda_ab_closed(const Matrix& rho) {
  auto r = [&](int i, int j) { return rho(i - 1, j - 1).real(); };
  std::array<double, 6> l{};
  l[0] = r(2, 2) + r(8, 8);
  l[1] = r(5, 5) + r(11, 11);
  {
    const double s = r(1, 1) + r(7, 7) + r(4, 4) + r(10, 10);
    const double d = r(1, 1) + r(7, 7) - r(4, 4) - r(10, 10);
    const double o = r(2, 3) + r(8, 9);
    const double q = std::sqrt(d * d + 4.0 * o * o);
    l[2] = 0.5 * (s + q);
    l[3] = 0.5 * (s - q);
  }
  {
    const double s = r(3, 3) + r(9, 9) + r(6, 6) + r(12, 12);
    const double d = r(3, 3) + r(9, 9) - r(6, 6) - r(12, 12);
    const double o = r(10, 11) + r(4, 5);
    const double q = std::sqrt(d * d + 4.0 * o * o);
    l[4] = 0.5 * (s + q);
    l[5] = 0.5 * (s - q);
  }
  return l;
}

inline std::array<double, 4> lambda_ac_closed(const Matrix& rho) {
  auto r = [&](int i, int j) { return rho(i - 1, j - 1).real(); };
  std::array<double, 4> l{};
  l[0] = r(2, 2) + r(4, 4) + r(6, 6);
  l[1] = r(7, 7) + r(9, 9) + r(11, 11);
  const double up = r(1, 1) + r(3, 3) + r(5, 5);
  const double dn = r(8, 8) + r(10, 10) + r(12, 12);
  const double o = r(2, 7) + r(4, 9) + r(6, 11);
  const double q = std::sqrt((up - dn) * (up - dn) + 4.0 * o * o);
  l[2] = 0.5 * (up + dn + q);
  l[3] = 0.5 * (up + dn - q);
  return l;
}

// ---------------------------------------------------------------------------
// Threshold temperatures

enum class NegativityQuantity { N_ab, N_ac, N_abc };

inline const char* quantity_name(NegativityQuantity q) {
  switch (q) {
    case NegativityQuantity::N_ab: return "N_ab";
    case NegativityQuantity::N_ac: return "N_ac";
    case NegativityQuantity::N_abc: return "N_abc";
  }
  return "?";
}

inline double evaluate_negativity(NegativityQuantity q, const ThermalPoint& pt) {
  const ThermalState st = thermal_state(pt);
  switch (q) {
    case NegativityQuantity::N_ab: return negativity_bipartite(st).N_ab;
    case NegativityQuantity::N_ac: return negativity_bipartite(st).N_ac;
    case NegativityQuantity::N_abc: return negativity_tripartite(st).N_abc;
  }
  return 0.0;
}

struct TemperatureWindow {
  double lower, upper;  // lower == 0 means nonzero from T = 0
};

struct ThresholdResult {
  double temperature = 0.0;  // upper end of the last nonzero window
  std::vector<TemperatureWindow> windows;

  // Zero at T = 0 but nonzero somewhere above, or split into several windows.
  bool reentrant() const { return !windows.empty() && (windows.front().lower > 0.0 || windows.size() > 1); }
};

struct ThresholdOptions {
  double t_max = 5.0;      // in units of J
  std::size_t steps = 500;  // uniform scan intervals on [0, t_max]
  double tolerance = 1e-4;  // in units of J
};

namespace detail {

// Bisect for the zero/nonzero transition in (lo, hi), where positive(lo) != positive(hi).
inline double bisect_edge(const std::function<bool(double)>& positive, double lo, double hi, double tol) {
  const bool lo_positive = positive(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (positive(mid) == lo_positive) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Scan T on [0, t_max] (T = 0 via the ground-state path), then bisect each
// zero/nonzero edge to opts.tolerance * J.
inline ThresholdResult threshold_temperature(const TrimerParams& params, NegativityQuantity q,
                                             const ThresholdOptions& opts = {}) {
  params.validate();
  if (!(opts.t_max > 0.0) || opts.steps < 2 || !(opts.tolerance > 0.0))
    throw ConfigError("threshold_temperature: invalid scan options");
  const double tol = opts.tolerance * params.J;
  auto positive = [&](double T) { return evaluate_negativity(q, ThermalPoint{params, T}) > 0.0; };

  std::vector<double> ts(opts.steps + 1);
  std::vector<char> pos(opts.steps + 1);
  for (std::size_t k = 0; k <= opts.steps; ++k) {
    ts[k] = opts.t_max * static_cast<double>(k) / static_cast<double>(opts.steps);
    pos[k] = positive(ts[k]);
  }

  ThresholdResult res;
  for (std::size_t k = 0; k <= opts.steps;) {
    if (!pos[k]) {
      ++k;
      continue;
    }
    TemperatureWindow w{0.0, opts.t_max};
    if (k > 0) w.lower = detail::bisect_edge(positive, ts[k - 1], ts[k], tol);
    std::size_t e = k;
    while (e <= opts.steps && pos[e]) ++e;
    if (e <= opts.steps) w.upper = detail::bisect_edge(positive, ts[e - 1], ts[e], tol);
    res.windows.push_back(w);
    k = e;
  }
  if (res.windows.empty())
    throw NumericalError(std::string("threshold_temperature: ") + quantity_name(q) + " is zero on the whole scan range");
  if (pos.back()) throw NumericalError(std::string("threshold_temperature: ") + quantity_name(q) + " still nonzero at t_max");
  res.temperature = res.windows.back().upper;
  return res;
}

}  // namespace trimer
