#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "trimer/errors.hpp"
#include "trimer/linalg.hpp"
#include "trimer/model.hpp"
#include "trimer/squeezing.hpp"
#include "trimer/thermo.hpp"

namespace trimer {

// Anti-Hermitian generator (theta/2)(J- e^{i phi} - J+ e^{-i phi}).
inline Matrix coherent_generator(double theta, double phi) {
  const auto& J = CollectiveOperators::get();
  const cplx e(std::cos(phi), std::sin(phi));
  return (0.5 * theta) * (J.lowering() * e - J.raising() * std::conj(e));
}

// The highest-weight state |up, +1, up> rotated to direction (theta, phi).
inline std::vector<cplx> coherent_state(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw ConfigError("coherent_state: non-finite angle");
  const Matrix u = expm_antihermitian(coherent_generator(theta, phi));
  std::vector<cplx> v(kDim);
  const std::size_t top = basis_index(1, 1, 1);
  for (std::size_t i = 0; i < kDim; ++i) v[i] = u(i, top);
  return v;
}

inline double husimi_q(const Matrix& rho, std::span<const cplx> alpha) {
  const auto ra = rho * alpha;
  cplx s = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += std::conj(alpha[i]) * ra[i];
  return s.real() / std::numbers::pi;
}

inline double husimi_q(const Matrix& rho, double theta, double phi) { return husimi_q(rho, coherent_state(theta, phi)); }

inline double husimi_q(const ThermalState& st, double theta, double phi) { return husimi_q(st.rho, theta, phi); }

// theta_i = pi i / (n_theta - 1), both poles included; phi_j = 2 pi j / n_phi.
struct SphereGrid {
  std::size_t n_theta = 0, n_phi = 0;
  std::vector<double> values;  // row-major, theta slowest

  SphereGrid(std::size_t nt, std::size_t np) : n_theta(nt), n_phi(np) {
    if (nt < 2 || np < 1) throw ConfigError("SphereGrid: need n_theta >= 2 and n_phi >= 1");
    values.assign(nt * np, 0.0);
  }

  double theta(std::size_t i) const { return std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta - 1); }
  double phi(std::size_t j) const { return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi); }
  double& at(std::size_t i, std::size_t j) { return values[i * n_phi + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * n_phi + j]; }
};

inline SphereGrid husimi_grid(const Matrix& rho, std::size_t n_theta, std::size_t n_phi) {
  SphereGrid g(n_theta, n_phi);
  for (std::size_t i = 0; i < n_theta; ++i)
    for (std::size_t j = 0; j < n_phi; ++j) g.at(i, j) = husimi_q(rho, g.theta(i), g.phi(j));
  return g;
}

inline SphereGrid husimi_grid(const ThermalState& st, std::size_t n_theta, std::size_t n_phi) {
  return husimi_grid(st.rho, n_theta, n_phi);
}

// Q-weighted moments of the unit vector n(theta, phi) over the sphere, by the
// trapezoid rule in theta and the rectangle rule in phi.
struct HusimiMoments {
  double integral = 0.0;  // integral of Q dOmega
  double xx = 0.0, yy = 0.0, zz = 0.0;  // normalised <n_x^2>, <n_y^2>, <n_z^2>

  // Mean transverse spread relative to the longitudinal one.
  double transverse_anisotropy() const { return 0.5 * (xx + yy) / zz; }
  // Spread along x relative to y; 1 for a circular cross-section.
  double xy_ratio() const { return xx / yy; }
};

inline HusimiMoments husimi_moments(const SphereGrid& g) {
  const double dth = std::numbers::pi / static_cast<double>(g.n_theta - 1);
  const double dph = 2.0 * std::numbers::pi / static_cast<double>(g.n_phi);
  HusimiMoments m;
  for (std::size_t i = 0; i < g.n_theta; ++i) {
    const double th = g.theta(i);
    const double w_th = (i == 0 || i + 1 == g.n_theta) ? 0.5 : 1.0;
    const double st = std::sin(th), ct = std::cos(th);
    for (std::size_t j = 0; j < g.n_phi; ++j) {
      const double w = g.at(i, j) * st * w_th * dth * dph;
      const double ph = g.phi(j);
      m.integral += w;
      m.xx += w * st * st * std::cos(ph) * std::cos(ph);
      m.yy += w * st * st * std::sin(ph) * std::sin(ph);
      m.zz += w * ct * ct;
    }
  }
  if (m.integral > 0.0) {
    m.xx /= m.integral;
    m.yy /= m.integral;
    m.zz /= m.integral;
  }
  return m;
}

}  // namespace trimer
