#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trimer/errors.hpp"
#include "trimer/linalg.hpp"
#include "trimer/model.hpp"

namespace trimer {

// Reduced units throughout: energies in the same unit as J and k_B = 1.
struct ThermalPoint {
  TrimerParams params;
  double T = 0.0;

  bool zero_temperature() const { return T == 0.0; }
  double beta() const { return 1.0 / T; }

  void validate() const {
    params.validate();
    if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("ThermalPoint: temperature must be finite and >= 0");
  }
};

namespace detail {

inline void require_positive_temperature(const ThermalPoint& pt, const char* what) {
  pt.validate();
  if (pt.zero_temperature()) throw ConfigError(std::string(what) + ": T = 0 has no partition function; use the ground-state path");
}

// ln cosh x without overflow.
inline double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

inline double log_sum_exp(std::span<const double> terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += std::exp(t - top);
  return top + std::log(s);
}

}  // namespace detail

// ln Z from the six printed terms of the closed-form partition function,
// each taken to log space so that T/J down to ~1e-4 does not overflow.
inline double log_partition_function_closed(const ThermalPoint& pt) {
  detail::require_positive_temperature(pt, "partition_function_closed");
  const double J = pt.params.J, D = pt.params.D, h = pt.params.h;
  const double b = pt.beta();
  using detail::log_cosh;
  const std::array<double, 6> terms = {
      0.0,
      std::log(2.0) + log_cosh(b * h) - b * D,
      -b * (D - J),
      std::log(2.0) + log_cosh(2.0 * b * h) - b * (D + J),
      std::log(4.0) + log_cosh(b * h) - 0.5 * b * D + log_cosh(0.5 * b * std::sqrt(D * D + 4.0 * J * J)),
      std::log(2.0) + log_cosh(0.5 * b * std::sqrt((D - J) * (D - J) + 8.0 * J * J)) - 0.5 * b * (D - J),
  };
  return detail::log_sum_exp(terms);
}

inline double partition_function_closed(const ThermalPoint& pt) { return std::exp(log_partition_function_closed(pt)); }

// ln sum_i exp(-E_i / T) over an arbitrary spectrum.
inline double log_boltzmann_sum(std::span<const double> energies, double T) {
  std::vector<double> terms(energies.size());
  std::transform(energies.begin(), energies.end(), terms.begin(), [T](double e) { return -e / T; });
  return detail::log_sum_exp(terms);
}

inline double gibbs_free_energy(const ThermalPoint& pt) { return -pt.T * log_partition_function_closed(pt); }

// <S_T^z> in units of g mu_B; equals -dG/dh.
inline double magnetization(const ThermalPoint& pt) {
  detail::require_positive_temperature(pt, "magnetization");
  const auto e = closed_energies(pt.params);
  const double e0 = *std::min_element(e.begin(), e.end());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) {
    const double w = std::exp(-(e[i] - e0) / pt.T);
    num += kTotalSz[i] * w;
    den += w;
  }
  return num / den;
}

// Saturation magnetization M_s = 2 g mu_B.
inline constexpr double kSaturationSz = 2.0;

struct ThermalState {
  ThermalPoint point;
  std::optional<double> log_z;  // empty at T = 0
  Matrix rho;
  std::size_t ground_degeneracy = 1;  // populated states at T = 0
};

// Gibbs state exp(-H/T)/Z from numerical diagonalisation of H. At T = 0 the
// state is the equal-weight mixture of the closed-form ground states, using
// the analytic phase boundaries to detect degeneracy.
inline ThermalState thermal_state(const ThermalPoint& pt) {
  pt.validate();
  ThermalState st{pt, std::nullopt, Matrix(kDim, kDim), 1};

  if (pt.zero_temperature()) {
    const GroundStatePhase gs = ground_state(pt.params);
    const auto spec = spectrum_closed_form(pt.params);
    std::vector<Phase> members{gs.phase};
    if (gs.other) members.push_back(*gs.other);
    for (Phase ph : members) {
      const auto v = as_complex(spec[phase_eigen_index(ph) - 1].vector);
      st.rho += Matrix::outer(v) * (1.0 / static_cast<double>(members.size()));
    }
    st.ground_degeneracy = members.size();
    return st;
  }

  const EigenSystem es = eig_hermitian(build_hamiltonian(pt.params));
  const double e0 = es.values.front();
  std::vector<double> w(kDim);
  double sum = 0.0;
  for (std::size_t k = 0; k < kDim; ++k) {
    w[k] = std::exp(-(es.values[k] - e0) / pt.T);
    sum += w[k];
  }
  for (std::size_t k = 0; k < kDim; ++k) {
    if (w[k] == 0.0) continue;
    st.rho += Matrix::outer(es.vector(k)) * (w[k] / sum);
  }
  // Hermitian by construction up to rounding; symmetrise exactly.
  st.rho = (st.rho + st.rho.adjoint()) * 0.5;
  st.log_z = -e0 / pt.T + std::log(sum);
  return st;
}

// ---------------------------------------------------------------------------
// Closed-form density-matrix elements

struct DensityElement {
  int row, col;  // 1-based, row <= col
  double value;
};

// Every nonzero element of the thermal density matrix (upper triangle),
// evaluated from closed-form energies, amplitudes and Z. Elements that share
// a printed formula are listed separately so that each equality is checked.
class ClosedDensityElements {
public:
  explicit ClosedDensityElements(std::vector<DensityElement> elements) : elements_(std::move(elements)) {}

  const std::vector<DensityElement>& elements() const { return elements_; }

  double at(int row, int col) const {
    if (row > col) std::swap(row, col);
    for (const auto& e : elements_)
      if (e.row == row && e.col == col) return e.value;
    return 0.0;
  }

  Matrix to_matrix() const {
    Matrix m(kDim, kDim);
    for (const auto& e : elements_) {
      m(e.row - 1, e.col - 1) = e.value;
      m(e.col - 1, e.row - 1) = e.value;
    }
    return m;
  }

  double trace() const {
    double t = 0.0;
    for (const auto& e : elements_)
      if (e.row == e.col) t += e.value;
    return t;
  }

private:
  std::vector<DensityElement> elements_;
};

inline ClosedDensityElements density_elements_closed(const ThermalPoint& pt) {
  detail::require_positive_temperature(pt, "density_elements_closed");
  const auto E = closed_energies(pt.params);
  const AmplitudeSet s = amplitudes(pt.params.J, pt.params.D);
  const double log_z = log_partition_function_closed(pt);
  // w(i) = exp(-beta E_i) / Z
  auto w = [&](int i) { return std::exp(-E[i - 1] / pt.T - log_z); };

  const double r11 = w(11);
  const double r22 = 0.5 * w(3) + s.a * s.a * w(5) + s.c * s.c * w(6);
  const double r23 = s.a * s.b * w(5) + s.c * s.d * w(6);
  const double r27 = -0.5 * w(3) + s.a * s.a * w(5) + s.c * s.c * w(6);
  const double r33 = s.b * s.b * w(5) + s.d * s.d * w(6);
  const double r44 = 0.5 * w(1) + s.e * s.e * w(9) + s.g_amp * s.g_amp * w(10);
  const double r45 = s.e * s.f * w(9) + s.g_amp * s.h_amp * w(10);
  const double r49 = -0.5 * w(1) + s.e * s.e * w(9) + s.g_amp * s.g_amp * w(10);
  const double r55 = 0.5 * w(2) + s.f * s.f * w(9) + s.h_amp * s.h_amp * w(10);
  const double r58 = -0.5 * w(2) + s.f * s.f * w(9) + s.h_amp * s.h_amp * w(10);
  const double r66 = 0.5 * w(4) + s.a * s.a * w(7) + s.c * s.c * w(8);
  const double r6_10 = s.a * s.b * w(7) + s.c * s.d * w(8);
  const double r6_11 = -0.5 * w(4) + s.a * s.a * w(7) + s.c * s.c * w(8);
  const double r10_10 = s.b * s.b * w(7) + s.d * s.d * w(8);
  const double r12_12 = w(12);

  return ClosedDensityElements({
      {1, 1, r11},     {2, 2, r22},       {7, 7, r22},       {2, 3, r23},     {3, 7, r23},
      {2, 7, r27},     {3, 3, r33},       {4, 4, r44},       {9, 9, r44},     {4, 5, r45},
      {4, 8, r45},     {5, 9, r45},       {8, 9, r45},       {4, 9, r49},     {5, 5, r55},
      {8, 8, r55},     {5, 8, r58},       {6, 6, r66},       {11, 11, r66},   {6, 10, r6_10},
      {10, 11, r6_10}, {6, 11, r6_11},    {10, 10, r10_10},  {12, 12, r12_12},
  });
}

struct ElementDiscrepancy {
  int row, col;
  double closed, numeric;
};

// Closed-form elements that disagree with rho beyond tol, plus any entry of
// rho outside the closed-form sparsity pattern that exceeds tol.
inline std::vector<ElementDiscrepancy> compare_density_elements(const ClosedDensityElements& closed, const Matrix& rho,
                                                                double tol = 1e-10) {
  std::vector<ElementDiscrepancy> out;
  const Matrix m = closed.to_matrix();
  for (int i = 0; i < static_cast<int>(kDim); ++i)
    for (int j = i; j < static_cast<int>(kDim); ++j) {
      const double num = rho(i, j).real();
      if (std::abs(m(i, j).real() - num) > tol || std::abs(rho(i, j).imag()) > tol)
        out.push_back({i + 1, j + 1, m(i, j).real(), num});
    }
  return out;
}

}  // namespace trimer
