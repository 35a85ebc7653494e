#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "trimer/husimi.hpp"

using namespace trimer;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix taylor_exp(const Matrix& g, int terms = 20) {
  Matrix out = Matrix::identity(g.rows());
  Matrix term = Matrix::identity(g.rows());
  for (int k = 1; k < terms; ++k) {
    term = term * g * cplx(1.0 / k);
    out += term;
  }
  return out;
}

// Projector on the total-spin-2 multiplet, from the eigenvectors of J^2.
Matrix quintet_projector() {
  const auto& J = CollectiveOperators::get();
  const auto es = eig_hermitian(J.Jx * J.Jx + J.Jy * J.Jy + J.Jz * J.Jz);
  Matrix p(kDim, kDim);
  for (std::size_t k = 0; k < kDim; ++k)
    if (std::abs(es.values[k] - 6.0) < 1e-9) p += Matrix::outer(es.vector(k));
  return p;
}

double norm2(const std::vector<cplx>& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

}  // namespace

TEST(CoherentState, NorthPoleIsHighestWeight) {
  const auto v = coherent_state(0.0, 1.234);
  EXPECT_EQ(v[0], cplx(1.0));
  for (std::size_t i = 1; i < kDim; ++i) EXPECT_EQ(std::abs(v[i]), 0.0);
}

TEST(CoherentState, SouthPoleIsLowestWeight) {
  for (double phi : {0.0, 0.7, 3.0}) EXPECT_NEAR(std::abs(coherent_state(kPi, phi)[11]), 1.0, 1e-12);
}

TEST(CoherentState, NormAndPolarisation) {
  const auto& J = CollectiveOperators::get();
  for (double th = 0; th <= kPi; th += 0.3)
    for (double phi : {0.0, 1.1, 4.0}) {
      const auto v = coherent_state(th, phi);
      EXPECT_NEAR(norm2(v), 1.0, 1e-12);
      EXPECT_NEAR(expectation(Matrix::outer(v), J.Jz), 2.0 * std::cos(th), 1e-12);
      EXPECT_NEAR(expectation(Matrix::outer(v), J.Jx), 2.0 * std::sin(th) * std::cos(phi), 1e-12);
      EXPECT_NEAR(expectation(Matrix::outer(v), J.Jy), 2.0 * std::sin(th) * std::sin(phi), 1e-12);
    }
}

TEST(CoherentState, ExponentialAgreesWithTaylor) {
  for (double th : {0.3, 1.2, 2.9}) {
    const Matrix g = coherent_generator(th, 0.8);
    EXPECT_LT((g + g.adjoint()).max_abs(), 1e-15);
    EXPECT_LT((expm_antihermitian(g) - taylor_exp(g, 40)).max_abs(), 1e-10);
  }
}

TEST(HusimiQ, ReferenceValues) {
  Matrix top(kDim, kDim);
  top(0, 0) = 1.0;
  EXPECT_NEAR(husimi_q(top, 0.0, 0.0), 1.0 / kPi, 1e-15);
  const Matrix mixed = Matrix::identity(kDim) * cplx(1.0 / 12);
  for (double th : {0.0, 0.9, 2.0}) EXPECT_NEAR(husimi_q(mixed, th, 0.5), 1.0 / (12 * kPi), 1e-15);
}

TEST(HusimiQ, BoundsAndPhiSymmetryOnThermalStates) {
  for (double h : {0.0, 1.0, 2.5})
    for (double T : {0.0, 0.1, 1.0}) {
      const auto g = husimi_grid(thermal_state({{1, 0.05, h}, T}), 19, 12);
      for (std::size_t i = 0; i < g.n_theta; ++i)
        for (std::size_t j = 0; j < g.n_phi; ++j) {
          EXPECT_GE(g.at(i, j), -1e-15);
          EXPECT_LE(g.at(i, j), 1.0 / kPi + 1e-12);
          EXPECT_NEAR(g.at(i, j), g.at(i, 0), 1e-12);
        }
    }
}

TEST(HusimiQ, PeriodicInPhi) {
  const Matrix rho = thermal_state({{1, 0.05, 1.5}, 0.3}).rho;
  EXPECT_NEAR(husimi_q(rho, 1.1, 0.4), husimi_q(rho, 1.1, 0.4 + 2 * kPi), 1e-12);
}

TEST(HusimiGrid, PoleRowIsPhiIndependent) {
  // Use a state that is not Jz-symmetric so that only the pole is degenerate.
  const auto v = coherent_state(1.0, 0.5);
  const auto g = husimi_grid(Matrix::outer(v), 11, 16);
  for (std::size_t j = 1; j < g.n_phi; ++j) {
    EXPECT_NEAR(g.at(0, j), g.at(0, 0), 1e-13);
    EXPECT_NEAR(g.at(g.n_theta - 1, j), g.at(g.n_theta - 1, 0), 1e-13);
  }
  EXPECT_GT(std::abs(g.at(5, 0) - g.at(5, 8)), 1e-3);
}

TEST(HusimiGrid, QuadratureIsQuintetWeight) {
  // integral Q dOmega = (1/pi) (4 pi / 5) Tr(rho P_2).
  const Matrix p2 = quintet_projector();
  EXPECT_NEAR(p2.trace().real(), 5.0, 1e-9);
  const Matrix states[] = {thermal_state({{1, 0.05, 0.0}, 0.5}).rho, thermal_state({{1, 0.05, 2.5}, 0.1}).rho,
                           Matrix::identity(kDim) * cplx(1.0 / 12), Matrix::outer(coherent_state(0.7, 0.2))};
  for (const Matrix& rho : states) {
    const auto m = husimi_moments(husimi_grid(rho, 181, 8));
    EXPECT_NEAR(m.integral, 0.8 * expectation(rho, p2), 1e-4);
  }
  EXPECT_NEAR(husimi_moments(husimi_grid(Matrix::outer(coherent_state(0.7, 0.2)), 181, 64)).integral, 0.8, 1e-4);
}

TEST(HusimiGrid, TransverseShape) {
  const auto squeezed = husimi_moments(husimi_grid(thermal_state({{1, 0.05, 0.0}, 0.1}), 91, 36));
  EXPECT_GT(squeezed.transverse_anisotropy(), 1.0);
  EXPECT_NEAR(squeezed.xy_ratio(), 1.0, 1e-9);
  const auto coherent = husimi_moments(husimi_grid(thermal_state({{1, 0.05, 2.5}, 0.1}), 91, 36));
  EXPECT_NEAR(coherent.xy_ratio(), 1.0, 0.02);
}

TEST(SphereGrid, Layout) {
  const SphereGrid g(5, 4);
  EXPECT_DOUBLE_EQ(g.theta(0), 0.0);
  EXPECT_DOUBLE_EQ(g.theta(4), kPi);
  EXPECT_DOUBLE_EQ(g.phi(2), kPi);
  EXPECT_THROW(SphereGrid(1, 4), ConfigError);
}
