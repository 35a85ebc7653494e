#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "trimer/model.hpp"

using namespace trimer;

namespace {

std::vector<double> sorted(std::array<double, kDim> a) {
  std::vector<double> v(a.begin(), a.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Basis, IndexOrdering) {
  EXPECT_EQ(basis_index(1, 1, 1), 0u);
  EXPECT_EQ(basis_index(1, 1, -1), 1u);
  EXPECT_EQ(basis_index(1, 0, 1), 2u);
  EXPECT_EQ(basis_index(-1, 1, 1), 6u);
  EXPECT_EQ(basis_index(-1, -1, -1), 11u);
}

TEST(Hamiltonian, HermitianAndConservesSz) {
  const Matrix h = build_hamiltonian({1.0, 0.3, 0.7});
  EXPECT_TRUE(h.is_hermitian(0.0));
  const auto& ops = TrimerOperators::get();
  const Matrix sz = ops.site[0].z + ops.site[1].z + ops.site[2].z;
  EXPECT_LT(commutator(h, sz).max_abs(), 1e-14);
}

TEST(Hamiltonian, KnownMatrixElements) {
  const double J = 1.3, D = 0.4, h = 0.9;
  const Matrix H = build_hamiltonian({J, D, h});
  // |up,1,up>: J(1/2 + 1/2) + D - 2h
  EXPECT_NEAR(H(0, 0).real(), J + D - 2 * h, 1e-15);
  // <up,1,dn|H|up,0,up> = J/2 * sqrt2 * 1 (flip on the b-c bond)
  EXPECT_NEAR(H(basis_index(1, 1, -1), basis_index(1, 0, 1)).real(), J / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(build_hamiltonian({0.0, 0.0, 0.0}), ConfigError);
  EXPECT_THROW(build_hamiltonian({1.0, NAN, 0.0}), ConfigError);
}

TEST(Spectrum, ClosedFormMatchesNumeric) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uD(-1, 1), uh(0, 3);
  for (int i = 0; i < 200; ++i) {
    const TrimerParams p{1.0, uD(rng), uh(rng)};
    const auto numeric = eigvals_hermitian(build_hamiltonian(p));
    const auto closed = sorted(closed_energies(p));
    for (std::size_t k = 0; k < kDim; ++k) EXPECT_NEAR(numeric[k], closed[k], 1e-10);
  }
}

TEST(Spectrum, EigenvectorsSatisfyHamiltonian) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uJ(0.2, 3), uD(-2, 2), uh(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const TrimerParams p{uJ(rng), uD(rng), uh(rng)};
    const Matrix H = build_hamiltonian(p);
    const auto spec = spectrum_closed_form(p);
    Matrix overlap(kDim, kDim);
    for (const auto& rec : spec) {
      const auto v = as_complex(rec.vector);
      const auto hv = H * std::span<const cplx>(v);
      for (std::size_t k = 0; k < kDim; ++k) EXPECT_NEAR(std::abs(hv[k] - rec.energy * v[k]), 0.0, 1e-12);
      for (const auto& other : spec) {
        double dot = 0;
        for (std::size_t k = 0; k < kDim; ++k) dot += rec.vector[k] * other.vector[k];
        overlap(rec.index - 1, other.index - 1) = dot;
      }
    }
    EXPECT_LT((overlap - Matrix::identity(kDim)).max_abs(), 1e-12);
  }
}

TEST(Spectrum, TotalSzLabels) {
  const auto& ops = TrimerOperators::get();
  const Matrix sz = ops.site[0].z + ops.site[1].z + ops.site[2].z;
  for (const auto& rec : spectrum_closed_form({1.0, 0.05, 0.3})) {
    const auto v = as_complex(rec.vector);
    const auto w = sz * std::span<const cplx>(v);
    for (std::size_t k = 0; k < kDim; ++k) EXPECT_NEAR(w[k].real(), rec.total_sz * v[k].real(), 1e-14);
  }
}

TEST(Amplitudes, IsotropicLimit) {
  const AmplitudeSet s = amplitudes(1.0, 0.0);
  EXPECT_NEAR(std::abs(s.e), 1.0 / std::sqrt(6.0), 1e-14);
  EXPECT_NEAR(std::abs(s.f), 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_LT(s.e * s.f, 0.0);
}

TEST(Phases, BoundariesAtZeroAnisotropy) {
  EXPECT_NEAR(boundary_singlet_to_half(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(boundary_half_to_saturated(1, 0), 2.0, 1e-15);
  EXPECT_NEAR(boundary_singlet_to_half(1, 0.05), 0.991540424, 1e-9);
  EXPECT_NEAR(boundary_half_to_saturated(1, 0.05), 2.025312451, 1e-9);
}

TEST(Phases, BoundariesAreLevelCrossings) {
  for (double D : {-0.8, 0.0, 0.05, 0.5, 1.0, 2.0}) {
    const double h1 = boundary_singlet_to_half(1, D), h2 = boundary_half_to_saturated(1, D);
    const auto e1 = closed_energies({1, D, h1});
    const auto e2 = closed_energies({1, D, h2});
    EXPECT_NEAR(e1[8], e1[4], 1e-12);
    EXPECT_NEAR(e2[4], e2[10], 1e-12);
  }
}

TEST(Phases, GroundStateMatchesNumericMinimum) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uD(-1, 2), uh(-4, 4);
  for (int i = 0; i < 500; ++i) {
    const TrimerParams p{1.0, uD(rng), uh(rng)};
    const GroundStatePhase gs = ground_state(p);
    if (gs.boundary()) continue;
    const auto e = closed_energies(p);
    const std::size_t argmin = std::min_element(e.begin(), e.end()) - e.begin();
    EXPECT_EQ(static_cast<int>(argmin) + 1, phase_eigen_index(gs.phase)) << "D=" << p.D << " h=" << p.h;
  }
}

TEST(Phases, LabelsAndBoundaries) {
  EXPECT_EQ(ground_state({1, 0, 0.5}).label(), "Psi9");
  EXPECT_EQ(ground_state({1, 0, 1.5}).label(), "Psi5");
  EXPECT_EQ(ground_state({1, 0, 2.5}).label(), "Psi11");
  EXPECT_EQ(ground_state({1, 0, 1.0}).label(), "Boundary(Psi9,Psi5)");
  EXPECT_EQ(ground_state({1, 0, 2.0}).label(), "Boundary(Psi5,Psi11)");
  EXPECT_EQ(ground_state({1, 0, -1.5}).label(), "Psi7");
  EXPECT_EQ(ground_state({1, 0, -2.5}).label(), "Psi12");
}

TEST(Phases, ZeroTemperatureMagnetization) {
  EXPECT_DOUBLE_EQ(zero_T_magnetization({1, 0, 0.3}).fraction, 0.0);
  EXPECT_DOUBLE_EQ(zero_T_magnetization({1, 0, 1.5}).fraction, 0.5);
  EXPECT_DOUBLE_EQ(zero_T_magnetization({1, 0, 3.0}).fraction, 1.0);
  const auto b = zero_T_magnetization({1, 0, 2.0});
  EXPECT_TRUE(b.degenerate);
  EXPECT_DOUBLE_EQ(b.fraction, 0.75);
  EXPECT_DOUBLE_EQ(zero_T_magnetization({1, 0, -3.0}).fraction, -1.0);
}
