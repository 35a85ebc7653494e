#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "trimer/linalg.hpp"

using namespace trimer;

namespace {

Matrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = cplx(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

Matrix taylor_exp(const Matrix& g, int terms = 20) {
  Matrix out = Matrix::identity(g.rows());
  Matrix term = Matrix::identity(g.rows());
  for (int k = 1; k < terms; ++k) {
    term = term * g * cplx(1.0 / k);
    out += term;
  }
  return out;
}

}  // namespace

TEST(SpinOperators, CommutationRelations) {
  for (int two_s : {1, 2}) {
    const auto s = spin_operators(two_s);
    EXPECT_LT((commutator(s.x, s.y) - cplx(0, 1) * s.z).max_abs(), 1e-14);
    EXPECT_LT((commutator(s.y, s.z) - cplx(0, 1) * s.x).max_abs(), 1e-14);
    const double ss = 0.5 * two_s * (0.5 * two_s + 1);
    const Matrix casimir = s.x * s.x + s.y * s.y + s.z * s.z;
    EXPECT_LT((casimir - Matrix::identity(two_s + 1) * cplx(ss)).max_abs(), 1e-14);
  }
  EXPECT_THROW(spin_operators(3), LinalgError);
}

TEST(Kron, IndexConvention) {
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix b = Matrix::from_rows({{0, 5}, {6, 7}});
  const Matrix k = kron(a, b);
  EXPECT_EQ(k(0, 1), cplx(5));
  EXPECT_EQ(k(1, 2), cplx(12));
  EXPECT_EQ(k(3, 3), cplx(28));
}

TEST(PartialTrace, ProductStateFactorises) {
  const Matrix ra = Matrix::from_rows({{0.7, cplx(0.1, 0.2)}, {cplx(0.1, -0.2), 0.3}});
  const Matrix rb = Matrix::diagonal({0.5, 0.3, 0.2});
  const Matrix rc = Matrix::from_rows({{0.4, 0.1}, {0.1, 0.6}});
  const Matrix rho = kron(kron(ra, rb), rc);
  const SiteDims dims{2, 3, 2};
  EXPECT_LT((partial_trace(rho, dims, {0, 1}) - kron(ra, rb)).max_abs(), 1e-15);
  EXPECT_LT((partial_trace(rho, dims, {0, 2}) - kron(ra, rc)).max_abs(), 1e-15);
  EXPECT_LT((partial_trace(rho, dims, {1, 2}) - kron(rb, rc)).max_abs(), 1e-15);
  EXPECT_LT((partial_trace(rho, dims, {1}) - rb).max_abs(), 1e-15);
  EXPECT_NEAR(partial_trace(rho, dims, {})(0, 0).real(), 1.0, 1e-15);
}

TEST(PartialTrace, MatchesExplicitSum) {
  std::mt19937_64 rng(7);
  const Matrix m = random_hermitian(12, rng);
  const Matrix ac = partial_trace(m, SiteDims{2, 3, 2}, {0, 2});
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2) {
          cplx s = 0;
          for (int b = 0; b < 3; ++b) s += m(6 * a + 2 * b + c, 6 * a2 + 2 * b + c2);
          EXPECT_LT(std::abs(ac(2 * a + c, 2 * a2 + c2) - s), 1e-14);
        }
}

TEST(PartialTranspose, InvolutionAndElementMap) {
  std::mt19937_64 rng(11);
  const Matrix m = random_hermitian(12, rng);
  const SiteDims dims{2, 3, 2};
  for (std::size_t site = 0; site < 3; ++site) {
    const Matrix t = partial_transpose(m, dims, site);
    EXPECT_EQ((partial_transpose(t, dims, site) - m).max_abs(), 0.0);
    EXPECT_TRUE(t.is_hermitian());
  }
  // Transposing site b swaps the middle digits only.
  const Matrix tb = partial_transpose(m, dims, 1);
  EXPECT_EQ(tb(6 * 0 + 2 * 0 + 1, 6 * 1 + 2 * 2 + 0), m(6 * 0 + 2 * 2 + 1, 6 * 1 + 2 * 0 + 0));
  // Full transpose = transpose of every site.
  Matrix all = m;
  for (std::size_t s = 0; s < 3; ++s) all = partial_transpose(all, dims, s);
  EXPECT_EQ((all - m.transpose()).max_abs(), 0.0);
}

TEST(Layout, Errors) {
  EXPECT_THROW(partial_trace(Matrix(5, 5), SiteDims{2, 3}, {0}), LinalgError);
  EXPECT_THROW(partial_transpose(Matrix(6, 6), SiteDims{2, 3}, 2), LinalgError);
  EXPECT_THROW(SiteDims({2, 0}), LinalgError);
}

TEST(EigHermitian, ResidualOrthonormality) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 4u, 6u, 12u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix m = random_hermitian(n, rng);
      const EigenSystem es = eig_hermitian(m);
      ASSERT_TRUE(std::is_sorted(es.values.begin(), es.values.end()));
      const Matrix v = es.vectors;
      EXPECT_LT((v.adjoint() * v - Matrix::identity(n)).max_abs(), 1e-12);
      const Matrix av = m * v;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(av(i, k) - es.values[k] * v(i, k)), 1e-11);
      double tr = 0;
      for (double l : es.values) tr += l;
      EXPECT_NEAR(tr, m.trace().real(), 1e-11);
    }
  }
}

TEST(EigHermitian, DegenerateSpectrum) {
  const auto s = spin_operators(2);
  const Matrix m = s.x * s.x + s.y * s.y;  // eigenvalues 1, 1, 2
  const auto ev = eigvals_hermitian(m);
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], 1.0, 1e-14);
  EXPECT_NEAR(ev[2], 2.0, 1e-14);
}

TEST(EigHermitian, RejectsNonHermitian) {
  EXPECT_THROW(eig_hermitian(Matrix::from_rows({{0, 1}, {0, 0}})), LinalgError);
  EXPECT_THROW(eig_hermitian(Matrix(2, 3)), LinalgError);
}

TEST(Expm, AgreesWithTaylorSeries) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix h = random_hermitian(12, rng);
    h = h * cplx(0.4 / h.frobenius_norm());
    const Matrix g = h * cplx(0, 1);  // anti-Hermitian
    const Matrix u = expm_antihermitian(g);
    EXPECT_LT((u - taylor_exp(g)).max_abs(), 1e-10);
    EXPECT_LT((u.adjoint() * u - Matrix::identity(12)).max_abs(), 1e-12);
  }
}

TEST(NegativePart, SumsNegativeMagnitudes) {
  const std::vector<double> ev{-0.25, 0.5, -0.125, 0.875};
  EXPECT_DOUBLE_EQ(negative_part(ev), 0.375);
}
