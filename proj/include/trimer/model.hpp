#pragma once

// Mixed spin-(1/2, 1, 1/2) Heisenberg trimer
//
//   H = J (s_a . S_b + S_b . s_c) + D (S_b^z)^2 - h (s_a^z + S_b^z + s_c^z)
//
// with h = g mu_B B. Basis |s_a^z, S_b^z, s_c^z>, site a slowest, site c
// fastest; spin-1/2 ordered (up, down), spin-1 ordered (+1, 0, -1). The flat
// index of a basis state is therefore 6 a + 2 b + c, and every matrix
// element quoted as rho_{i,j} (1-based) refers to this ordering.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "trimer/errors.hpp"
#include "trimer/linalg.hpp"

namespace trimer {

inline constexpr std::size_t kDim = 12;

inline SiteDims trimer_dims() { return SiteDims{2, 3, 2}; }

// Flat index for spins given as 2 s_a^z, S_b^z, 2 s_c^z.
constexpr std::size_t basis_index(int two_sa, int sb, int two_sc) {
  const std::size_t a = two_sa > 0 ? 0 : 1;
  const std::size_t b = static_cast<std::size_t>(1 - sb);
  const std::size_t c = two_sc > 0 ? 0 : 1;
  return 6 * a + 2 * b + c;
}

struct TrimerParams {
  double J = 1.0;  // exchange, antiferromagnetic
  double D = 0.0;  // single-ion anisotropy of the spin-1 site
  double h = 0.0;  // Zeeman energy g mu_B B

  void validate() const {
    if (!std::isfinite(J) || !(J > 0.0)) throw ConfigError("TrimerParams: J must be finite and positive");
    if (!std::isfinite(D) || !std::isfinite(h)) throw ConfigError("TrimerParams: D and h must be finite");
  }
};

// One-site operators embedded in the 12-dimensional trimer space.
struct TrimerOperators {
  std::array<SpinOperators, 3> site;

  static const TrimerOperators& get() {
    static const TrimerOperators ops = build();
    return ops;
  }

private:
  static TrimerOperators build() {
    const SpinOperators half = spin_operators(1);
    const SpinOperators one = spin_operators(2);
    const Matrix i2 = Matrix::identity(2);
    const Matrix i3 = Matrix::identity(3);
    auto on_a = [&](const Matrix& m) { return kron(kron(m, i3), i2); };
    auto on_b = [&](const Matrix& m) { return kron(kron(i2, m), i2); };
    auto on_c = [&](const Matrix& m) { return kron(kron(i2, i3), m); };
    TrimerOperators t;
    t.site[0] = {on_a(half.x), on_a(half.y), on_a(half.z)};
    t.site[1] = {on_b(one.x), on_b(one.y), on_b(one.z)};
    t.site[2] = {on_c(half.x), on_c(half.y), on_c(half.z)};
    return t;
  }
};

inline Matrix build_hamiltonian(const TrimerParams& p) {
  p.validate();
  const auto& ops = TrimerOperators::get();
  const auto& a = ops.site[0];
  const auto& b = ops.site[1];
  const auto& c = ops.site[2];
  Matrix h = p.J * (a.x * b.x + a.y * b.y + a.z * b.z + b.x * c.x + b.y * c.y + b.z * c.z);
  h += p.D * (b.z * b.z);
  h -= p.h * (a.z + b.z + c.z);
  return h;
}

// Probability amplitudes of the eigenvectors. g_amp and h_amp are the two
// amplitudes of psi_10, renamed to avoid clashing with the g-factor and the
// Zeeman energy.
struct AmplitudeSet {
  double a, b, c, d, e, f, g_amp, h_amp;
};

inline AmplitudeSet amplitudes(double J, double D) {
  const double q = std::sqrt(J * J + 0.25 * D * D);
  const double em = 0.5 * D - q;
  const double ep = 0.5 * D + q;
  const double r = std::sqrt(2.0 * J * J + 0.25 * (D - J) * (D - J));
  const double mm = 0.5 * (D - J) - r;
  const double mp = 0.5 * (D - J) + r;
  AmplitudeSet s{};
  s.a = em / std::sqrt(2.0 * J * J + 2.0 * em * em);
  s.b = J / std::sqrt(J * J + em * em);
  s.c = ep / std::sqrt(2.0 * J * J + 2.0 * ep * ep);
  s.d = J / std::sqrt(J * J + ep * ep);
  s.e = J / std::sqrt(2.0 * J * J + mm * mm);
  s.f = mm / std::sqrt(4.0 * J * J + 2.0 * mm * mm);
  s.g_amp = J / std::sqrt(2.0 * J * J + mp * mp);
  s.h_amp = mp / std::sqrt(4.0 * J * J + 2.0 * mp * mp);
  return s;
}

// The twelve closed-form eigenenergies, index i = 1..12 stored at [i-1].
inline std::array<double, kDim> closed_energies(const TrimerParams& p) {
  const double J = p.J, D = p.D, h = p.h;
  const double w1 = std::sqrt(D * D + 4.0 * J * J);
  const double half_dj = 0.5 * (D - J);
  const double w2 = std::sqrt(half_dj * half_dj + 2.0 * J * J);
  return {0.0,
          D - J,
          D - h,
          D + h,
          0.5 * D - h - 0.5 * w1,
          0.5 * D - h + 0.5 * w1,
          0.5 * D + h - 0.5 * w1,
          0.5 * D + h + 0.5 * w1,
          half_dj - w2,
          half_dj + w2,
          D + J - 2.0 * h,
          D + J + 2.0 * h};
}

// Total S^z of each closed-form eigenvector, same indexing.
inline constexpr std::array<int, kDim> kTotalSz = {0, 0, 1, -1, 1, 1, -1, -1, 0, 0, 2, -2};

struct EigenRecord {
  int index;  // 1..12
  double energy;
  int total_sz;
  std::array<double, kDim> vector;
};

using SpectralDecomposition = std::array<EigenRecord, kDim>;

inline SpectralDecomposition spectrum_closed_form(const TrimerParams& p) {
  p.validate();
  const AmplitudeSet amp = amplitudes(p.J, p.D);
  const auto energies = closed_energies(p);
  const double r2 = 1.0 / std::sqrt(2.0);
  constexpr int up = 1, dn = -1;
  auto idx = basis_index;

  SpectralDecomposition out{};
  for (std::size_t k = 0; k < kDim; ++k) {
    out[k].index = static_cast<int>(k) + 1;
    out[k].energy = energies[k];
    out[k].total_sz = kTotalSz[k];
    out[k].vector.fill(0.0);
  }
  auto set = [&](int i, std::size_t basis, double amp_value) { out[i - 1].vector[basis] = amp_value; };

  set(1, idx(dn, 0, up), r2);
  set(1, idx(up, 0, dn), -r2);
  set(2, idx(dn, 1, dn), r2);
  set(2, idx(up, -1, up), -r2);
  set(3, idx(dn, 1, up), r2);
  set(3, idx(up, 1, dn), -r2);
  set(4, idx(dn, -1, up), r2);
  set(4, idx(up, -1, dn), -r2);

  set(5, idx(up, 1, dn), amp.a);
  set(5, idx(dn, 1, up), amp.a);
  set(5, idx(up, 0, up), amp.b);
  set(6, idx(up, 1, dn), amp.c);
  set(6, idx(dn, 1, up), amp.c);
  set(6, idx(up, 0, up), amp.d);
  set(7, idx(up, -1, dn), amp.a);
  set(7, idx(dn, -1, up), amp.a);
  set(7, idx(dn, 0, dn), amp.b);
  set(8, idx(up, -1, dn), amp.c);
  set(8, idx(dn, -1, up), amp.c);
  set(8, idx(dn, 0, dn), amp.d);

  set(9, idx(up, 0, dn), amp.e);
  set(9, idx(dn, 0, up), amp.e);
  set(9, idx(up, -1, up), amp.f);
  set(9, idx(dn, 1, dn), amp.f);
  set(10, idx(up, 0, dn), amp.g_amp);
  set(10, idx(dn, 0, up), amp.g_amp);
  set(10, idx(up, -1, up), amp.h_amp);
  set(10, idx(dn, 1, dn), amp.h_amp);

  set(11, idx(up, 1, up), 1.0);
  set(12, idx(dn, -1, dn), 1.0);
  return out;
}

inline std::vector<cplx> as_complex(const std::array<double, kDim>& v) { return {v.begin(), v.end()}; }

// ---------------------------------------------------------------------------
// Ground state

enum class Phase { Psi9, Psi5, Psi11, Psi7, Psi12 };

inline int phase_eigen_index(Phase ph) {
  switch (ph) {
    case Phase::Psi9: return 9;
    case Phase::Psi5: return 5;
    case Phase::Psi11: return 11;
    case Phase::Psi7: return 7;
    case Phase::Psi12: return 12;
  }
  return 0;
}

inline const char* phase_name(Phase ph) {
  switch (ph) {
    case Phase::Psi9: return "Psi9";
    case Phase::Psi5: return "Psi5";
    case Phase::Psi11: return "Psi11";
    case Phase::Psi7: return "Psi7";
    case Phase::Psi12: return "Psi12";
  }
  return "?";
}

// Plateau value of M / M_s in each phase (M_s = 2 g mu_B).
inline double phase_magnetization(Phase ph) { return 0.5 * kTotalSz[phase_eigen_index(ph) - 1]; }

// Either a single phase, or (on a boundary) the lower- and higher-field pair.
struct GroundStatePhase {
  Phase phase;
  std::optional<Phase> other;

  bool boundary() const { return other.has_value(); }

  std::string label() const {
    if (!other) return phase_name(phase);
    return std::string("Boundary(") + phase_name(phase) + "," + phase_name(*other) + ")";
  }

  friend bool operator==(const GroundStatePhase&, const GroundStatePhase&) = default;
};

// Field of the Psi9 -> Psi5 transition.
inline double boundary_singlet_to_half(double J, double D) {
  return 0.5 * J + 0.5 * (std::sqrt((D - J) * (D - J) + 8.0 * J * J) - std::sqrt(D * D + 4.0 * J * J));
}

// Field of the Psi5 -> Psi11 transition.
inline double boundary_half_to_saturated(double J, double D) {
  return J + 0.5 * D + 0.5 * std::sqrt(D * D + 4.0 * J * J);
}

inline constexpr double kBoundaryTolerance = 1e-12;

inline GroundStatePhase ground_state(const TrimerParams& p) {
  p.validate();
  const double field = std::abs(p.h);
  const bool reversed = p.h < 0.0;
  const Phase half = reversed ? Phase::Psi7 : Phase::Psi5;
  const Phase saturated = reversed ? Phase::Psi12 : Phase::Psi11;
  const double h1 = boundary_singlet_to_half(p.J, p.D);
  const double h2 = boundary_half_to_saturated(p.J, p.D);
  const double tol = kBoundaryTolerance * p.J;

  if (std::abs(field - h1) <= tol) return {Phase::Psi9, half};
  if (std::abs(field - h2) <= tol) return {half, saturated};
  if (field < h1) return {Phase::Psi9, std::nullopt};
  if (field < h2) return {half, std::nullopt};
  return {saturated, std::nullopt};
}

struct ZeroTMagnetization {
  double fraction;  // M / M_s, equal-weight average on a boundary
  bool degenerate;
};

inline ZeroTMagnetization zero_T_magnetization(const TrimerParams& p) {
  const GroundStatePhase gs = ground_state(p);
  if (!gs.boundary()) return {phase_magnetization(gs.phase), false};
  return {0.5 * (phase_magnetization(gs.phase) + phase_magnetization(*gs.other)), true};
}

}  // namespace trimer
