#pragma once

#include <cmath>

#include "trimer/entanglement.hpp"
#include "trimer/linalg.hpp"
#include "trimer/thermo.hpp"

namespace trimer {

// Sum of moduli of the off-diagonal entries, in the fixed product basis.
inline double l1_coherence(const Matrix& m) {
  m.require_square("l1_coherence");
  double c = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) c += std::abs(m(i, j));
  return c;
}

struct CoherenceReport {
  double C_abc = 0.0, C_ab = 0.0, C_ac = 0.0;
};

inline CoherenceReport coherence_report(const Matrix& rho) {
  return {l1_coherence(rho), l1_coherence(reduced_ab(rho)), l1_coherence(reduced_ac(rho))};
}

inline CoherenceReport coherence_report(const ThermalState& st) { return coherence_report(st.rho); }

}  // namespace trimer
