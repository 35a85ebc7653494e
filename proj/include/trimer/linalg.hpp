#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trimer {

using cplx = std::complex<double>;

class LinalgError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Dense row-major complex matrix. Every object in this library is at most
// 12x12, so no attempt is made at blocking or vectorisation.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static Matrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw LinalgError("from_rows: ragged initializer");
      std::size_t j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  // Rank-one projector |v><v|.
  static Matrix outer(std::span<const cplx> v) {
    Matrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> data() const { return data_; }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  cplx trace() const {
    require_square("trace");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw LinalgError("matrix product: inner dimensions differ");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend std::vector<cplx> operator*(const Matrix& a, std::span<const cplx> v) {
    if (a.cols_ != v.size()) throw LinalgError("matrix-vector product: dimension mismatch");
    std::vector<cplx> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  // Largest entrywise modulus.
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  bool is_hermitian(double tol = 1e-12) const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

  void require_square(const char* what) const {
    if (!square()) throw LinalgError(std::string(what) + ": matrix is not square");
  }
  void require_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw LinalgError(std::string(what) + ": shape mismatch");
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

// Re Tr(rho * op), the expectation value for Hermitian op.
inline double expectation(const Matrix& rho, const Matrix& op) {
  if (!rho.square() || rho.rows() != op.rows() || op.cols() != rho.cols())
    throw LinalgError("expectation: shape mismatch");
  const std::size_t n = rho.rows();
  cplx s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) s += rho(i, k) * op(k, i);
  return s.real();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

// ---------------------------------------------------------------------------
// Spin matrices

struct SpinOperators {
  Matrix x, y, z;
};

// Standard angular-momentum matrices in the basis m = s, s-1, ..., -s.
// Only s = 1/2 and s = 1 are needed for the trimer; the argument is 2s.
inline SpinOperators spin_operators(int two_s) {
  if (two_s != 1 && two_s != 2) throw LinalgError("spin_operators: only s = 1/2 and s = 1 are supported");
  const std::size_t dim = static_cast<std::size_t>(two_s) + 1;
  const double s = 0.5 * two_s;
  SpinOperators ops{Matrix(dim, dim), Matrix(dim, dim), Matrix(dim, dim)};
  const cplx i_unit(0.0, 1.0);
  for (std::size_t k = 0; k < dim; ++k) {
    const double m = s - static_cast<double>(k);
    ops.z(k, k) = m;
    if (k + 1 < dim) {
      // <m|S+|m-1> = sqrt(s(s+1) - m(m-1))
      const double c = std::sqrt(s * (s + 1) - m * (m - 1));
      ops.x(k, k + 1) = 0.5 * c;
      ops.x(k + 1, k) = 0.5 * c;
      ops.y(k, k + 1) = -0.5 * i_unit * c;
      ops.y(k + 1, k) = 0.5 * i_unit * c;
    }
  }
  return ops;
}

// ---------------------------------------------------------------------------
// Multipartite structure

class SiteDims {
public:
  SiteDims(std::initializer_list<std::size_t> dims) : dims_(dims) { validate(); }
  explicit SiteDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) { validate(); }

  std::size_t size() const { return dims_.size(); }
  std::size_t operator[](std::size_t site) const { return dims_.at(site); }
  std::size_t total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>{});
  }
  const std::vector<std::size_t>& dims() const { return dims_; }

  // Mixed-radix digits of a flat index, first site slowest.
  std::vector<std::size_t> digits(std::size_t index) const {
    std::vector<std::size_t> d(dims_.size());
    for (std::size_t s = dims_.size(); s-- > 0;) {
      d[s] = index % dims_[s];
      index /= dims_[s];
    }
    return d;
  }

  std::size_t flat(std::span<const std::size_t> digits) const {
    std::size_t idx = 0;
    for (std::size_t s = 0; s < dims_.size(); ++s) idx = idx * dims_[s] + digits[s];
    return idx;
  }

private:
  void validate() const {
    if (dims_.empty()) throw LinalgError("SiteDims: no sites");
    for (auto d : dims_)
      if (d == 0) throw LinalgError("SiteDims: zero local dimension");
  }

  std::vector<std::size_t> dims_;
};

inline void require_layout(const Matrix& m, const SiteDims& dims, const char* what) {
  if (!m.square() || m.rows() != dims.total())
    throw LinalgError(std::string(what) + ": matrix dimension does not match site dimensions");
}

// Trace out every site not listed in `keep`. The kept sites retain their
// relative order.
inline Matrix partial_trace(const Matrix& m, const SiteDims& dims, std::vector<std::size_t> keep) {
  require_layout(m, dims, "partial_trace");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (auto s : keep)
    if (s >= dims.size()) throw LinalgError("partial_trace: site index out of range");

  std::vector<std::size_t> kept_dims;
  for (auto s : keep) kept_dims.push_back(dims[s]);
  if (kept_dims.empty()) {
    Matrix scalar(1, 1);
    scalar(0, 0) = m.trace();
    return scalar;
  }
  const SiteDims out_dims(kept_dims);
  Matrix out(out_dims.total(), out_dims.total());

  const std::size_t n = dims.total();
  std::vector<std::size_t> kd(keep.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = dims.digits(i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = dims.digits(j);
      bool traced_diagonal = true;
      for (std::size_t s = 0; s < dims.size() && traced_diagonal; ++s)
        if (!std::binary_search(keep.begin(), keep.end(), s) && di[s] != dj[s]) traced_diagonal = false;
      if (!traced_diagonal) continue;
      for (std::size_t k = 0; k < keep.size(); ++k) kd[k] = di[keep[k]];
      const std::size_t r = out_dims.flat(kd);
      for (std::size_t k = 0; k < keep.size(); ++k) kd[k] = dj[keep[k]];
      const std::size_t c = out_dims.flat(kd);
      out(r, c) += m(i, j);
    }
  }
  return out;
}

// Transpose the indices of one site, leaving the others untouched.
inline Matrix partial_transpose(const Matrix& m, const SiteDims& dims, std::size_t site) {
  require_layout(m, dims, "partial_transpose");
  if (site >= dims.size()) throw LinalgError("partial_transpose: site index out of range");
  const std::size_t n = dims.total();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto di = dims.digits(i);
    for (std::size_t j = 0; j < n; ++j) {
      auto dj = dims.digits(j);
      std::swap(di[site], dj[site]);
      out(dims.flat(di), dims.flat(dj)) = m(i, j);
      std::swap(di[site], dj[site]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector of values[k]

  std::vector<cplx> vector(std::size_t k) const {
    std::vector<cplx> v(vectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
    return v;
  }
};

// Cyclic Jacobi for complex Hermitian matrices. Each rotation first removes
// the phase of the pivot, then applies a real Givens rotation.
inline EigenSystem eig_hermitian(const Matrix& input, double hermitian_tol = 1e-12) {
  if (!input.square()) throw LinalgError("eig_hermitian: matrix is not square");
  const double scale = std::max(1.0, input.max_abs());
  if (!input.is_hermitian(hermitian_tol * scale)) throw LinalgError("eig_hermitian: matrix is not Hermitian");

  const std::size_t n = input.rows();
  Matrix a = input;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  Matrix v = Matrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  const double target = 1e-16 * std::max(input.frobenius_norm(), 1e-300);
  constexpr int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const cplx phase = apq / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const cplx upp = c, upq = s;
        const cplx uqp = -s * std::conj(phase), uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A U
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U^dagger A
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // V <- V U
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem es{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  return es;
}

inline std::vector<double> eigvals_hermitian(const Matrix& m) { return eig_hermitian(m).values; }

// exp(G) for anti-Hermitian G: with iG = V L V^dagger, exp(G) = V e^{-iL} V^dagger.
inline Matrix expm_antihermitian(const Matrix& g) {
  const Matrix herm = g * cplx(0.0, 1.0);
  const EigenSystem es = eig_hermitian(herm, 1e-10);
  const std::size_t n = g.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx w = std::exp(cplx(0.0, -es.values[k]));
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = es.vectors(i, k) * w;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(es.vectors(j, k));
    }
  }
  return out;
}

// Negativity sum over eigenvalues: sum (|l| - l) / 2.
inline double negative_part(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) s += 0.5 * (std::abs(l) - l);
  return s;
}

}  // namespace trimer
