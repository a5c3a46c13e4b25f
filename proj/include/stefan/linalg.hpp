#pragma once

// Minimal dense linear algebra for the inversion pipeline: row-major storage,
// plain and transposed products, a power-iteration estimate of the spectral
// norm, and a Cholesky solver for symmetric positive definite systems.
// Problem sizes stay in the low hundreds, so nothing here is blocked or
// parallel.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "stefan/errors.hpp"
#include "stefan/random.hpp"

namespace stefan {

using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dot: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double norm2(const Vector& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

inline double norm_inf(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Vector matvec(const DenseMatrix& A, const Vector& x) {
  if (x.size() != A.cols())
    throw std::invalid_argument("matvec: dimension mismatch");
  Vector y(A.rows(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const auto row = A.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) sum += row[j] * x[j];
    y[i] = sum;
  }
  return y;
}

/// A^T y without materializing the transpose.
inline Vector transpose_matvec(const DenseMatrix& A, const Vector& y) {
  if (y.size() != A.rows())
    throw std::invalid_argument("transpose_matvec: dimension mismatch");
  Vector x(A.cols(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const auto row = A.row(i);
    const double yi = y[i];
    for (std::size_t j = 0; j < row.size(); ++j) x[j] += row[j] * yi;
  }
  return x;
}

/// A^T A + ridge*I, the symmetric system behind the Tikhonov step.
inline DenseMatrix gram_matrix(const DenseMatrix& A, double ridge = 0.0) {
  const std::size_t n = A.cols();
  DenseMatrix S(n, n);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const auto row = A.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double aij = row[j];
      if (aij == 0.0) continue;
      for (std::size_t k = j; k < n; ++k) S(j, k) += aij * row[k];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) S(j, k) = S(k, j);
    S(j, j) += ridge;
  }
  return S;
}

/// Largest singular value estimated by power iteration on A^T A from a seeded
/// random start.  The returned Rayleigh-quotient value never exceeds the true
/// norm, so callers that need lambda*||A||^2 < 1 shrink it themselves.
inline double spectral_norm(const DenseMatrix& A, int iters = 100,
                            std::uint64_t seed = 0) {
  if (iters < 1) throw std::invalid_argument("spectral_norm: iters >= 1");
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  std::mt19937_64 engine(seed);
  Vector v(A.cols());
  for (double& x : v) x = uniform_unit(engine) - 0.5;
  double nv = norm2(v);
  if (nv == 0.0) v[0] = nv = 1.0;
  for (double& x : v) x /= nv;

  double sigma = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vector av = matvec(A, v);
    sigma = norm2(av);  // ||A v||, v unit
    if (sigma == 0.0) return 0.0;
    Vector w = transpose_matvec(A, av);
    const double nw = norm2(w);
    if (nw == 0.0) return sigma;
    for (std::size_t j = 0; j < w.size(); ++j) v[j] = w[j] / nw;
  }
  return sigma;
}

/// Cholesky factorization of an SPD matrix, reusable across solves.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const DenseMatrix& S) : L_(S.rows(), S.cols()) {
    if (S.rows() != S.cols())
      throw std::invalid_argument("CholeskyFactor: matrix not square");
    const std::size_t n = S.rows();
    for (std::size_t j = 0; j < n; ++j) {
      double diag = S(j, j);
      for (std::size_t k = 0; k < j; ++k) diag -= L_(j, k) * L_(j, k);
      if (!(diag > 0.0))
        throw numerical_error(
            "CholeskyFactor: non-positive pivot (matrix not SPD)");
      const double ljj = std::sqrt(diag);
      L_(j, j) = ljj;
      for (std::size_t i = j + 1; i < n; ++i) {
        double sum = S(i, j);
        for (std::size_t k = 0; k < j; ++k) sum -= L_(i, k) * L_(j, k);
        L_(i, j) = sum / ljj;
      }
    }
  }

  std::size_t size() const { return L_.rows(); }

  Vector solve(const Vector& rhs) const {
    const std::size_t n = size();
    if (rhs.size() != n)
      throw std::invalid_argument("CholeskyFactor::solve: dimension mismatch");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = rhs[i];
      for (std::size_t k = 0; k < i; ++k) sum -= L_(i, k) * y[k];
      y[i] = sum / L_(i, i);
    }
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      double sum = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) sum -= L_(k, ii) * x[k];
      x[ii] = sum / L_(ii, ii);
    }
    return x;
  }

 private:
  DenseMatrix L_;
};

inline Vector solve_spd(const DenseMatrix& S, const Vector& rhs) {
  return CholeskyFactor(S).solve(rhs);
}

}  // namespace stefan
