#pragma once

// Small dense linear algebra. Every matrix in this library is at most a few
// dozen rows, so nothing here is blocked or pivot-tuned beyond partial pivoting.

#include <cstddef>
#include <span>
#include <vector>

namespace carnot::linalg {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  // Columns given as vectors of equal length.
  static Matrix from_columns(const std::vector<std::vector<double>>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  std::vector<double> operator*(std::span<const double> v) const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Partial-pivot LU. Throws Error(Singular) when a pivot falls below tol * scale.
std::vector<double> solve(const Matrix& a, std::span<const double> b, double tol = 1e-14);
Matrix inverse(const Matrix& a, double tol = 1e-14);
double determinant(const Matrix& a);

// Rank of a set of vectors (rows) by Gaussian elimination with relative tolerance.
std::size_t rank(const std::vector<std::vector<double>>& rows, double tol = 1e-10);

// Minimum Euclidean norm x with m x = b, via x = m^T (m m^T)^{-1} b.
// Throws Error(NotSurjective) when m m^T is singular.
std::vector<double> min_norm_solve(const Matrix& m, std::span<const double> b);

struct SymmetricEigen {
  std::vector<double> values;          // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below tol.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-12, int max_sweeps = 100);

struct SmallestEigen {
  double value;
  std::vector<double> vector;
};

// Closed form for 2x2, Jacobi otherwise. The eigenvector is unit length with
// its first non-negligible component positive.
SmallestEigen smallest_eigen(const Matrix& a);

// Smallest singular value of an m x n matrix (m may be below n) with its right
// singular vector, by one-sided Jacobi. The value is accurate to eps * |a|
// rather than sqrt(eps) as through the eigenvalues of a^T a.
SmallestEigen smallest_singular(const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

}  // namespace carnot::linalg
