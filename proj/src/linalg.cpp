#include "carnot/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "carnot/errors.hpp"

namespace carnot::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require(columns[j].size() == rows, ErrorKind::DimensionMismatch, "ragged column list");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
  require(cols_ == other.rows_, ErrorKind::DimensionMismatch, "matrix product shape");
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

std::vector<double> Matrix::operator*(std::span<const double> v) const {
  require(v.size() == cols_, ErrorKind::DimensionMismatch, "matrix-vector shape");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

namespace {

struct Lu {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

Lu decompose(const Matrix& a, double tol) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "LU needs a square matrix");
  const std::size_t n = a.rows();
  Lu out{a, std::vector<std::size_t>(n), 1, false};
  std::iota(out.perm.begin(), out.perm.end(), 0);
  const double scale = std::max(a.max_abs(), 1e-300);
  Matrix& m = out.lu;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(m(i, col)) > std::abs(m(pivot, col))) pivot = i;
    if (std::abs(m(pivot, col)) <= tol * scale) {
      out.singular = true;
      return out;
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(pivot, j));
      std::swap(out.perm[col], out.perm[pivot]);
      out.sign = -out.sign;
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = m(i, col) / m(col, col);
      m(i, col) = f;
      for (std::size_t j = col + 1; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return out;
}

std::vector<double> lu_solve(const Lu& d, std::span<const double> b) {
  const std::size_t n = d.lu.rows();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[d.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= d.lu(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= d.lu(i, j) * x[j];
    x[i] /= d.lu(i, i);
  }
  return x;
}

}  // namespace

std::vector<double> solve(const Matrix& a, std::span<const double> b, double tol) {
  require(b.size() == a.rows(), ErrorKind::DimensionMismatch, "solve: rhs length");
  const Lu d = decompose(a, tol);
  if (d.singular) fail(ErrorKind::Singular, "solve: matrix is singular");
  return lu_solve(d, b);
}

Matrix inverse(const Matrix& a, double tol) {
  const Lu d = decompose(a, tol);
  if (d.singular) fail(ErrorKind::Singular, "inverse: matrix is singular");
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const auto col = lu_solve(d, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

double determinant(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1.0;
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const Lu d = decompose(a, 0.0);
  if (d.singular) return 0.0;
  double det = d.sign;
  for (std::size_t i = 0; i < n; ++i) det *= d.lu(i, i);
  return det;
}

std::size_t rank(const std::vector<std::vector<double>>& rows, double tol) {
  if (rows.empty()) return 0;
  std::vector<std::vector<double>> m = rows;
  const std::size_t cols = m.front().size();
  double scale = 0.0;
  for (const auto& r : m)
    for (double x : r) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0;
  std::size_t rnk = 0;
  for (std::size_t col = 0; col < cols && rnk < m.size(); ++col) {
    std::size_t pivot = rnk;
    for (std::size_t i = rnk + 1; i < m.size(); ++i)
      if (std::abs(m[i][col]) > std::abs(m[pivot][col])) pivot = i;
    if (std::abs(m[pivot][col]) <= tol * scale) continue;
    std::swap(m[rnk], m[pivot]);
    for (std::size_t i = rnk + 1; i < m.size(); ++i) {
      const double f = m[i][col] / m[rnk][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rnk][j];
    }
    ++rnk;
  }
  return rnk;
}

std::vector<double> min_norm_solve(const Matrix& m, std::span<const double> b) {
  require(b.size() == m.rows(), ErrorKind::DimensionMismatch, "min_norm_solve: rhs length");
  const Matrix mt = m.transpose();
  const Matrix gram = m * mt;
  const Lu d = decompose(gram, 1e-12);
  if (d.singular) fail(ErrorKind::NotSurjective, "min_norm_solve: operator is not onto");
  const auto y = lu_solve(d, b);
  return mt * std::span<const double>(y);
}

SymmetricEigen jacobi_eigen(const Matrix& a, double tol, int max_sweeps) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "jacobi_eigen: square matrix");
  const std::size_t n = a.rows();
  Matrix m = a;
  Matrix v = Matrix::identity(n);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
  };
  for (int sweep = 0; sweep < max_sweeps && off_norm() > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return m(x, x) < m(y, y); });
  SymmetricEigen out;
  for (std::size_t idx : order) {
    out.values.push_back(m(idx, idx));
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v(k, idx);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

namespace {

void orient(std::vector<double>& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-14) {
      if (x < 0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

}  // namespace

SmallestEigen smallest_eigen(const Matrix& a) {
  require(a.rows() == a.cols() && a.rows() >= 1, ErrorKind::DimensionMismatch,
          "smallest_eigen: square matrix");
  if (a.rows() == 1) return {a(0, 0), {1.0}};
  if (a.rows() == 2) {
    const double p = a(0, 0), q = a(1, 1), b = 0.5 * (a(0, 1) + a(1, 0));
    const double mean = 0.5 * (p + q);
    const double radius = std::hypot(0.5 * (p - q), b);
    const double lambda = mean - radius;
    std::vector<double> v;
    if (b == 0.0) {
      v = p <= q ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0};
    } else {
      // The better conditioned of the two null-space forms of (A - lambda I).
      std::vector<double> v1{b, lambda - p}, v2{lambda - q, b};
      v = norm(v1) >= norm(v2) ? v1 : v2;
      const double len = norm(v);
      for (double& x : v) x /= len;
    }
    orient(v);
    return {lambda, v};
  }
  SymmetricEigen e = jacobi_eigen(a);
  orient(e.vectors.front());
  return {e.values.front(), e.vectors.front()};
}

SmallestEigen smallest_singular(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  require(n >= 1, ErrorKind::DimensionMismatch, "smallest_singular: no columns");
  std::vector<std::vector<double>> u(n, std::vector<double>(m)), v(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) u[j][i] = a(i, j);
    v[j][j] = 1.0;
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = dot(u[p], u[p]), beta = dot(u[q], u[q]), gamma = dot(u[p], u[q]);
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t), s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = u[p][i], y = u[q][i];
          u[p][i] = c * x - s * y;
          u[q][i] = s * x + c * y;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double x = v[p][i], y = v[q][i];
          v[p][i] = c * x - s * y;
          v[q][i] = s * x + c * y;
        }
      }
    if (!rotated) break;
  }
  std::size_t best = 0;
  double low = norm(u[0]);
  for (std::size_t j = 1; j < n; ++j) {
    const double x = norm(u[j]);
    if (x < low) low = x, best = j;
  }
  std::vector<double> vec = v[best];
  const double len = norm(vec);
  for (double& x : vec) x /= len;
  orient(vec);
  // Fewer rows than columns: rank deficient, so the rotation residue is noise.
  return {m < n ? 0.0 : low, vec};
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::DimensionMismatch, "dot: length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace carnot::linalg
