#include "carnot/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "carnot/errors.hpp"
#include "carnot/linalg.hpp"

namespace carnot {

AlgebraVector& AlgebraVector::operator+=(const AlgebraVector& o) {
  require(o.size() == size(), ErrorKind::DimensionMismatch, "AlgebraVector +: size");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

AlgebraVector& AlgebraVector::operator-=(const AlgebraVector& o) {
  require(o.size() == size(), ErrorKind::DimensionMismatch, "AlgebraVector -: size");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

AlgebraVector& AlgebraVector::operator*=(double s) {
  for (double& x : coords_) x *= s;
  return *this;
}

double AlgebraVector::norm() const { return linalg::norm(coords_); }

double AlgebraVector::max_abs() const {
  double m = 0.0;
  for (double x : coords_) m = std::max(m, std::abs(x));
  return m;
}

bool AlgebraVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double x) { return x == 0.0; });
}

StratifiedAlgebra::StratifiedAlgebra(std::string name, std::vector<int> layer_dims,
                                     std::vector<double> structure, double tol)
    : name_(std::move(name)), layer_dims_(std::move(layer_dims)), c_(std::move(structure)) {
  require(!layer_dims_.empty(), ErrorKind::Validation, "algebra needs at least one layer");
  std::size_t offset = 0;
  for (std::size_t j = 0; j < layer_dims_.size(); ++j) {
    require(layer_dims_[j] > 0, ErrorKind::Validation, "layer dimensions must be positive");
    layer_offsets_.push_back(offset);
    for (int t = 0; t < layer_dims_[j]; ++t) layer_of_.push_back(static_cast<int>(j) + 1);
    offset += static_cast<std::size_t>(layer_dims_[j]);
  }
  layer_offsets_.push_back(offset);
  n_ = offset;
  require(c_.size() == n_ * n_ * n_, ErrorKind::DimensionMismatch,
          "structure table must have n^3 entries");

  const ValidationReport report = check(tol);
  if (!report.ok) fail(ErrorKind::Validation, "algebra '" + name_ + "': " + report.message);

  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const int target = layer_of_[i] + layer_of_[j];
      if (target > step()) continue;
      const std::size_t kb = layer_begin(target), ke = layer_end(target);
      bool any = false;
      for (std::size_t k = kb; k < ke; ++k) any = any || this->structure(i, j, k) != 0.0;
      if (!any) continue;
      rows_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                       static_cast<std::uint32_t>(kb), static_cast<std::uint32_t>(ke),
                       static_cast<std::uint32_t>(pool_.size())});
      for (std::size_t k = kb; k < ke; ++k) pool_.push_back(this->structure(i, j, k));
    }
}

StratifiedAlgebra StratifiedAlgebra::from_table(std::string name, std::vector<int> layer_dims,
                                                const std::vector<BracketEntry>& entries,
                                                double tol) {
  std::size_t n = 0;
  for (int d : layer_dims) {
    require(d > 0, ErrorKind::Validation, "layer dimensions must be positive");
    n += static_cast<std::size_t>(d);
  }
  std::vector<double> c(n * n * n, 0.0);
  for (const BracketEntry& e : entries) {
    require(e.i >= 0 && e.j >= 0 && static_cast<std::size_t>(e.i) < n &&
                static_cast<std::size_t>(e.j) < n,
            ErrorKind::Validation, "bracket entry index out of range");
    require(e.i < e.j, ErrorKind::Validation, "bracket entries must list i < j only");
    for (const auto& [k, value] : e.coeffs) {
      require(k >= 0 && static_cast<std::size_t>(k) < n, ErrorKind::Validation,
              "bracket coefficient index out of range");
      c[(e.i * n + e.j) * n + k] += value;
      c[(e.j * n + e.i) * n + k] -= value;
    }
  }
  return StratifiedAlgebra(std::move(name), std::move(layer_dims), std::move(c), tol);
}

std::size_t StratifiedAlgebra::layer_begin(int j) const {
  require(j >= 1 && j <= step(), ErrorKind::InvalidArgument, "layer index out of range");
  return layer_offsets_[j - 1];
}

std::size_t StratifiedAlgebra::layer_end(int j) const {
  require(j >= 1 && j <= step(), ErrorKind::InvalidArgument, "layer index out of range");
  return layer_offsets_[j];
}

std::vector<BracketEntry> StratifiedAlgebra::table() const {
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      BracketEntry e{static_cast<int>(i), static_cast<int>(j), {}};
      for (std::size_t k = 0; k < n_; ++k)
        if (structure(i, j, k) != 0.0) e.coeffs.emplace_back(static_cast<int>(k), structure(i, j, k));
      if (!e.coeffs.empty()) out.push_back(std::move(e));
    }
  return out;
}

AlgebraVector StratifiedAlgebra::basis(std::size_t i) const {
  require(i < n_, ErrorKind::InvalidArgument, "basis index out of range");
  AlgebraVector v(n_);
  v[i] = 1.0;
  return v;
}

AlgebraVector StratifiedAlgebra::horizontal(std::span<const double> v) const {
  require(v.size() == rank(), ErrorKind::DimensionMismatch, "horizontal vector needs rank() entries");
  AlgebraVector out(n_);
  std::copy(v.begin(), v.end(), out.span().begin());
  return out;
}

void StratifiedAlgebra::check_size(const AlgebraVector& v) const {
  if (v.size() != n_) {
    std::ostringstream msg;
    msg << "vector of size " << v.size() << " used with algebra of dimension " << n_;
    fail(ErrorKind::DimensionMismatch, msg.str());
  }
}

AlgebraVector StratifiedAlgebra::bracket(const AlgebraVector& a, const AlgebraVector& b) const {
  check_size(a);
  check_size(b);
  AlgebraVector out(n_);
  kernels::bracket_accumulate(rows_, pool_, a.span(), b.span(), out.span());
  return out;
}

AlgebraVector StratifiedAlgebra::dilate(double lambda, const AlgebraVector& v) const {
  require(lambda > 0.0, ErrorKind::InvalidArgument, "dilation factor must be positive");
  check_size(v);
  AlgebraVector out = v;
  double power = lambda;
  for (int j = 1; j <= step(); ++j, power *= lambda)
    for (std::size_t k = layer_begin(j); k < layer_end(j); ++k) out[k] *= power;
  return out;
}

AlgebraVector StratifiedAlgebra::project(int j, const AlgebraVector& v) const {
  check_size(v);
  AlgebraVector out(n_);
  for (std::size_t k = layer_begin(j); k < layer_end(j); ++k) out[k] = v[k];
  return out;
}

std::vector<double> StratifiedAlgebra::layer_coords(int j, const AlgebraVector& v) const {
  check_size(v);
  return {v.coords().begin() + static_cast<std::ptrdiff_t>(layer_begin(j)),
          v.coords().begin() + static_cast<std::ptrdiff_t>(layer_end(j))};
}

AlgebraVector StratifiedAlgebra::from_layer_coords(int j, std::span<const double> coords) const {
  require(coords.size() == layer_end(j) - layer_begin(j), ErrorKind::DimensionMismatch,
          "layer coordinate count");
  AlgebraVector out(n_);
  std::copy(coords.begin(), coords.end(), out.span().begin() + static_cast<std::ptrdiff_t>(layer_begin(j)));
  return out;
}

int StratifiedAlgebra::lowest_layer(const AlgebraVector& v, double tol) const {
  check_size(v);
  for (int j = 1; j <= step(); ++j)
    for (std::size_t k = layer_begin(j); k < layer_end(j); ++k)
      if (std::abs(v[k]) > tol) return j;
  return step() + 1;
}

ValidationReport StratifiedAlgebra::check(double tol) const {
  ValidationReport r;
  auto c = [&](std::size_t i, std::size_t j, std::size_t k) { return structure(i, j, k); };
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        r.antisymmetry = std::max(r.antisymmetry, std::abs(c(i, j, k) + c(j, i, k)));
        if (layer_of_[k] != layer_of_[i] + layer_of_[j])
          r.grading = std::max(r.grading, std::abs(c(i, j, k)));
      }
  // [X_i,[X_j,X_k]] + [X_j,[X_k,X_i]] + [X_k,[X_i,X_j]]
  std::vector<double> sum(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      for (std::size_t k = j + 1; k < n_; ++k) {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (std::size_t m = 0; m < n_; ++m) {
          const double jk = c(j, k, m), ki = c(k, i, m), ij = c(i, j, m);
          if (jk == 0.0 && ki == 0.0 && ij == 0.0) continue;
          for (std::size_t q = 0; q < n_; ++q)
            sum[q] += jk * c(i, m, q) + ki * c(j, m, q) + ij * c(k, m, q);
        }
        for (double x : sum) r.jacobi = std::max(r.jacobi, std::abs(x));
      }
  for (int j = 1; j < step(); ++j) {
    std::vector<std::vector<double>> images;
    for (std::size_t a = layer_begin(1); a < layer_end(1); ++a)
      for (std::size_t b = layer_begin(j); b < layer_end(j); ++b) {
        std::vector<double> img;
        for (std::size_t k = layer_begin(j + 1); k < layer_end(j + 1); ++k) img.push_back(c(a, b, k));
        images.push_back(std::move(img));
      }
    const std::size_t rk = linalg::rank(images, 1e-10);
    r.generation_ranks.push_back(rk);
    if (rk != static_cast<std::size_t>(layer_dims_[j])) r.generation = false;
  }
  std::ostringstream msg;
  if (r.antisymmetry > tol) msg << "antisymmetry violated (" << r.antisymmetry << "); ";
  if (r.grading > tol) msg << "grading violated (" << r.grading << "); ";
  if (r.jacobi > tol) msg << "Jacobi identity violated (" << r.jacobi << "); ";
  if (!r.generation) msg << "layers are not generated by the first layer; ";
  r.message = msg.str();
  r.ok = r.message.empty();
  if (r.ok) r.message = "ok";
  return r;
}

}  // namespace carnot
