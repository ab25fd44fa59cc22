#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "carnot/kernels.hpp"

namespace carnot {

// Coordinates of an element of g in the adapted orthonormal basis, layer-major.
class AlgebraVector {
 public:
  AlgebraVector() = default;
  explicit AlgebraVector(std::size_t n) : coords_(n, 0.0) {}
  explicit AlgebraVector(std::vector<double> coords) : coords_(std::move(coords)) {}
  AlgebraVector(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t size() const noexcept { return coords_.size(); }
  double& operator[](std::size_t i) { return coords_[i]; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> span() const noexcept { return coords_; }
  std::span<double> span() noexcept { return coords_; }
  const std::vector<double>& coords() const noexcept { return coords_; }

  AlgebraVector& operator+=(const AlgebraVector& o);
  AlgebraVector& operator-=(const AlgebraVector& o);
  AlgebraVector& operator*=(double s);
  friend AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b) { return a += b; }
  friend AlgebraVector operator-(AlgebraVector a, const AlgebraVector& b) { return a -= b; }
  friend AlgebraVector operator*(double s, AlgebraVector a) { return a *= s; }
  friend AlgebraVector operator-(AlgebraVector a) { return a *= -1.0; }
  friend bool operator==(const AlgebraVector&, const AlgebraVector&) = default;

  double norm() const;
  double max_abs() const;
  bool is_zero() const;

 private:
  std::vector<double> coords_;
};

// One i < j entry of a user structure table: [X_i, X_j] = sum_k coeffs[k] X_k.
struct BracketEntry {
  int i;
  int j;
  std::vector<std::pair<int, double>> coeffs;
};

struct ValidationReport {
  double antisymmetry = 0.0;  // max |c_ijk + c_jik|
  double grading = 0.0;       // max |c_ijk| over layer-violating k
  double jacobi = 0.0;        // max coordinate of any cyclic Jacobi sum
  std::vector<std::size_t> generation_ranks;  // rank of [g_1, g_j] for j = 1..s-1
  bool generation = true;
  bool ok = true;
  std::string message;
};

// Stratified nilpotent Lie algebra g = g_1 + ... + g_s with dense structure
// constants c[i][j][k] in an orthonormal adapted basis. Immutable once built.
// Layers are indexed 1..s throughout; basis indices are 0-based.
class StratifiedAlgebra {
 public:
  // Validates antisymmetry, grading, Jacobi and generation; throws
  // Error(Validation) on failure. `structure` is n*n*n, index (i*n + j)*n + k.
  StratifiedAlgebra(std::string name, std::vector<int> layer_dims, std::vector<double> structure,
                    double tol = 1e-12);

  // Completes antisymmetrically from i < j entries.
  static StratifiedAlgebra from_table(std::string name, std::vector<int> layer_dims,
                                      const std::vector<BracketEntry>& entries, double tol = 1e-12);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return n_; }
  int step() const noexcept { return static_cast<int>(layer_dims_.size()); }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(layer_dims_.front()); }
  const std::vector<int>& layer_dims() const noexcept { return layer_dims_; }
  int layer_of(std::size_t i) const { return layer_of_[i]; }
  std::size_t layer_begin(int j) const;
  std::size_t layer_end(int j) const;

  double structure(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }
  std::vector<BracketEntry> table() const;

  AlgebraVector zero() const { return AlgebraVector(n_); }
  AlgebraVector basis(std::size_t i) const;
  // Embeds a g_1 vector of length rank().
  AlgebraVector horizontal(std::span<const double> v) const;

  AlgebraVector bracket(const AlgebraVector& a, const AlgebraVector& b) const;
  AlgebraVector dilate(double lambda, const AlgebraVector& v) const;
  // pi-bar_j: keeps layer j only.
  AlgebraVector project(int j, const AlgebraVector& v) const;
  // Coordinates of layer j as a dense vector of length dim g_j.
  std::vector<double> layer_coords(int j, const AlgebraVector& v) const;
  AlgebraVector from_layer_coords(int j, std::span<const double> coords) const;
  // Lowest layer with a coordinate above tol, or step()+1 when v is negligible.
  int lowest_layer(const AlgebraVector& v, double tol) const;

  ValidationReport check(double tol) const;

 private:
  void check_size(const AlgebraVector& v) const;

  std::string name_;
  std::size_t n_ = 0;
  std::vector<int> layer_dims_;
  std::vector<int> layer_of_;
  std::vector<std::size_t> layer_offsets_;
  std::vector<double> c_;
  std::vector<kernels::BracketRow> rows_;
  std::vector<double> pool_;
};

// Built-in algebras.
StratifiedAlgebra heisenberg(int n);
StratifiedAlgebra engel();
StratifiedAlgebra free_nilpotent(int rank, int step);
// Accepts "heisenberg", "heisenberg(n)", "engel", "free(r,s)".
StratifiedAlgebra builtin(const std::string& name);

// Dimension of the degree-n component of the free Lie algebra on r generators:
// (1/n) sum_{d | n} mu(d) r^{n/d}.
long long witt_dimension(int r, int n);

}  // namespace carnot
