#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "carnot/algebra.hpp"

namespace carnot {

// A point of G in exponential coordinates: the element is exp(log).
struct GroupElement {
  AlgebraVector log;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// Exact rational coefficient of a BCH word.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// coefficient * [w_1, w_2, ..., w_m] with the right-nested convention
// (ad w_1)...(ad w_{m-1}) w_m, letters 'X' and 'Y'.
struct BchTerm {
  std::string word;
  Rational coefficient;
};

// Truncated Dynkin series P(X, Y) with log(exp X exp Y) = P(X, Y). Terms come
// from enumerating the compositions (k_1, l_1, ..., k_p, l_p); words of equal
// letters are merged and words whose last two letters agree are dropped, since
// such nested brackets vanish identically.
std::vector<BchTerm> bch_terms(int step);

class CarnotGroup {
 public:
  explicit CarnotGroup(StratifiedAlgebra algebra);
  static std::shared_ptr<const CarnotGroup> make(StratifiedAlgebra algebra);

  const StratifiedAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return algebra_.dim(); }
  std::size_t rank() const noexcept { return algebra_.rank(); }
  int step() const noexcept { return algebra_.step(); }
  const std::vector<BchTerm>& terms() const noexcept { return terms_; }

  GroupElement identity() const { return {algebra_.zero()}; }
  GroupElement exp(AlgebraVector v) const;
  // exp(sum_i v_i X_i) for v in g_1.
  GroupElement exp_horizontal(std::span<const double> v) const;

  AlgebraVector bch(const AlgebraVector& x, const AlgebraVector& y) const;
  GroupElement product(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  // g h g^{-1} by group products.
  GroupElement conjugate(const GroupElement& g, const GroupElement& h) const;
  // exp(e^{ad log g} log h): the adjoint evaluation of the same conjugation.
  GroupElement conjugate_adjoint(const GroupElement& g, const GroupElement& h) const;
  // g h g^{-1} h^{-1}
  GroupElement commutator(const GroupElement& g, const GroupElement& h) const;
  GroupElement dilate(double lambda, const GroupElement& g) const;

  // pi_j(g) = pi-bar_j(log g), as a full vector supported on layer j.
  AlgebraVector pi_layer(int j, const GroupElement& g) const;
  // pi(g) as a g_1 coordinate vector of length rank().
  std::vector<double> pi(const GroupElement& g) const;
  // sum_j |pi_j(g)|^{1/j}
  double homogeneous_norm(const GroupElement& g) const;
  // Membership in G_j = exp(g_j + ... + g_s), up to tol on lower coordinates.
  bool in_subgroup(int j, const GroupElement& g, double tol) const;

 private:
  // Right-nested bracket nodes shared between words: node value is
  // letter (ad) applied to child value.
  struct Node {
    char letter;
    int child;  // -1 for a single letter
  };

  void check(const GroupElement& g) const;

  StratifiedAlgebra algebra_;
  std::vector<BchTerm> terms_;
  std::vector<Node> nodes_;
  std::vector<int> term_node_;
};

using GroupPtr = std::shared_ptr<const CarnotGroup>;

}  // namespace carnot
