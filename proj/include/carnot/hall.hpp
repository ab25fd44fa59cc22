#pragma once

#include <map>
#include <string>
#include <vector>

namespace carnot {

// Hall basis of the free nilpotent Lie algebra of rank r and step s, in
// length-then-lexicographic order. Elements are right-normed: an element of
// length > 1 is [p, q] with p < q, and when q = [x, y] also x <= p.
class HallBasis {
 public:
  struct Element {
    int left = -1;   // -1 for generators
    int right = -1;
    int length = 1;
  };

  HallBasis(int rank, int step);

  int rank() const noexcept { return rank_; }
  int step() const noexcept { return step_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::vector<int> layer_dims() const;
  std::string label(int index) const;

  // [e_a, e_b] expanded in the basis by antisymmetry and Jacobi rewriting;
  // integer coefficients, terms of length > step dropped.
  std::map<int, long long> bracket(int a, int b) const;

 private:
  int find(int left, int right) const;

  int rank_;
  int step_;
  std::vector<Element> elements_;
  std::map<std::pair<int, int>, int> index_;
  mutable std::map<std::pair<int, int>, std::map<int, long long>> memo_;
};

}  // namespace carnot
