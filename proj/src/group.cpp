#include "carnot/group.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "carnot/errors.hpp"

namespace carnot {

namespace {

Rational normalized(__int128 num, __int128 den) {
  if (den < 0) num = -num, den = -den;
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) return {0, 1};
  num /= a;
  den /= a;
  require(num < (__int128(1) << 62) && num > -(__int128(1) << 62) && den < (__int128(1) << 62),
          ErrorKind::Internal, "BCH coefficient overflow");
  return {static_cast<long long>(num), static_cast<long long>(den)};
}

Rational add(Rational a, Rational b) {
  return normalized(__int128(a.num) * b.den + __int128(b.num) * a.den, __int128(a.den) * b.den);
}

long long factorial(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<BchTerm> bch_terms(int step) {
  require(step >= 1, ErrorKind::InvalidArgument, "bch_terms: step >= 1");
  std::map<std::string, Rational> acc;
  std::vector<std::pair<int, int>> blocks;

  // Depth-first enumeration of compositions with p blocks and total length <= step.
  std::function<void(int, int)> extend = [&](int p, int used) {
    if (static_cast<int>(blocks.size()) == p) {
      long long denom = p * static_cast<long long>(used);
      std::string word;
      for (const auto& [k, l] : blocks) {
        denom *= factorial(k) * factorial(l);
        word.append(static_cast<std::size_t>(k), 'X');
        word.append(static_cast<std::size_t>(l), 'Y');
      }
      const long long sign = (p % 2 == 1) ? 1 : -1;
      auto [it, inserted] = acc.try_emplace(word, Rational{0, 1});
      it->second = add(it->second, normalized(sign, denom));
      return;
    }
    for (int total = 1; used + total <= step; ++total)
      for (int k = 0; k <= total; ++k) {
        blocks.emplace_back(k, total - k);
        extend(p, used + total);
        blocks.pop_back();
      }
  };
  for (int p = 1; p <= step; ++p) extend(p, 0);

  std::vector<BchTerm> out;
  for (const auto& [word, coef] : acc) {
    if (coef.num == 0) continue;
    const std::size_t m = word.size();
    if (m >= 2 && word[m - 1] == word[m - 2]) continue;
    out.push_back({word, coef});
  }
  // Deterministic order: by length, then lexicographic.
  std::stable_sort(out.begin(), out.end(), [](const BchTerm& a, const BchTerm& b) {
    return a.word.size() != b.word.size() ? a.word.size() < b.word.size() : a.word < b.word;
  });
  return out;
}

CarnotGroup::CarnotGroup(StratifiedAlgebra algebra)
    : algebra_(std::move(algebra)), terms_(bch_terms(algebra_.step())) {
  std::map<std::string, int> node_of;
  std::function<int(const std::string&)> node = [&](const std::string& w) -> int {
    if (auto it = node_of.find(w); it != node_of.end()) return it->second;
    const int child = w.size() == 1 ? -1 : node(w.substr(1));
    nodes_.push_back({w[0], child});
    const int idx = static_cast<int>(nodes_.size()) - 1;
    node_of[w] = idx;
    return idx;
  };
  for (const BchTerm& t : terms_) term_node_.push_back(node(t.word));
}

std::shared_ptr<const CarnotGroup> CarnotGroup::make(StratifiedAlgebra algebra) {
  return std::make_shared<const CarnotGroup>(std::move(algebra));
}

void CarnotGroup::check(const GroupElement& g) const {
  require(g.log.size() == algebra_.dim(), ErrorKind::DimensionMismatch,
          "group element does not belong to this group");
}

GroupElement CarnotGroup::exp(AlgebraVector v) const {
  require(v.size() == algebra_.dim(), ErrorKind::DimensionMismatch, "exp: vector size");
  return {std::move(v)};
}

GroupElement CarnotGroup::exp_horizontal(std::span<const double> v) const {
  return {algebra_.horizontal(v)};
}

AlgebraVector CarnotGroup::bch(const AlgebraVector& x, const AlgebraVector& y) const {
  std::vector<AlgebraVector> values(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& nd = nodes_[i];
    const AlgebraVector& letter = nd.letter == 'X' ? x : y;
    values[i] = nd.child < 0 ? letter : algebra_.bracket(letter, values[nd.child]);
  }
  AlgebraVector out = algebra_.zero();
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const AlgebraVector& v = values[term_node_[t]];
    const Rational& c = terms_[t].coefficient;
    if (c.num == 1 && c.den == 1) {
      out += v;
    } else {
      const double cv = c.value();
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += cv * v[k];
    }
  }
  return out;
}

GroupElement CarnotGroup::product(const GroupElement& g, const GroupElement& h) const {
  check(g);
  check(h);
  return {bch(g.log, h.log)};
}

GroupElement CarnotGroup::inverse(const GroupElement& g) const {
  check(g);
  return {-g.log};
}

GroupElement CarnotGroup::conjugate(const GroupElement& g, const GroupElement& h) const {
  return product(product(g, h), inverse(g));
}

GroupElement CarnotGroup::conjugate_adjoint(const GroupElement& g, const GroupElement& h) const {
  check(g);
  check(h);
  AlgebraVector term = h.log;
  AlgebraVector out = h.log;
  for (int k = 1; k < algebra_.step(); ++k) {
    term = (1.0 / k) * algebra_.bracket(g.log, term);
    out += term;
  }
  return {out};
}

GroupElement CarnotGroup::commutator(const GroupElement& g, const GroupElement& h) const {
  return product(product(product(g, h), inverse(g)), inverse(h));
}

GroupElement CarnotGroup::dilate(double lambda, const GroupElement& g) const {
  check(g);
  return {algebra_.dilate(lambda, g.log)};
}

AlgebraVector CarnotGroup::pi_layer(int j, const GroupElement& g) const {
  check(g);
  require(j >= 1 && j <= algebra_.step(), ErrorKind::InvalidArgument, "pi_layer: layer out of range");
  return algebra_.project(j, g.log);
}

std::vector<double> CarnotGroup::pi(const GroupElement& g) const {
  check(g);
  return algebra_.layer_coords(1, g.log);
}

double CarnotGroup::homogeneous_norm(const GroupElement& g) const {
  check(g);
  double total = 0.0;
  for (int j = 1; j <= algebra_.step(); ++j) {
    double sq = 0.0;
    for (std::size_t k = algebra_.layer_begin(j); k < algebra_.layer_end(j); ++k)
      sq += g.log[k] * g.log[k];
    const double len = std::sqrt(sq);
    if (j == 1)
      total += len;
    else if (j == 2)
      total += std::sqrt(len);
    else if (j == 3)
      total += std::cbrt(len);
    else
      total += std::pow(len, 1.0 / j);
  }
  return total;
}

bool CarnotGroup::in_subgroup(int j, const GroupElement& g, double tol) const {
  check(g);
  return algebra_.lowest_layer(g.log, tol) >= j;
}

}  // namespace carnot
