#include "carnot/hall.hpp"

#include "carnot/errors.hpp"

namespace carnot {

HallBasis::HallBasis(int rank, int step) : rank_(rank), step_(step) {
  require(rank >= 1 && step >= 1, ErrorKind::InvalidArgument, "free algebra needs rank, step >= 1");
  for (int g = 0; g < rank; ++g) elements_.push_back({-1, -1, 1});
  for (int len = 2; len <= step; ++len) {
    const int count = static_cast<int>(elements_.size());
    for (int p = 0; p < count; ++p)
      for (int q = p + 1; q < count; ++q) {
        if (elements_[p].length + elements_[q].length != len) continue;
        if (elements_[q].length > 1 && elements_[q].left > p) continue;
        index_[{p, q}] = static_cast<int>(elements_.size());
        elements_.push_back({p, q, len});
      }
  }
}

std::vector<int> HallBasis::layer_dims() const {
  std::vector<int> dims(step_, 0);
  for (const Element& e : elements_) ++dims[e.length - 1];
  return dims;
}

std::string HallBasis::label(int index) const {
  const Element& e = elements_.at(index);
  if (e.left < 0) return "X" + std::to_string(index + 1);
  return "[" + label(e.left) + "," + label(e.right) + "]";
}

int HallBasis::find(int left, int right) const {
  const auto it = index_.find({left, right});
  return it == index_.end() ? -1 : it->second;
}

std::map<int, long long> HallBasis::bracket(int a, int b) const {
  if (a == b) return {};
  if (elements_[a].length + elements_[b].length > step_) return {};
  if (const auto it = memo_.find({a, b}); it != memo_.end()) return it->second;

  std::map<int, long long> out;
  auto add = [&out](const std::map<int, long long>& terms, long long factor) {
    for (const auto& [k, v] : terms) {
      const long long next = out[k] + factor * v;
      if (next == 0)
        out.erase(k);
      else
        out[k] = next;
    }
  };

  if (a > b) {
    add(bracket(b, a), -1);
  } else if (elements_[b].length == 1 || elements_[b].left <= a) {
    const int idx = find(a, b);
    if (idx < 0) fail(ErrorKind::Internal, "Hall basis: expected basic element missing");
    out[idx] = 1;
  } else {
    // b = [x, y] with x > a:  [a,[x,y]] = [[a,x],y] + [x,[a,y]]
    const int x = elements_[b].left, y = elements_[b].right;
    for (const auto& [w, alpha] : bracket(a, x)) add(bracket(w, y), alpha);
    for (const auto& [w, beta] : bracket(a, y)) add(bracket(x, w), beta);
  }
  memo_[{a, b}] = out;
  return out;
}

}  // namespace carnot
