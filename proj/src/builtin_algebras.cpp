#include <cctype>
#include <regex>

#include "carnot/algebra.hpp"
#include "carnot/errors.hpp"
#include "carnot/hall.hpp"

namespace carnot {

StratifiedAlgebra heisenberg(int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "heisenberg(n) needs n >= 1");
  std::vector<BracketEntry> entries;
  for (int i = 0; i < n; ++i) entries.push_back({i, n + i, {{2 * n, 1.0}}});
  return StratifiedAlgebra::from_table("heisenberg(" + std::to_string(n) + ")", {2 * n, 1}, entries,
                                       0.0);
}

StratifiedAlgebra engel() {
  return StratifiedAlgebra::from_table("engel", {2, 1, 1}, {{0, 1, {{2, 1.0}}}, {0, 2, {{3, 1.0}}}},
                                       0.0);
}

StratifiedAlgebra free_nilpotent(int rank, int step) {
  require(rank >= 2 || step == 1, ErrorKind::InvalidArgument, "free(r,s) with s > 1 needs r >= 2");
  const HallBasis hall(rank, step);
  const int n = static_cast<int>(hall.elements().size());
  std::vector<BracketEntry> entries;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      BracketEntry e{i, j, {}};
      for (const auto& [k, v] : hall.bracket(i, j)) e.coeffs.emplace_back(k, static_cast<double>(v));
      if (!e.coeffs.empty()) entries.push_back(std::move(e));
    }
  return StratifiedAlgebra::from_table(
      "free(" + std::to_string(rank) + "," + std::to_string(step) + ")", hall.layer_dims(), entries,
      0.0);
}

StratifiedAlgebra builtin(const std::string& raw) {
  std::string name;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  std::smatch m;
  if (name == "heisenberg" || name == "h1") return heisenberg(1);
  if (std::regex_match(name, m, std::regex(R"(heisenberg\((\d+)\))")) ||
      std::regex_match(name, m, std::regex(R"(h(\d+))")))
    return heisenberg(std::stoi(m[1]));
  if (name == "engel") return engel();
  if (std::regex_match(name, m, std::regex(R"(free\((\d+),(\d+)\))"))) {
    const int r = std::stoi(m[1]), s = std::stoi(m[2]);
    long long total = 0;
    for (int len = 1; len <= s && total <= 40; ++len) total += witt_dimension(r, len);
    require(total <= 40, ErrorKind::InvalidArgument, "free(r,s) limited to dimension <= 40");
    return free_nilpotent(r, s);
  }
  fail(ErrorKind::InvalidArgument, "unknown algebra name: " + raw);
}

long long witt_dimension(int r, int n) {
  auto mobius = [](int d) {
    int result = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      d /= p;
      if (d % p == 0) return 0;
      result = -result;
    }
    if (d > 1) result = -result;
    return result;
  };
  auto ipow = [](long long b, int e) {
    long long out = 1;
    while (e-- > 0) out *= b;
    return out;
  };
  long long sum = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) sum += mobius(d) * ipow(r, n / d);
  return sum / n;
}

}  // namespace carnot
