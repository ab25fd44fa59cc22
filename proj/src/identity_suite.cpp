#include "carnot/identity_suite.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "carnot/fixtures.hpp"
#include "carnot/parallel.hpp"
#include "carnot/surgery.hpp"

namespace carnot {

namespace {

std::uint32_t fnv1a(const std::string& s) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : s) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

std::mt19937_64 case_rng(std::uint64_t seed, const std::string& group, int identity,
                         std::size_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    fnv1a(group), static_cast<std::uint32_t>(identity),
                    static_cast<std::uint32_t>(i)};
  return std::mt19937_64(seq);
}

// Max coordinate of v over layers [1, upto].
double lower_part(const StratifiedAlgebra& alg, const AlgebraVector& v, int upto) {
  double m = 0.0;
  for (int j = 1; j <= upto; ++j) m = std::max(m, alg.project(j, v).max_abs());
  return m;
}

int random_layer(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<double> sorted_times(std::mt19937_64& rng, const HorizontalPath& p, int n) {
  std::uniform_real_distribution<double> u(p.a(), p.b());
  std::vector<double> t(static_cast<std::size_t>(n));
  for (double& x : t) x = u(rng);
  std::sort(t.begin(), t.end());
  return t;
}

using CaseFn = std::function<double(std::mt19937_64&)>;

}  // namespace

std::vector<SuiteResult> run_identity_suite(const GroupPtr& g, std::size_t cases,
                                            std::uint64_t seed, double tol) {
  const StratifiedAlgebra& alg = g->algebra();
  const int s = alg.step();
  auto elem = [&](std::mt19937_64& rng, int first = 1) {
    return g->exp(fixtures::random_vector(alg, rng, 1.0, first, s));
  };

  std::vector<std::pair<std::string, CaseFn>> suites;
  suites.emplace_back("pi_homomorphism", [&](std::mt19937_64& rng) {
    const GroupElement x = elem(rng), y = elem(rng);
    std::vector<double> d = g->pi(g->product(x, y));
    const std::vector<double> px = g->pi(x), py = g->pi(y);
    double m = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) m = std::max(m, std::abs(d[i] - px[i] - py[i]));
    // pi_j is additive on G_j.
    const int j = random_layer(rng, 1, s);
    const GroupElement u = elem(rng, j), v = elem(rng, j);
    const AlgebraVector sum = g->pi_layer(j, g->product(u, v));
    m = std::max(m, (sum - g->pi_layer(j, u) - g->pi_layer(j, v)).max_abs());
    m = std::max(m, lower_part(alg, g->product(u, v).log, j - 1));
    return m;
  });
  suites.emplace_back("conjugation_projection", [&](std::mt19937_64& rng) {
    const int j = random_layer(rng, 1, s);
    const GroupElement x = elem(rng), h = elem(rng, j);
    const GroupElement c = g->conjugate(x, h);
    return std::max(lower_part(alg, c.log, j - 1), (g->pi_layer(j, c) - g->pi_layer(j, h)).max_abs());
  });
  suites.emplace_back("conjugation_paths", [&](std::mt19937_64& rng) {
    const GroupElement x = elem(rng), h = elem(rng);
    return (g->conjugate(x, h).log - g->conjugate_adjoint(x, h).log).max_abs();
  });
  if (s >= 2)
    suites.emplace_back("commutator_layer", [&](std::mt19937_64& rng) {
      const int j = random_layer(rng, 1, s - 1);
      const GroupElement x = elem(rng), h = elem(rng, j);
      const GroupElement c = g->commutator(x, h);
      const AlgebraVector expect =
          alg.bracket(alg.project(1, x.log), alg.project(j, h.log));
      return std::max(lower_part(alg, c.log, j), (g->pi_layer(j + 1, c) - expect).max_abs());
    });
  suites.emplace_back("displacement_formula", [&](std::mt19937_64& rng) {
    const HorizontalPath p = fixtures::random_arclength(g, 6, rng);
    const std::vector<double> t = sorted_times(rng, p, 2);
    const AlgebraVector y = fixtures::random_vector(alg, rng, 0.5);
    double m = displacement(p, t[0], t[1], y).agreement;
    if (s >= 2) {
      // Y in g_j: Dis in G_{j+1} with pi_{j+1}(Dis) = [Y, increment of the projection].
      const int j = random_layer(rng, 1, s - 1);
      const AlgebraVector yj = fixtures::random_vector(alg, rng, 0.5, j, j);
      const DisplacementCheck d = displacement(p, t[0], t[1], yj);
      const AlgebraVector delta = alg.project(1, p.increment(t[0], t[1]).log);
      m = std::max({m, d.agreement, lower_part(alg, d.direct.value.log, j),
                    (g->pi_layer(j + 1, d.direct.value) - alg.bracket(yj, delta)).max_abs()});
    }
    return m;
  });
  if (s >= 2)
    suites.emplace_back("iterated_displacement", [&](std::mt19937_64& rng) {
      const HorizontalPath p = recenter(fixtures::random_arclength(g, 6, rng));
      const std::vector<double> t = sorted_times(rng, p, 6);
      const int j = random_layer(rng, 1, s - 1);
      std::vector<Device> devices;
      AlgebraVector expect = alg.zero();
      for (int i = 0; i < 3; ++i) {
        const AlgebraVector y = fixtures::random_vector(alg, rng, 0.5, j, j);
        devices.push_back({t[2 * i], t[2 * i + 1], y});
        expect += alg.bracket(y, alg.project(1, p.increment(t[2 * i], t[2 * i + 1]).log));
      }
      double m = 0.0;
      for (const IteratedResult& res : {dev_iter(p, devices), dev_iter_sym(p, devices)}) {
        const GroupElement& dis = res.displacement.value;
        m = std::max({m, lower_part(alg, dis.log, j), (g->pi_layer(j + 1, dis) - expect).max_abs()});
      }
      return m;
    });

  std::vector<SuiteResult> out;
  for (std::size_t sid = 0; sid < suites.size(); ++sid) {
    const auto& [name, fn] = suites[sid];
    std::vector<double> res(cases, 0.0);
    parallel_for(cases, [&](std::size_t i) {
      std::mt19937_64 rng = case_rng(seed, alg.name(), static_cast<int>(sid), i);
      res[i] = fn(rng);
    });
    SuiteResult r{alg.name(), name, cases, 0.0, tol};
    for (double x : res) r.max_residual = std::max(r.max_residual, x);
    out.push_back(r);
  }
  return out;
}

double associativity_residual(const GroupPtr& g, std::size_t cases, std::uint64_t seed) {
  const StratifiedAlgebra& alg = g->algebra();
  if (cases == 0) return 0.0;
  std::vector<double> res(cases, 0.0);
  parallel_for(cases, [&](std::size_t i) {
    std::mt19937_64 rng = case_rng(seed, alg.name(), 1000, i);
    const GroupElement x = g->exp(fixtures::random_vector(alg, rng));
    const GroupElement y = g->exp(fixtures::random_vector(alg, rng));
    const GroupElement z = g->exp(fixtures::random_vector(alg, rng));
    res[i] = (g->product(g->product(x, y), z).log - g->product(x, g->product(y, z)).log).max_abs();
  });
  return *std::max_element(res.begin(), res.end());
}

std::vector<GroupPtr> suite_groups() {
  return {CarnotGroup::make(heisenberg(1)), CarnotGroup::make(heisenberg(2)),
          CarnotGroup::make(engel()), CarnotGroup::make(free_nilpotent(2, 3)),
          CarnotGroup::make(free_nilpotent(3, 2))};
}

}  // namespace carnot
