#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carnot/group.hpp"

namespace carnot {

struct SuiteResult {
  std::string group;
  std::string identity;
  std::size_t cases = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_residual <= tolerance; }
};

// Seeded fuzz suites for the algebraic identities of the surgery calculus on
// one group: pi homomorphism, pi_j invariance under conjugation, commutator
// layer raising, the two evaluations of the displacement, the iterated
// displacement sum, and the two conjugation paths. Case i uses the seed
// (seed, group name, identity, i), so results never depend on thread count.
std::vector<SuiteResult> run_identity_suite(const GroupPtr& g, std::size_t cases,
                                            std::uint64_t seed, double tol = 1e-9);

// Associativity max residual over `cases` random triples.
double associativity_residual(const GroupPtr& g, std::size_t cases, std::uint64_t seed);

// The groups of the acceptance suite: heisenberg(1), heisenberg(2), engel,
// free(2,3), free(3,2).
std::vector<GroupPtr> suite_groups();

}  // namespace carnot
