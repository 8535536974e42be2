#pragma once

#include <optional>
#include <string>
#include <vector>

namespace schurdouble {

struct SuiteOptions {
  unsigned long seed = 17;
  std::optional<std::string> preset;  // restrict a suite to one algebra
  std::optional<int> n, d;            // restrict to one instance
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Named verification suites over the shipped presets at desk scale:
//   signs                place-permutation sign coherence
//   cosets               coset / double-coset combinatorics
//   invariants           shuffle algebra, coproducts, kappa, pairings
//   tfund                the double -> invariants isomorphism, multiplicative
//   double-assoc         associativity of the double product
//   triv-example         truncated polynomial model of the trivial double
//   green                closed-form structure constants vs tensor oracle
//   schur-weyl           commutant dimension and faithfulness
//   truncation           idempotent truncation and the bimodule lattice
//   symmetric-form       Gram matrix, unimodularity, divided-lattice witness
//   divided-integrality  divided structure constants and products over Z
//   generation           generating-set closures against the double lattice
//   desuper              desuperization, alternating modules, psi transport
//   all                  everything above
std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});
std::vector<SuiteResult> run_all(const SuiteOptions& opt = {});

}  // namespace schurdouble
