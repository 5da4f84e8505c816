#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bentail::suites {

// ---------------------------------------------------------------------------
// Randomized invariant suites. Each suite draws its own deterministic
// instance stream from the given seed, checks one family of properties in
// exact arithmetic, and reports how many trials ran and how many failed.
// The CLI `check` command and the acceptance harness both run these.
// ---------------------------------------------------------------------------

struct SuiteReport {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::vector<std::string> notes;  // first few failure descriptions
  bool passed() const { return failures == 0; }
};

// Classical agreement: on random consistent bases (<=4 atoms, <=5 formulas)
// the uniform/mu=1/theta=1 relation and the mu->1 relation at theta=1 both
// match the brute-force classical check.
SuiteReport classicality(std::uint64_t seed = 11, int trials = 1000);

// Contradiction handling: {beta, !beta} classically entails everything,
// Bayesian-classically entails nothing, and its mu->1 probability of beta
// is exactly the prior marginal.
SuiteReport inconsistency(std::uint64_t seed = 12, int trials = 1000);

// Probability laws of the marginal: range, normalisation over truth values,
// inclusion-exclusion, and p(alpha=0) = p(!alpha=1).
SuiteReport kolmogorov(std::uint64_t seed = 13, int trials = 1000);

// mu->1 principles: non-contradiction, non-triviality at the uniform prior,
// and non-explosion p(beta | alpha, !alpha) = p(beta).
SuiteReport paraconsistency(std::uint64_t seed = 14, int trials = 1000);

// Preferential vs limit-MAP: preferential implies MAP on consistent bases,
// the two coincide under strict total orders, and inconsistent bases make
// the preferential relation vacuous.
SuiteReport nonmonotonicity(std::uint64_t seed = 15, int trials = 500);

// Raising theta can only shrink the set of entailed formulas, for both the
// Bayesian and the mu->1 relation.
SuiteReport threshold_monotonicity(std::uint64_t seed = 16, int trials = 1000);

// The fixed worked examples: the weather model, the two-atom uniform
// contradiction fixtures, and the diamond-order divergence.
SuiteReport worked_examples();

std::vector<std::string> suite_names();

// Runs one suite by name with its default seed and size; InputError on an
// unknown name.
SuiteReport run_suite(const std::string& name);

std::vector<SuiteReport> run_all();

}  // namespace bentail::suites
