#include "bentail/suites.hpp"

#include <random>
#include <utility>

#include "bentail/consequence.hpp"
#include "bentail/detail/random.hpp"
#include "bentail/errors.hpp"
#include "bentail/logic.hpp"
#include "bentail/model.hpp"

namespace bentail::suites {

namespace {

using detail::draw_below;

const std::vector<std::string> kAtomPool = {"a", "b", "c", "d"};

Formula random_formula(std::mt19937_64& rng, std::size_t atom_count, int depth) {
  std::uint64_t pick = draw_below(rng, depth <= 0 ? 1 : 7);
  switch (pick) {
    case 0:
      return Formula::atom(kAtomPool[draw_below(rng, atom_count)]);
    case 1:
      return Formula::negate(random_formula(rng, atom_count, depth - 1));
    case 2:
      return Formula::conj(random_formula(rng, atom_count, depth - 1),
                           random_formula(rng, atom_count, depth - 1));
    case 3:
      return Formula::disj(random_formula(rng, atom_count, depth - 1),
                           random_formula(rng, atom_count, depth - 1));
    case 4:
      return Formula::implies(random_formula(rng, atom_count, depth - 1),
                              random_formula(rng, atom_count, depth - 1));
    case 5:
      return Formula::implied_by(random_formula(rng, atom_count, depth - 1),
                                 random_formula(rng, atom_count, depth - 1));
    default:
      return Formula::iff(random_formula(rng, atom_count, depth - 1),
                          random_formula(rng, atom_count, depth - 1));
  }
}

KnowledgeBase random_kb(std::mt19937_64& rng, std::size_t atom_count, std::size_t max_formulas) {
  KnowledgeBase kb;
  std::uint64_t count = draw_below(rng, max_formulas + 1);
  for (std::uint64_t i = 0; i < count; ++i) kb.add(random_formula(rng, atom_count, 3));
  return kb;
}

WorldSpacePtr space_over(std::size_t atom_count) {
  Signature sig(std::vector<std::string>(kAtomPool.begin(), kAtomPool.begin() + atom_count),
                /*extensible=*/false);
  return WorldSpace::enumerate(sig);
}

// Strictly positive random prior so mu->1 probabilities stay defined.
WorldDistribution random_prior(std::mt19937_64& rng, const WorldSpacePtr& space) {
  std::vector<unsigned> raw(space->size());
  unsigned total = 0;
  for (auto& w : raw) {
    w = 1 + static_cast<unsigned>(draw_below(rng, 9));
    total += w;
  }
  std::vector<Rational> phi(space->size());
  for (std::size_t i = 0; i < raw.size(); ++i) phi[i] = Rational(raw[i]) / Rational(total);
  return WorldDistribution{space, std::move(phi)};
}

Rational random_mu(std::mt19937_64& rng) { return Rational(draw_below(rng, 11)) / Rational(10); }

// Random strict partial (or total) order via a shuffled permutation.
PreferentialStructure random_structure(std::mt19937_64& rng, const WorldSpacePtr& space,
                                       bool total) {
  std::vector<std::uint32_t> perm(space->size());
  for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
  detail::shuffle(perm, rng);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (total || draw_below(rng, 2)) edges.emplace_back(perm[i], perm[j]);
  return PreferentialStructure::from_edges(space, std::move(edges));
}

void note_failure(SuiteReport& r, const std::string& what) {
  ++r.failures;
  if (r.notes.size() < 5) r.notes.push_back(what);
}

Rational prior_mass_of(const Formula& f, const WorldDistribution& prior) {
  Rational acc{0};
  for (std::uint32_t i = 0; i < prior.space->size(); ++i)
    if (evaluate(f, prior.space->world(i))) acc += prior.phi[i];
  return acc;
}

}  // namespace

SuiteReport classicality(std::uint64_t seed, int trials) {
  SuiteReport r{"classicality", 0, 0, {}};
  std::mt19937_64 rng(seed);
  while (r.trials < trials) {
    std::size_t atoms = 1 + draw_below(rng, 4);
    WorldSpacePtr space = space_over(atoms);
    KnowledgeBase kb = random_kb(rng, atoms, 5);
    if (model_indices(kb, *space).empty()) continue;  // consistent instances only
    Formula f = random_formula(rng, atoms, 3);
    ++r.trials;
    bool classical = classical_entails(kb, f, space);
    if (bayesian_classical_entails(kb, f, space) != classical)
      note_failure(r, "bayesian-classical mismatch on query " + f.render());
    auto verdict = paraconsistent_entails(kb, f, Rational(1), uniform_distribution<Rational>(space));
    if (verdict.holds != classical)
      note_failure(r, "mu->1 mismatch at theta=1 on query " + f.render());
  }
  return r;
}

SuiteReport inconsistency(std::uint64_t seed, int trials) {
  SuiteReport r{"inconsistency", 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::size_t atoms = 1 + draw_below(rng, 4);
    WorldSpacePtr space = space_over(atoms);
    Formula beta = random_formula(rng, atoms, 3);
    KnowledgeBase kb;
    kb.add(beta);
    kb.add(Formula::negate(beta));
    Formula any = random_formula(rng, atoms, 3);
    ++r.trials;
    if (!classical_entails(kb, any, space))
      note_failure(r, "explosion missing for " + any.render());
    if (bayesian_classical_entails(kb, any, space))
      note_failure(r, "undefined predictive still entailed " + any.render());
    WorldDistribution prior = random_prior(rng, space);
    if (paraconsistent_predictive(beta, kb, prior) != prior_mass_of(beta, prior))
      note_failure(r, "mu->1 probability of " + beta.render() + " is not its prior marginal");
  }
  return r;
}

SuiteReport kolmogorov(std::uint64_t seed, int trials) {
  SuiteReport r{"kolmogorov", 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::size_t atoms = 1 + draw_below(rng, 4);
    WorldSpacePtr space = space_over(atoms);
    LogicalModel m = make_model(random_prior(rng, space), random_mu(rng));
    Formula alpha = random_formula(rng, atoms, 3);
    Formula beta = random_formula(rng, atoms, 3);
    ++r.trials;
    Rational p1 = marginal(alpha, m);
    Rational p0 = marginal(alpha, m, /*truth=*/false);
    if (p1 < 0 || p1 > 1 || p0 < 0 || p0 > 1)
      note_failure(r, "marginal outside [0,1] for " + alpha.render());
    if (p0 + p1 != 1) note_failure(r, "truth values of " + alpha.render() + " do not sum to 1");
    for (bool truth : {false, true}) {
      Rational lhs = marginal(Formula::disj(alpha, beta), m, truth);
      Rational rhs = marginal(alpha, m, truth) + marginal(beta, m, truth) -
                     marginal(Formula::conj(alpha, beta), m, truth);
      if (lhs != rhs) {
        note_failure(r, "inclusion-exclusion fails for " + alpha.render() + " vs " + beta.render());
        break;
      }
    }
    if (p0 != marginal(Formula::negate(alpha), m))
      note_failure(r, "p(alpha=0) != p(!alpha=1) for " + alpha.render());
  }
  return r;
}

SuiteReport paraconsistency(std::uint64_t seed, int trials) {
  SuiteReport r{"paraconsistency", 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::size_t atoms = 1 + draw_below(rng, 4);
    WorldSpacePtr space = space_over(atoms);
    WorldDistribution prior = random_prior(rng, space);
    KnowledgeBase kb = random_kb(rng, atoms, 4);
    Formula alpha = random_formula(rng, atoms, 3);
    ++r.trials;
    // Non-contradiction even on inconsistent premises.
    Rational p = paraconsistent_predictive(alpha, kb, prior);
    Rational np = paraconsistent_predictive(Formula::negate(alpha), kb, prior);
    if (p + np != 1) note_failure(r, "non-contradiction fails for " + alpha.render());
    // Non-triviality: at the uniform prior an atom given nothing sits at 1/2.
    Formula plain = Formula::atom(kAtomPool[draw_below(rng, atoms)]);
    if (paraconsistent_predictive(plain, KnowledgeBase{}, uniform_distribution<Rational>(space)) !=
        Rational(1, 2))
      note_failure(r, "non-triviality fails for " + plain.render());
    // Non-explosion: a contradiction teaches nothing about an unrelated query.
    Formula beta = random_formula(rng, atoms, 3);
    KnowledgeBase contra;
    contra.add(alpha);
    contra.add(Formula::negate(alpha));
    if (paraconsistent_predictive(beta, contra, prior) != prior_mass_of(beta, prior))
      note_failure(r, "non-explosion fails for " + beta.render());
  }
  return r;
}

SuiteReport nonmonotonicity(std::uint64_t seed, int trials) {
  SuiteReport r{"nonmonotonicity", 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::size_t atoms = 1 + draw_below(rng, 3);  // up to 8 worlds keeps orders rich but quick
    WorldSpacePtr space = space_over(atoms);
    bool total = draw_below(rng, 3) == 0;
    PreferentialStructure s = random_structure(rng, space, total);
    KnowledgeBase kb = random_kb(rng, atoms, 3);
    Formula f = random_formula(rng, atoms, 3);
    ++r.trials;
    bool consistent = !model_indices(kb, *space).empty();
    for (RankWeighting w : {RankWeighting::count_below, RankWeighting::chain_height}) {
      bool pref = preferential_entails(kb, f, s);
      bool map = map_entails_wrt(kb, f, s, w);
      if (!consistent) {
        if (!pref) {
          note_failure(r, "inconsistent base not vacuous for " + f.render());
          break;
        }
      } else {
        if (pref && !map) {
          note_failure(r, "preferential without limit-MAP for " + f.render());
          break;
        }
        if (total && pref != map) {
          note_failure(r, "total order but relations diverge for " + f.render());
          break;
        }
      }
    }
  }
  return r;
}

SuiteReport threshold_monotonicity(std::uint64_t seed, int trials) {
  SuiteReport r{"threshold-monotonicity", 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::size_t atoms = 1 + draw_below(rng, 4);
    WorldSpacePtr space = space_over(atoms);
    WorldDistribution prior = random_prior(rng, space);
    LogicalModel m = make_model(prior, random_mu(rng));
    KnowledgeBase kb = random_kb(rng, atoms, 4);
    Formula f = random_formula(rng, atoms, 3);
    Rational lo = Rational(draw_below(rng, 11)) / 10;
    Rational hi = Rational(draw_below(rng, 11)) / 10;
    if (lo > hi) std::swap(lo, hi);
    ++r.trials;
    if (bayesian_entails(kb, f, hi, m) && !bayesian_entails(kb, f, lo, m))
      note_failure(r, "Bayesian entailment not monotone in theta for " + f.render());
    if (paraconsistent_entails(kb, f, hi, prior).holds &&
        !paraconsistent_entails(kb, f, lo, prior).holds)
      note_failure(r, "mu->1 entailment not monotone in theta for " + f.render());
  }
  return r;
}

SuiteReport worked_examples() {
  SuiteReport r{"worked-examples", 0, 0, {}};
  auto expect = [&r](bool ok, const std::string& what) {
    ++r.trials;
    if (!ok) note_failure(r, what);
  };

  {
    // The weather model: prior (0.4, 0.2, 0.1, 0.3) over (rain, wet), mu=1.
    Signature sig({"rain", "wet"}, false);
    WorldSpacePtr space = WorldSpace::enumerate(sig);
    LogicalModel m = make_model(
        make_distribution(space, std::vector<Rational>{Rational(4, 10), Rational(2, 10),
                                                       Rational(1, 10), Rational(3, 10)}),
        Rational(1));
    KnowledgeBase wet;
    wet.add(Formula::atom("wet"));
    Formula rain = Formula::atom("rain");
    auto p = predictive(rain, wet, m);
    expect(p.has_value() && *p == Rational(3, 5), "weather predictive is not 3/5");
    bool boundary_ok = true;
    for (int k = 0; k <= 100; ++k) {
      Rational theta(k, 100);
      if (bayesian_entails(wet, rain, theta, m) != (theta <= Rational(3, 5))) boundary_ok = false;
    }
    expect(boundary_ok, "weather entailment does not flip exactly at theta=3/5");
  }

  {
    // Two-atom uniform contradiction fixtures.
    Signature sig({"a", "b"}, false);
    WorldSpacePtr space = WorldSpace::enumerate(sig);
    WorldDistribution uniform = uniform_distribution<Rational>(space);
    Formula a = Formula::atom("a");
    Formula b = Formula::atom("b");
    KnowledgeBase direct;
    direct.add(a);
    direct.add(b);
    direct.add(Formula::negate(b));
    expect(paraconsistent_predictive(a, direct, uniform) == Rational(1),
           "p(a | a, b, !b) is not 1");
    KnowledgeBase packed;
    packed.add(Formula::conj(a, b));
    packed.add(Formula::negate(b));
    expect(paraconsistent_predictive(a, packed, uniform) == Rational(2, 3),
           "p(a | a&b, !b) is not 2/3");
    KnowledgeBase collapsed;
    collapsed.add(Formula::conj(Formula::conj(a, b), Formula::negate(b)));
    expect(paraconsistent_predictive(a, collapsed, uniform) == Rational(1, 2),
           "p(a | a&b&!b) is not 1/2");
  }

  {
    // Diamond order: world 0 (!a!b) on top, 1 (!a b) at the bottom, 2 and 3
    // incomparable. An order-preserving prior favouring world 2 makes
    // limit-MAP conclude !b from {a} while the preferential relation cannot.
    Signature sig({"a", "b"}, false);
    WorldSpacePtr space = WorldSpace::enumerate(sig);
    PreferentialStructure s(space, {{0, 1}, {0, 2}, {0, 3}, {2, 1}, {3, 1}});
    auto prior = make_distribution(
        space, std::vector<Rational>{Rational(4, 10), Rational(1, 10), Rational(3, 10),
                                     Rational(2, 10)});
    KnowledgeBase just_a;
    just_a.add(Formula::atom("a"));
    Formula not_b = Formula::negate(Formula::atom("b"));
    expect(map_entails_wrt(just_a, not_b, s, prior), "diamond limit-MAP misses !b");
    expect(!preferential_entails(just_a, not_b, s), "diamond preferential decided !b");
  }

  return r;
}

std::vector<std::string> suite_names() {
  return {"classicality",     "inconsistency",          "kolmogorov",      "paraconsistency",
          "nonmonotonicity",  "threshold-monotonicity", "worked-examples"};
}

SuiteReport run_suite(const std::string& name) {
  if (name == "classicality") return classicality();
  if (name == "inconsistency") return inconsistency();
  if (name == "kolmogorov") return kolmogorov();
  if (name == "paraconsistency") return paraconsistency();
  if (name == "nonmonotonicity") return nonmonotonicity();
  if (name == "threshold-monotonicity") return threshold_monotonicity();
  if (name == "worked-examples") return worked_examples();
  throw InputError("unknown suite '" + name + "'");
}

std::vector<SuiteReport> run_all() {
  std::vector<SuiteReport> out;
  for (const std::string& name : suite_names()) out.push_back(run_suite(name));
  return out;
}

}  // namespace bentail::suites
