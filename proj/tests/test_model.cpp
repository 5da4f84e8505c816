#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "bentail/errors.hpp"
#include "bentail/logic.hpp"
#include "bentail/model.hpp"
#include "support/gen.hpp"

using namespace bentail;

namespace {

Formula parsed(const std::string& text) {
  Signature sig({}, true);
  return parse_formula(text, sig);
}

// The weather model: prior over (rain, wet) with phi = (0.4, 0.2, 0.1, 0.3)
// for worlds 00, 01, 10, 11 and no truth noise.
LogicalModel weather_model(const Rational& mu = Rational(1)) {
  Signature sig({"rain", "wet"}, false);
  WorldSpacePtr space = WorldSpace::enumerate(sig);
  std::vector<Rational> phi = {Rational(4, 10), Rational(2, 10), Rational(1, 10), Rational(3, 10)};
  return make_model(make_distribution(space, std::move(phi)), mu);
}

// Oracle: the defining sums written out directly, with the noise factor as a
// per-formula product rather than the count form the library uses.
std::optional<Rational> oracle_predictive(const Formula& f, const KnowledgeBase& kb,
                                          const LogicalModel& m) {
  const WorldSpace& space = *m.prior.space;
  Rational z{0}, acc{0};
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    PossibleWorld w = space.world(i);
    Rational like{1};
    for (const Formula& g : kb) like *= evaluate(g, w) ? m.mu : Rational(1) - m.mu;
    Rational joint = like * m.prior.phi[i];
    z += joint;
    if (evaluate(f, w)) acc += joint * m.mu;
    else acc += joint * (Rational(1) - m.mu);
  }
  if (z == 0) return std::nullopt;
  return acc / z;
}

}  // namespace

TEST_CASE("distribution validation") {
  Signature sig({"a", "b"}, false);
  WorldSpacePtr space = WorldSpace::enumerate(sig);

  CHECK_THROWS_AS(make_distribution(space, std::vector<Rational>{Rational(1)}), InputError);
  CHECK_THROWS_AS(make_distribution(space, std::vector<Rational>{Rational(1), Rational(1),
                                                                 Rational(-1), Rational(0)}),
                  InputError);
  CHECK_THROWS_AS(
      make_distribution(space, std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1, 2),
                                                     Rational(0)}),
      InputError);

  auto uni = uniform_distribution<Rational>(space);
  CHECK(uni.phi == std::vector<Rational>(4, Rational(1, 4)));

  // Float mode tolerates rounding at 1e-12 but not real drift.
  std::vector<double> close = {0.25, 0.25, 0.25, 0.25 + 5e-13};
  CHECK_NOTHROW(make_distribution(space, std::move(close)));
  std::vector<double> off = {0.3, 0.3, 0.3, 0.2};
  CHECK_THROWS_AS(make_distribution(space, std::move(off)), InputError);

  CHECK_THROWS_AS(make_model(uniform_distribution<Rational>(space), Rational(2)), InputError);
  CHECK_THROWS_AS(make_model(uniform_distribution<Rational>(space), Rational(-1, 2)), InputError);
}

TEST_CASE("likelihood: single formula, single occurrence") {
  LogicalModel m = weather_model(Rational(9, 10));
  const WorldSpace& space = *m.prior.space;
  Formula rain = parsed("rain");
  CHECK(likelihood(rain, space.world(3), m.mu) == Rational(9, 10));
  CHECK(likelihood(rain, space.world(0), m.mu) == Rational(1, 10));
  CHECK(likelihood(rain, space.world(3), m.mu, /*truth=*/false) == Rational(1, 10));
  CHECK(likelihood(rain, space.world(0), m.mu, /*truth=*/false) == Rational(9, 10));
}

TEST_CASE("set_likelihood equals the per-formula product") {
  std::mt19937 rng(91u);
  const std::vector<std::string> atoms = {"a", "b", "c"};
  Signature sig({"a", "b", "c"}, false);
  WorldSpacePtr space = WorldSpace::enumerate(sig);
  for (int t = 0; t < 200; ++t) {
    KnowledgeBase kb = testgen::random_kb(rng, atoms, 4);
    Rational mu = testgen::random_mu(rng);
    for (std::uint32_t i = 0; i < space->size(); ++i) {
      PossibleWorld w = space->world(i);
      Rational product{1};
      for (const Formula& g : kb) product *= evaluate(g, w) ? mu : Rational(1) - mu;
      CHECK(set_likelihood(kb, w, mu) == product);
    }
  }
}

TEST_CASE("marginal on the weather model") {
  LogicalModel m = weather_model();
  CHECK(marginal(parsed("rain"), m) == Rational(4, 10));
  CHECK(marginal(parsed("wet"), m) == Rational(5, 10));
  CHECK(marginal(parsed("rain & wet"), m) == Rational(3, 10));
  CHECK(marginal(parsed("rain | wet"), m) == Rational(6, 10));
  CHECK(marginal(parsed("rain"), m, /*truth=*/false) == Rational(6, 10));
}

TEST_CASE("posterior concentrates on the evidence") {
  LogicalModel m = weather_model();
  KnowledgeBase wet;
  wet.add(parsed("wet"));
  auto post = posterior(wet, m);
  REQUIRE(post.has_value());
  CHECK(post->phi == std::vector<Rational>{Rational(0), Rational(2, 5), Rational(0), Rational(3, 5)});

  // Jointly unsatisfiable evidence at mu = 1 has no normalising mass.
  KnowledgeBase contra;
  contra.add(parsed("wet"));
  contra.add(parsed("!wet"));
  CHECK(!posterior(contra, m).has_value());

  // The same evidence under noise keeps every world alive.
  LogicalModel noisy = weather_model(Rational(3, 4));
  auto soft = posterior(contra, noisy);
  REQUIRE(soft.has_value());
  Rational sum{0};
  for (const Rational& p : soft->phi) {
    CHECK(p > 0);
    sum += p;
  }
  CHECK(sum == 1);
}

TEST_CASE("predictive: the weather question") {
  LogicalModel m = weather_model();
  KnowledgeBase wet;
  wet.add(parsed("wet"));
  auto p = predictive(parsed("rain"), wet, m);
  REQUIRE(p.has_value());
  CHECK(*p == Rational(3, 5));

  // Empty evidence reduces the predictive to the marginal.
  KnowledgeBase empty;
  auto q = predictive(parsed("rain"), empty, m);
  REQUIRE(q.has_value());
  CHECK(*q == marginal(parsed("rain"), m));
}

TEST_CASE("predictive agrees with the product-form oracle on random instances") {
  std::mt19937 rng(1729u);
  const std::vector<std::string> atoms = {"a", "b", "c"};
  Signature sig({"a", "b", "c"}, false);
  WorldSpacePtr space = WorldSpace::enumerate(sig);
  int defined = 0;
  for (int t = 0; t < 300; ++t) {
    LogicalModel m = make_model(testgen::random_prior(rng, space), testgen::random_mu(rng));
    KnowledgeBase kb = testgen::random_kb(rng, atoms, 4);
    Formula f = testgen::random_formula(rng, atoms, 3);
    auto got = predictive(f, kb, m);
    auto want = oracle_predictive(f, kb, m);
    CHECK(got.has_value() == want.has_value());
    if (got && want) {
      CHECK(*got == *want);
      ++defined;
    }
  }
  CHECK(defined > 100);  // the sweep must actually exercise defined cases
}

TEST_CASE("predictive is a probability and complements its negation") {
  std::mt19937 rng(31337u);
  const std::vector<std::string> atoms = {"a", "b"};
  Signature sig({"a", "b"}, false);
  WorldSpacePtr space = WorldSpace::enumerate(sig);
  for (int t = 0; t < 300; ++t) {
    LogicalModel m = make_model(testgen::random_prior(rng, space), testgen::random_mu(rng));
    KnowledgeBase kb = testgen::random_kb(rng, atoms, 3);
    Formula f = testgen::random_formula(rng, atoms, 3);
    auto p = predictive(f, kb, m);
    auto np = predictive(Formula::negate(f), kb, m);
    CHECK(p.has_value() == np.has_value());
    if (p) {
      CHECK(*p >= 0);
      CHECK(*p <= 1);
      CHECK(*p + *np == 1);
    }
  }
}

TEST_CASE("bayesian entailment thresholds at the predictive value") {
  LogicalModel m = weather_model();
  KnowledgeBase wet;
  wet.add(parsed("wet"));
  Formula rain = parsed("rain");
  // p(rain | wet) = 3/5: entailed exactly up to theta = 3/5.
  CHECK(bayesian_entails(wet, rain, Rational(0), m));
  CHECK(bayesian_entails(wet, rain, Rational(1, 2), m));
  CHECK(bayesian_entails(wet, rain, Rational(3, 5), m));
  CHECK(!bayesian_entails(wet, rain, Rational(3, 5) + Rational(1, 1000), m));
  CHECK(!bayesian_entails(wet, rain, Rational(1), m));
  CHECK_THROWS_AS(bayesian_entails(wet, rain, Rational(2), m), InputError);

  // Undefined predictive entails nothing, not even at theta = 0.
  KnowledgeBase contra;
  contra.add(parsed("wet"));
  contra.add(parsed("!wet"));
  CHECK(!bayesian_entails(contra, rain, Rational(0), m));
  CHECK(!bayesian_entails(contra, parsed("wet | !wet"), Rational(0), m));
}

TEST_CASE("theta-monotonicity on random instances") {
  std::mt19937 rng(555u);
  const std::vector<std::string> atoms = {"a", "b"};
  Signature sig({"a", "b"}, false);
  WorldSpacePtr space = WorldSpace::enumerate(sig);
  for (int t = 0; t < 200; ++t) {
    LogicalModel m = make_model(testgen::random_prior(rng, space), testgen::random_mu(rng));
    KnowledgeBase kb = testgen::random_kb(rng, atoms, 3);
    Formula f = testgen::random_formula(rng, atoms, 3);
    Rational lo = Rational(rng() % 11) / 10;
    Rational hi = Rational(rng() % 11) / 10;
    if (lo > hi) std::swap(lo, hi);
    // Entailment at the higher threshold implies it at the lower one.
    if (bayesian_entails(kb, f, hi, m)) CHECK(bayesian_entails(kb, f, lo, m));
  }
}

TEST_CASE("map worlds and existential ties") {
  LogicalModel m = weather_model();
  KnowledgeBase wet;
  wet.add(parsed("wet"));
  auto winners = map_worlds(wet, m);
  REQUIRE(winners.size() == 1);
  CHECK(winners[0].index() == 3);  // rain & wet
  CHECK(map_entails(wet, parsed("rain"), m));
  CHECK(!map_entails(wet, parsed("!rain"), m));

  // A tied posterior MAP-entails both an atom and its negation.
  Signature sig({"a"}, false);
  WorldSpacePtr space = WorldSpace::enumerate(sig);
  LogicalModel fair = make_model(uniform_distribution<Rational>(space), Rational(1));
  KnowledgeBase empty;
  CHECK(map_worlds(empty, fair).size() == 2);
  CHECK(map_entails(empty, parsed("a"), fair));
  CHECK(map_entails(empty, parsed("!a"), fair));

  // Undefined posterior: no MAP worlds, no MAP entailment.
  KnowledgeBase contra;
  contra.add(parsed("a"));
  contra.add(parsed("!a"));
  CHECK(map_worlds(contra, fair).empty());
  CHECK(!map_entails(contra, parsed("a"), fair));
}

TEST_CASE("float mode tracks exact mode within 1e-12") {
  std::mt19937 rng(808u);
  const std::vector<std::string> atoms = {"a", "b", "c"};
  Signature sig({"a", "b", "c"}, false);
  WorldSpacePtr space = WorldSpace::enumerate(sig);
  for (int t = 0; t < 200; ++t) {
    LogicalModel m = make_model(testgen::random_prior(rng, space), testgen::random_mu(rng));
    FloatModel fm = to_float(m);
    KnowledgeBase kb = testgen::random_kb(rng, atoms, 3);
    Formula f = testgen::random_formula(rng, atoms, 3);
    auto exact = predictive(f, kb, m);
    auto approx = predictive(f, kb, fm);
    CHECK(exact.has_value() == approx.has_value());
    if (exact) CHECK(std::abs(*approx - to_double(*exact)) <= 1e-12);
  }
}
