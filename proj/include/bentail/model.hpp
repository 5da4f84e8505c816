#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <vector>

#include "bentail/logic.hpp"
#include "bentail/numeric.hpp"

namespace bentail {

// ---------------------------------------------------------------------------
// The probabilistic-logical model: a categorical prior over possible worlds
// plus the Bernoulli truth-noise parameter mu. The same kernels run in exact
// rational arithmetic (the logic engine) and in double (the classifier-side
// float mode); all sums run in ascending world-index order so float results
// are reproducible.
// ---------------------------------------------------------------------------

template <class Num>
struct BasicDistribution {
  WorldSpacePtr space;
  std::vector<Num> phi;  // one entry per world index
};

template <class Num>
struct BasicModel {
  BasicDistribution<Num> prior;
  Num mu;
};

using WorldDistribution = BasicDistribution<Rational>;
using LogicalModel = BasicModel<Rational>;
using FloatDistribution = BasicDistribution<double>;
using FloatModel = BasicModel<double>;

namespace detail {

template <class Num>
bool in_unit_interval(const Num& x) {
  return x >= 0 && x <= 1;
}

template <class Num>
Num ipow(const Num& base, std::size_t e) {
  Num r{1};
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace detail

// Validates shape, per-world range and normalisation. Exact mode demands
// sum == 1; float mode tolerates |sum - 1| <= 1e-12.
template <class Num>
BasicDistribution<Num> make_distribution(WorldSpacePtr space, std::vector<Num> phi) {
  if (phi.size() != space->size())
    throw InputError("distribution needs " + std::to_string(space->size()) + " entries, got " +
                     std::to_string(phi.size()));
  Num sum{0};
  for (const Num& p : phi) {
    if (!detail::in_unit_interval(p)) throw InputError("world probability outside [0,1]");
    sum += p;
  }
  if constexpr (std::is_same_v<Num, double>) {
    if (std::abs(sum - 1.0) > 1e-12) throw InputError("distribution does not sum to 1");
  } else {
    if (sum != 1) throw InputError("distribution does not sum to 1 exactly");
  }
  return BasicDistribution<Num>{std::move(space), std::move(phi)};
}

template <class Num>
BasicDistribution<Num> uniform_distribution(const WorldSpacePtr& space) {
  Num each;
  if constexpr (std::is_same_v<Num, double>) {
    each = 1.0 / static_cast<double>(space->size());
  } else {
    each = Num(1) / Num(static_cast<unsigned>(space->size()));
  }
  return BasicDistribution<Num>{space, std::vector<Num>(space->size(), each)};
}

template <class Num>
BasicModel<Num> make_model(BasicDistribution<Num> prior, Num mu) {
  if (!detail::in_unit_interval(mu)) throw InputError("mu outside [0,1]");
  return BasicModel<Num>{std::move(prior), std::move(mu)};
}

inline FloatDistribution to_float(const WorldDistribution& d) {
  std::vector<double> phi;
  phi.reserve(d.phi.size());
  for (const Rational& p : d.phi) phi.push_back(to_double(p));
  return FloatDistribution{d.space, std::move(phi)};
}

inline FloatModel to_float(const LogicalModel& m) {
  return FloatModel{to_float(m.prior), to_double(m.mu)};
}

// p(f = truth | w): mu when f's value at w equals truth, else 1 - mu.
template <class Num>
Num likelihood(const Formula& f, const PossibleWorld& w, const Num& mu, bool truth = true) {
  return evaluate(f, w) == truth ? mu : Num(1) - mu;
}

// p(kb | w) = mu^#w (1-mu)^(|kb| - #w); one factor per listed occurrence.
template <class Num>
Num set_likelihood(const KnowledgeBase& kb, const PossibleWorld& w, const Num& mu) {
  std::size_t hits = satisfied_count(kb, w);
  return detail::ipow(mu, hits) * detail::ipow(Num(1) - mu, kb.size() - hits);
}

// p(f = truth) = sum_w p(f = truth | w) phi_w.
template <class Num>
Num marginal(const Formula& f, const BasicModel<Num>& m, bool truth = true) {
  Num acc{0};
  const WorldSpace& space = *m.prior.space;
  for (std::uint32_t i = 0; i < space.size(); ++i)
    acc += likelihood(f, space.world(i), m.mu, truth) * m.prior.phi[i];
  return acc;
}

// p(W | kb): phi'_w proportional to p(kb|w) phi_w. nullopt when the
// normalising constant is zero (p(.|kb) undefined, division by zero).
template <class Num>
std::optional<BasicDistribution<Num>> posterior(const KnowledgeBase& kb, const BasicModel<Num>& m) {
  const WorldSpace& space = *m.prior.space;
  std::vector<Num> weights(space.size());
  Num z{0};
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    weights[i] = set_likelihood(kb, space.world(i), m.mu) * m.prior.phi[i];
    z += weights[i];
  }
  if (z == 0) return std::nullopt;
  for (Num& w : weights) w /= z;
  return BasicDistribution<Num>{m.prior.space, std::move(weights)};
}

// p(f | kb) = sum_w p(f|w) p(w|kb). nullopt propagates the undefined
// posterior; callers decide what failure means.
template <class Num>
std::optional<Num> predictive(const Formula& f, const KnowledgeBase& kb,
                              const BasicModel<Num>& m) {
  auto post = posterior(kb, m);
  if (!post) return std::nullopt;
  Num acc{0};
  const WorldSpace& space = *m.prior.space;
  for (std::uint32_t i = 0; i < space.size(); ++i)
    acc += likelihood(f, space.world(i), m.mu) * post->phi[i];
  return acc;
}

// kb |~_theta f: holds iff p(f|kb) is defined and >= theta. An undefined
// predictive entails nothing.
template <class Num>
bool bayesian_entails(const KnowledgeBase& kb, const Formula& f, const Num& theta,
                      const BasicModel<Num>& m) {
  if (!detail::in_unit_interval(theta)) throw InputError("theta outside [0,1]");
  auto p = predictive(f, kb, m);
  return p.has_value() && *p >= theta;
}

// All maximisers of the posterior, ascending index order; empty when the
// posterior is undefined.
template <class Num>
std::vector<PossibleWorld> map_worlds(const KnowledgeBase& kb, const BasicModel<Num>& m) {
  auto post = posterior(kb, m);
  std::vector<PossibleWorld> out;
  if (!post) return out;
  const Num* best = nullptr;
  for (std::uint32_t i = 0; i < post->phi.size(); ++i) {
    if (!best || post->phi[i] > *best) {
      best = &post->phi[i];
      out.clear();
      out.push_back(m.prior.space->world(i));
    } else if (post->phi[i] == *best) {
      out.push_back(m.prior.space->world(i));
    }
  }
  return out;
}

// kb |~_MAP f: some posterior maximiser satisfies f. Ties are existential,
// so with a tied posterior both f and !f can be MAP-entailed.
template <class Num>
bool map_entails(const KnowledgeBase& kb, const Formula& f, const BasicModel<Num>& m) {
  for (const PossibleWorld& w : map_worlds(kb, m))
    if (evaluate(f, w)) return true;
  return false;
}

}  // namespace bentail
