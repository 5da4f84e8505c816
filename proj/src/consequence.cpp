#include "bentail/consequence.hpp"

#include <algorithm>

#include "bentail/errors.hpp"

namespace bentail {

bool classical_entails(const KnowledgeBase& kb, const Formula& f, const WorldSpacePtr& space) {
  for (std::uint32_t i = 0; i < space->size(); ++i) {
    const PossibleWorld w = space->world(i);
    bool all = true;
    for (const Formula& g : kb)
      if (!evaluate(g, w)) {
        all = false;
        break;
      }
    if (all && !evaluate(f, w)) return false;
  }
  return true;
}

bool bayesian_classical_entails(const KnowledgeBase& kb, const Formula& f,
                                const WorldSpacePtr& space) {
  auto model = make_model(uniform_distribution<Rational>(space), Rational(1));
  return bayesian_entails(kb, f, Rational(1), model);
}

Rational paraconsistent_predictive(const Formula& f, const KnowledgeBase& kb,
                                   const WorldDistribution& prior) {
  Rational mass{0};
  Rational hit{0};
  for (std::uint32_t i : max_support_indices(kb, *prior.space)) {
    mass += prior.phi[i];
    if (evaluate(f, prior.space->world(i))) hit += prior.phi[i];
  }
  if (mass == 0) throw ZeroMassSupportError();
  return hit / mass;
}

EntailmentVerdict paraconsistent_entails(const KnowledgeBase& kb, const Formula& f,
                                         const Rational& theta, const WorldDistribution& prior) {
  if (!detail::in_unit_interval(theta)) throw InputError("theta outside [0,1]");
  EntailmentVerdict v;
  v.witness = max_support_worlds(kb, prior.space);
  v.probability = paraconsistent_predictive(f, kb, prior);
  v.holds = *v.probability >= theta;
  return v;
}

PreferentialStructure::PreferentialStructure(
    WorldSpacePtr space, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs)
    : space_(std::move(space)), pairs_(std::move(pairs)) {
  const std::size_t n = space_->size();
  matrix_.assign(n * n, 0);
  for (auto [w, v] : pairs_) {
    if (w >= n || v >= n) throw PreferenceError("world index out of range");
    if (w == v) throw PreferenceError("relation is not irreflexive");
    matrix_[w * n + v] = 1;
  }
  // Transitivity check: w > v and v > u must already include w > u.
  for (auto [w, v] : pairs_)
    for (std::uint32_t u = 0; u < n; ++u)
      if (matrix_[v * n + u] && !matrix_[w * n + u])
        throw PreferenceError("relation is not transitive");
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

PreferentialStructure PreferentialStructure::from_edges(
    WorldSpacePtr space, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  const std::size_t n = space->size();
  std::vector<char> reach(n * n, 0);
  for (auto [w, v] : edges) {
    if (w >= n || v >= n) throw PreferenceError("world index out of range");
    reach[w * n + v] = 1;
  }
  // Warshall closure, then reject any cycle (which would force reflexivity).
  for (std::uint32_t k = 0; k < n; ++k)
    for (std::uint32_t i = 0; i < n; ++i)
      if (reach[i * n + k])
        for (std::uint32_t j = 0; j < n; ++j)
          if (reach[k * n + j]) reach[i * n + j] = 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (reach[i * n + i]) throw PreferenceError("preference edges form a cycle");
    for (std::uint32_t j = 0; j < n; ++j)
      if (reach[i * n + j]) pairs.emplace_back(i, j);
  }
  return PreferentialStructure(std::move(space), std::move(pairs));
}

bool PreferentialStructure::prefers(std::uint32_t w, std::uint32_t v) const {
  const std::size_t n = space_->size();
  if (w >= n || v >= n) throw PreferenceError("world index out of range");
  return matrix_[w * n + v] != 0;
}

std::vector<std::uint32_t> PreferentialStructure::maximal(
    const std::vector<std::uint32_t>& candidates) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t w : candidates) {
    bool beaten = false;
    for (std::uint32_t v : candidates)
      if (prefers(v, w)) {
        beaten = true;
        break;
      }
    if (!beaten) out.push_back(w);
  }
  return out;
}

namespace {

// Longest >-chain strictly below w, memoised over the matrix.
std::uint32_t chain_depth(const PreferentialStructure& s, std::uint32_t w,
                          std::vector<std::int64_t>& memo) {
  if (memo[w] >= 0) return static_cast<std::uint32_t>(memo[w]);
  std::uint32_t best = 0;
  for (std::uint32_t v = 0; v < s.space()->size(); ++v)
    if (s.prefers(w, v)) best = std::max(best, chain_depth(s, v, memo) + 1);
  memo[w] = best;
  return best;
}

}  // namespace

WorldDistribution prior_from_preference(const PreferentialStructure& s, RankWeighting weighting) {
  const std::size_t n = s.space()->size();
  std::vector<Rational> weight(n);
  if (weighting == RankWeighting::count_below) {
    for (std::uint32_t w = 0; w < n; ++w) {
      std::uint32_t below = 0;
      for (std::uint32_t v = 0; v < n; ++v)
        if (s.prefers(w, v)) ++below;
      weight[w] = Rational(1 + below);
    }
  } else {
    std::vector<std::int64_t> memo(n, -1);
    for (std::uint32_t w = 0; w < n; ++w) weight[w] = Rational(1 + chain_depth(s, w, memo));
  }
  Rational total{0};
  for (const Rational& x : weight) total += x;
  for (Rational& x : weight) x /= total;
  return WorldDistribution{s.space(), std::move(weight)};
}

bool is_order_preserving(const WorldDistribution& d, const PreferentialStructure& s) {
  if (d.space->atom_names() != s.space()->atom_names())
    throw PreferenceError("distribution and structure use different world spaces");
  for (auto [w, v] : s.pairs())
    if (!(d.phi[w] > d.phi[v])) return false;
  return true;
}

bool preferential_entails(const KnowledgeBase& kb, const Formula& f,
                          const PreferentialStructure& s) {
  for (std::uint32_t i : s.maximal(model_indices(kb, *s.space())))
    if (!evaluate(f, s.space()->world(i))) return false;
  return true;
}

namespace {

// Limit-MAP core: posterior in the mu -> 1 limit lives on ((kb)), so the
// MAP worlds are the prior maximisers within the max-support set.
bool limit_map_entails(const KnowledgeBase& kb, const Formula& f, const WorldDistribution& prior) {
  const Rational* best = nullptr;
  std::vector<std::uint32_t> arg;
  for (std::uint32_t i : max_support_indices(kb, *prior.space)) {
    if (!best || prior.phi[i] > *best) {
      best = &prior.phi[i];
      arg.assign(1, i);
    } else if (prior.phi[i] == *best) {
      arg.push_back(i);
    }
  }
  // Zero mass on ((kb)) leaves the limit posterior undefined: entail nothing.
  if (!best || *best == 0) return false;
  for (std::uint32_t i : arg)
    if (evaluate(f, prior.space->world(i))) return true;
  return false;
}

}  // namespace

bool map_entails_wrt(const KnowledgeBase& kb, const Formula& f, const PreferentialStructure& s,
                     RankWeighting weighting) {
  return limit_map_entails(kb, f, prior_from_preference(s, weighting));
}

bool map_entails_wrt(const KnowledgeBase& kb, const Formula& f, const PreferentialStructure& s,
                     const WorldDistribution& prior) {
  if (!is_order_preserving(prior, s))
    throw PreferenceError("prior does not preserve the preference order");
  return limit_map_entails(kb, f, prior);
}

}  // namespace bentail
