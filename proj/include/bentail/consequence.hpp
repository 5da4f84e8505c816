#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bentail/logic.hpp"
#include "bentail/model.hpp"

namespace bentail {

// ---------------------------------------------------------------------------
// The entailment family. Classical entailment is the brute-force reference;
// Bayesian-classical realises it inside the probabilistic model (uniform
// prior, mu = 1, theta = 1); the paraconsistent relation is the mu -> 1
// limit, which concentrates on the worlds satisfying as many premises as
// possible and therefore survives contradictory premises; the preferential
// relation replaces probabilities with a strict order over worlds.
// ---------------------------------------------------------------------------

// kb |= f by truth-table check: every model of every premise satisfies f.
bool classical_entails(const KnowledgeBase& kb, const Formula& f, const WorldSpacePtr& space);

// kb |= f via the model: uniform prior, mu = 1, theta = 1.
bool bayesian_classical_entails(const KnowledgeBase& kb, const Formula& f,
                                const WorldSpacePtr& space);

// Verdict plus the evidence behind it: the probability that was compared
// against theta (absent when undefined) and the worlds it was computed over.
struct EntailmentVerdict {
  bool holds = false;
  std::optional<Rational> probability;
  std::vector<PossibleWorld> witness;
};

// mu -> 1 limit of p(f | kb): prior mass of f within the max-support worlds
// ((kb)). Throws ZeroMassSupportError when ((kb)) carries no prior mass.
Rational paraconsistent_predictive(const Formula& f, const KnowledgeBase& kb,
                                   const WorldDistribution& prior);

// kb |~ f at threshold theta under the mu -> 1 limit; witness = ((kb)).
EntailmentVerdict paraconsistent_entails(const KnowledgeBase& kb, const Formula& f,
                                         const Rational& theta, const WorldDistribution& prior);

// Strict preference over world indices: w > v means w is preferred to v.
// The relation must be irreflexive and transitive; the constructor checks,
// from_edges completes the transitive closure first (rejecting cycles).
class PreferentialStructure {
 public:
  PreferentialStructure(WorldSpacePtr space, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);

  static PreferentialStructure from_edges(WorldSpacePtr space,
                                          std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  const WorldSpacePtr& space() const { return space_; }
  bool prefers(std::uint32_t w, std::uint32_t v) const;  // w > v ?
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs() const { return pairs_; }

  // Indices of >-maximal elements of `candidates` (no candidate beats them).
  std::vector<std::uint32_t> maximal(const std::vector<std::uint32_t>& candidates) const;

 private:
  WorldSpacePtr space_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;     // sorted, unique
  std::vector<char> matrix_;                                       // size^2 adjacency
};

// Two ways to turn ranks into weights. Both give preferred worlds strictly
// more weight along any >-chain; only incomparable worlds can tie.
enum class RankWeighting {
  count_below,    // weight(w) = 1 + |{v : w > v}|
  chain_height,   // weight(w) = 1 + length of longest >-chain below w
};

// Order-preserving prior induced by the structure (weights normalised).
WorldDistribution prior_from_preference(const PreferentialStructure& s,
                                        RankWeighting weighting = RankWeighting::count_below);

// Does the distribution respect the order: w > v implies phi(w) > phi(v)?
bool is_order_preserving(const WorldDistribution& d, const PreferentialStructure& s);

// kb |~_pref f: every >-maximal model of kb satisfies f. Vacuously true
// when kb has no models.
bool preferential_entails(const KnowledgeBase& kb, const Formula& f,
                          const PreferentialStructure& s);

// kb |~_MAP f computed in the mu -> 1 limit of the model induced by the
// structure: posterior concentrates on ((kb)), MAP worlds are the prior
// maximisers within ((kb)), and the entailment is existential over ties.
bool map_entails_wrt(const KnowledgeBase& kb, const Formula& f, const PreferentialStructure& s,
                     RankWeighting weighting = RankWeighting::count_below);

// Same limit-MAP relation but with a caller-supplied order-preserving prior
// (validated against the structure).
bool map_entails_wrt(const KnowledgeBase& kb, const Formula& f, const PreferentialStructure& s,
                     const WorldDistribution& prior);

}  // namespace bentail
