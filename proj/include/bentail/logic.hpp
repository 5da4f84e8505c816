#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bentail/errors.hpp"

namespace bentail {

// ---------------------------------------------------------------------------
// Signature: the ordered atom list. Order is fixed at construction time and
// determines world indexing, so two signatures with the same names in a
// different order describe different world spaces.
// ---------------------------------------------------------------------------

class Signature {
 public:
  static constexpr std::size_t kDefaultMaxAtoms = 20;

  explicit Signature(std::vector<std::string> names = {}, bool extensible = false,
                     std::size_t max_atoms = kDefaultMaxAtoms);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  // Registers a new atom; returns its index. Throws UnknownAtomError when the
  // signature is sealed, AtomLimitError past max_atoms.
  std::size_t add(std::string_view name);

  bool extensible() const { return extensible_; }
  void seal() { extensible_ = false; }
  std::size_t max_atoms() const { return max_atoms_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  bool extensible_ = false;
  std::size_t max_atoms_ = kDefaultMaxAtoms;
};

// ---------------------------------------------------------------------------
// Formula: immutable AST over named atoms. Copies are cheap (shared nodes).
// ---------------------------------------------------------------------------

enum class Connective : std::uint8_t {
  atom,
  negation,
  conjunction,
  disjunction,
  implication,          // a -> b
  converse_implication, // a <- b, true iff b -> a
  biconditional,        // a <-> b
};

class Formula {
 public:
  static Formula atom(std::string name);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula implied_by(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);

  Connective kind() const;
  const std::string& atom_name() const;  // requires kind() == atom
  Formula lhs() const;                   // unary operand or left child
  Formula rhs() const;                   // right child of a binary node

  bool operator==(const Formula& other) const;  // structural equality

  // Appends atom names in first-occurrence order, skipping ones already seen.
  void collect_atoms(std::vector<std::string>& out) const;
  std::vector<std::string> atoms() const;

  // Minimally parenthesised ASCII text; parse_formula(render()) rebuilds the
  // exact same tree.
  std::string render() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar: precedence ! > & > | > ->,<- > <->; ->,<-,<-> associate to the
// right, &,| to the left. Unicode connectives and their ASCII aliases are both
// accepted. Atom names match [A-Za-z_][A-Za-z0-9_=?]* (the =/? tail covers
// classifier-style "Attr=value" atoms). Unknown names are added to sig when it
// is extensible, otherwise UnknownAtomError.
Formula parse_formula(std::string_view text, Signature& sig);

// ---------------------------------------------------------------------------
// Worlds. A WorldSpace is the full enumeration of 2^n assignments over a
// signature snapshot; index order is the big-endian binary count over the
// atom order (first atom = most significant bit), so index 0 is all-false.
// ---------------------------------------------------------------------------

class WorldSpace;
using WorldSpacePtr = std::shared_ptr<const WorldSpace>;

class PossibleWorld {
 public:
  PossibleWorld(WorldSpacePtr space, std::uint32_t index);

  bool value(std::size_t atom_index) const;
  bool value(std::string_view atom_name) const;  // AtomNotInWorldError if absent
  std::uint32_t index() const { return index_; }
  const WorldSpace& space() const { return *space_; }
  const WorldSpacePtr& space_ptr() const { return space_; }

  // Truth values over the atom order, e.g. "10" for first atom true.
  std::string bits() const;

  bool operator==(const PossibleWorld& other) const;

 private:
  WorldSpacePtr space_;
  std::uint32_t index_;
};

class WorldSpace : public std::enable_shared_from_this<WorldSpace> {
 public:
  // Snapshots sig's current atom list. Throws AtomLimitError past the
  // signature's enumeration cap.
  static WorldSpacePtr enumerate(const Signature& sig);

  std::size_t atom_count() const { return names_.size(); }
  std::size_t size() const { return std::size_t{1} << names_.size(); }
  PossibleWorld world(std::uint32_t index) const;
  const std::vector<std::string>& atom_names() const { return names_; }
  std::optional<std::size_t> index_of_atom(std::string_view name) const;

  // Truth of atom j in world i: bit (n-1-j) of i.
  bool truth(std::uint32_t world_index, std::size_t atom_index) const;

  std::string bits_of(std::uint32_t world_index) const;
  std::uint32_t index_from_bits(std::string_view bits) const;  // InputError

 private:
  explicit WorldSpace(std::vector<std::string> names);
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// KnowledgeBase: finite multiset of formulas. Duplicates count; each listed
// occurrence contributes one Bernoulli factor to the likelihood product.
// ---------------------------------------------------------------------------

class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(std::vector<Formula> formulas) : formulas_(std::move(formulas)) {}

  void add(Formula f) { formulas_.push_back(std::move(f)); }
  const std::vector<Formula>& formulas() const { return formulas_; }
  std::size_t size() const { return formulas_.size(); }
  bool empty() const { return formulas_.empty(); }
  auto begin() const { return formulas_.begin(); }
  auto end() const { return formulas_.end(); }

 private:
  std::vector<Formula> formulas_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Classical truth of f at w. Throws AtomNotInWorldError when f mentions an
// atom outside w's signature.
bool evaluate(const Formula& f, const PossibleWorld& w);

// Worlds satisfying every kb formula, ascending index order. Empty when kb is
// inconsistent over the space; the whole space when kb is empty.
std::vector<PossibleWorld> models(const KnowledgeBase& kb, const WorldSpacePtr& space);
std::vector<std::uint32_t> model_indices(const KnowledgeBase& kb, const WorldSpace& space);

// Number of kb occurrences true at w (the #_w statistic).
std::size_t satisfied_count(const KnowledgeBase& kb, const PossibleWorld& w);

// argmax_w #_w: the worlds where the most kb formulas hold. Never empty;
// equals models(kb) exactly when kb has a model.
std::vector<PossibleWorld> max_support_worlds(const KnowledgeBase& kb, const WorldSpacePtr& space);
std::vector<std::uint32_t> max_support_indices(const KnowledgeBase& kb, const WorldSpace& space);

}  // namespace bentail
